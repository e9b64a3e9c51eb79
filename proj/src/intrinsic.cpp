#include "segrekit/intrinsic.hpp"

#include "segrekit/errors.hpp"

namespace segrekit {

IntrinsicResult intrinsic_ideal(const Ideal& C) {
  if (!C.context().has_pairing()) throw SemanticError("expected a paired (z, xi) context");
  auto holo = C.context().holomorphic_indices();
  Ideal projected = elimination_ideal(C, holo);
  int dim = krull_dimension(projected);
  bool generic = dim == static_cast<int>(holo.size());
  return {std::move(projected), dim, generic};
}

FormulaCheck intrinsic_dim_formula_check(const RealVariety& v, const Point& p) {
  if (!contains_point(v, p)) throw SemanticError("point " + p.to_string() + " is not on the variety");
  SegreAnalysis analysis(v);
  auto c = analysis.classify(p);
  int lhs = intrinsic_ideal(analysis.complexification()).dim;
  int rhs = analysis.real_dim() - c.segre_dim;
  return {p, lhs, rhs, lhs == rhs, c.segre_dim, c.generic_segre_dim, !c.degenerate};
}

namespace {

ProbeEntry probe(const SegreAnalysis& analysis, const Point& p) {
  if (!contains_point(analysis.variety(), p)) throw SemanticError("point " + p.to_string() + " is not on the variety");
  auto c = analysis.classify(p);
  return {p, c.segre_dim, analysis.real_dim() - c.segre_dim, c.singular, !c.degenerate, false};
}

}  // namespace

ProbeReport upper_semicontinuity_probe(const RealVariety& v, const Point& base, std::span<const Point> sequence) {
  SegreAnalysis analysis(v);
  ProbeReport report{probe(analysis, base), {}, intrinsic_ideal(analysis.complexification()).dim, true, {}};
  report.caveats.push_back(kPolynomialIdealCaveat);

  auto note = [&](const ProbeEntry& e) {
    if (!e.nondegenerate) {
      report.caveats.push_back("at " + e.point.to_string() +
                               ": Segre degenerate, the dimension formula does not apply and the estimate " +
                               std::to_string(e.estimate) + " is not the intrinsic dimension");
    }
    if (!e.singular) return;
    report.caveats.push_back("at " + e.point.to_string() +
                             ": Jacobian rank of the defining polynomials is below the codimension " +
                             std::to_string(analysis.codim_k()) +
                             "; possible noncoherence, the germ-level intrinsic dimension may be smaller than the "
                             "estimate " + std::to_string(e.estimate));
  };
  note(report.base);
  for (const auto& p : sequence) {
    ProbeEntry e = probe(analysis, p);
    e.violation = e.nondegenerate && report.base.nondegenerate && e.estimate > report.base.estimate;
    report.semicontinuous = report.semicontinuous && !e.violation;
    note(e);
    report.sequence.push_back(std::move(e));
  }
  return report;
}

}  // namespace segrekit
