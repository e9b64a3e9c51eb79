#include "segrekit/segre.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "segrekit/errors.hpp"

namespace segrekit {

namespace {

void require_pairing(const VarContext& ctx) {
  if (!ctx.has_pairing()) throw SemanticError("expected a paired (z, xi) context");
}

}  // namespace

SegreFiber segre_fiber(const Ideal& C, const Point& p) {
  const VarContext& ctx = C.context();
  require_pairing(ctx);
  auto holo = ctx.holomorphic_indices();
  auto barred = ctx.antiholomorphic_indices();
  if (p.size() != holo.size()) {
    throw SemanticError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                        std::to_string(holo.size()));
  }
  VarContext target = ctx.restrict_to(holo);
  Substitution s;
  for (std::size_t j = 0; j < holo.size(); ++j) {
    s.emplace(ctx.name(holo[j]), Polynomial::variable(target, j));
    s.emplace(ctx.name(barred[j]), p.coords[j].conj());
  }
  std::vector<Polynomial> gens;
  for (const auto& g : C.generators()) gens.push_back(substitute(g, s, target));
  Ideal fiber(target, std::move(gens));
  int dim = krull_dimension(fiber);
  return {p, std::move(fiber), dim};
}

int generic_segre_dim(const Ideal& C) {
  require_pairing(C.context());
  int total = krull_dimension(C);
  if (total < 0) return -1;
  auto barred = C.context().antiholomorphic_indices();
  return total - krull_dimension(elimination_ideal(C, barred));
}

SegreAnalysis::SegreAnalysis(const RealVariety& v)
    : variety_(v),
      complexification_(segrekit::complexification(v)),
      real_dim_(krull_dimension(complexification_)),
      generic_(segrekit::generic_segre_dim(complexification_)) {}

PointClassification SegreAnalysis::classify(const Point& p) const {
  PointClassification out;
  out.point = p;
  out.on_variety = contains_point(variety_, p);
  SegreFiber fiber = segre_fiber(complexification_, p);
  out.segre_dim = fiber.dim;
  out.fiber_basis = fiber.basis();
  out.generic_segre_dim = generic_;
  out.codim_k = codim_k();
  out.degenerate = out.segre_dim > generic_;
  out.max_nondegenerate = out.segre_dim == static_cast<int>(variety_.n()) - out.codim_k;
  out.singular = out.on_variety && jacobian_rank_at(variety_, p) < out.codim_k;
  return out;
}

PointClassification classify_point(const RealVariety& v, const Point& p) { return SegreAnalysis(v).classify(p); }

SampleClassification classify_sample(const RealVariety& v, std::span<const Point> points) {
  SegreAnalysis analysis(v);
  // Warm the shared basis cache before fanning out.
  analysis.complexification().groebner_basis(MonomialOrder::grevlex());

  SampleClassification out;
  out.image_generic = analysis.generic_segre_dim();
  out.points.resize(points.size());
  std::atomic<std::size_t> next{0};
  const std::size_t limit = ScopedPairLimit::active_limit();
  auto worker = [&] {
    ScopedPairLimit guard(limit);
    for (std::size_t k = next++; k < points.size(); k = next++) out.points[k] = analysis.classify(points[k]);
  };
  const std::size_t workers = std::min<std::size_t>(points.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pending;
  for (std::size_t w = 0; w < workers; ++w) pending.push_back(std::async(std::launch::async, worker));
  for (auto& f : pending) f.get();

  std::vector<int> dims;
  for (const auto& c : out.points) {
    if (c.on_variety) dims.push_back(c.segre_dim);
  }
  if (!dims.empty()) {
    auto [lo, hi] = std::minmax_element(dims.begin(), dims.end());
    out.diagonal_min = *lo;
    out.nondegenerate_on_sample = *lo == *hi;
    out.generic_values_agree = *lo == out.image_generic;
  }
  return out;
}

bool check_finite_projection(const Ideal& C, std::span<const std::size_t> kept_barred) {
  const VarContext& ctx = C.context();
  require_pairing(ctx);
  std::vector<std::size_t> eliminated;
  for (std::size_t idx : ctx.antiholomorphic_indices()) {
    if (std::find(kept_barred.begin(), kept_barred.end(), idx) == kept_barred.end()) eliminated.push_back(idx);
  }
  for (std::size_t idx : kept_barred) {
    if (idx >= ctx.size() || !ctx.is_antiholomorphic(idx)) {
      throw SemanticError("kept variables must be conjugate (xi) variables");
    }
  }
  return finite_over_kept_vars(C, eliminated);
}

}  // namespace segrekit
