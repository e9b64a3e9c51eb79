#pragma once

#include <span>
#include <string>
#include <vector>

#include "segrekit/groebner.hpp"
#include "segrekit/segre.hpp"
#include "segrekit/variety.hpp"

namespace segrekit {

/// Zariski closure of the projection of V(C) to the z-variables. It
/// contains the intrinsic complexification of X and has its dimension.
struct IntrinsicResult {
  Ideal ideal;   ///< in the z-variables only
  int dim;
  bool generic;  ///< ideal is (0), i.e. dim == n

  const std::vector<Polynomial>& basis() const { return ideal.groebner_basis(MonomialOrder::grevlex()); }
};

IntrinsicResult intrinsic_ideal(const Ideal& C);

/// lhs: dimension of the intrinsic ideal. rhs: real_dim(X) - dim Sigma_p.
/// The two agree whenever X is Segre nondegenerate at p.
struct FormulaCheck {
  Point point;
  int lhs;
  int rhs;
  bool equal;
  int segre_dim;
  int generic_segre_dim;
  bool nondegenerate;  ///< segre_dim == generic_segre_dim at p
};

/// Throws SemanticError when p is not on X.
FormulaCheck intrinsic_dim_formula_check(const RealVariety& v, const Point& p);

struct ProbeEntry {
  Point point;
  int segre_dim;
  int estimate;    ///< real_dim - segre_dim
  bool singular;       ///< Jacobian rank below the codimension at p
  bool nondegenerate;  ///< the estimate is only justified here
  bool violation;      ///< estimate exceeds the base value, both justified
};

struct ProbeReport {
  ProbeEntry base;
  std::vector<ProbeEntry> sequence;
  int global_dim;  ///< dimension of the intrinsic ideal
  bool semicontinuous;
  std::vector<std::string> caveats;
};

/// Pointwise intrinsic-dimension estimates along points approaching base.
/// Upper semicontinuity requires no estimate along the sequence to exceed
/// the estimate at base; the comparison is made only where both points are
/// Segre nondegenerate. All points must lie on X (SemanticError).
ProbeReport upper_semicontinuity_probe(const RealVariety& v, const Point& base, std::span<const Point> sequence);

/// Attached to every report computed from the polynomial ideal.
inline constexpr const char* kPolynomialIdealCaveat =
    "polynomial-ideal semantics; germ values may differ at noncoherent points";

}  // namespace segrekit
