#pragma once

#include <span>
#include <vector>

#include "segrekit/groebner.hpp"
#include "segrekit/variety.hpp"

namespace segrekit {

/// Sigma_p = { z : rho(z, conj p) = 0 } as an ideal in the z-variables.
struct SegreFiber {
  Point base_point;
  Ideal ideal;
  int dim;  ///< -1 when the fiber is empty

  /// Reduced grevlex basis; the canonical form used in reports.
  const std::vector<Polynomial>& basis() const { return ideal.groebner_basis(MonomialOrder::grevlex()); }
};

/// Substitutes xi_j := conj(p_j) into the generators of C. Points off the
/// variety are allowed.
SegreFiber segre_fiber(const Ideal& C, const Point& p);

/// dim C - dim (closure of the xi-projection of V(C)): the fiber dimension
/// over a generic point of the xi-image. -1 for the unit ideal.
int generic_segre_dim(const Ideal& C);

struct PointClassification {
  Point point;
  bool on_variety = false;
  int segre_dim = -1;
  int generic_segre_dim = -1;
  bool degenerate = false;         ///< segre_dim > generic_segre_dim
  bool max_nondegenerate = false;  ///< segre_dim == n - codim_k
  int codim_k = 0;                 ///< 2n - real_dim
  /// Full Jacobian rank at (p, conj p) below codim_k: the generators do not
  /// cut X out transversally at p, so germ-level answers may differ.
  bool singular = false;
  std::vector<Polynomial> fiber_basis;
};

/// Precomputes the data shared by all pointwise queries on one variety.
class SegreAnalysis {
 public:
  explicit SegreAnalysis(const RealVariety& v);

  const RealVariety& variety() const noexcept { return variety_; }
  const Ideal& complexification() const noexcept { return complexification_; }
  int real_dim() const noexcept { return real_dim_; }
  int codim_k() const noexcept { return 2 * static_cast<int>(variety_.n()) - real_dim_; }
  int generic_segre_dim() const noexcept { return generic_; }

  PointClassification classify(const Point& p) const;

 private:
  RealVariety variety_;
  Ideal complexification_;
  int real_dim_;
  int generic_;
};

PointClassification classify_point(const RealVariety& v, const Point& p);

/// Pointwise classification of a sample together with the two readings of
/// "generic Segre dimension": the image-generic value and the smallest
/// fiber dimension seen at sampled points of X.
struct SampleClassification {
  std::vector<PointClassification> points;
  int image_generic = -1;
  int diagonal_min = -1;  ///< -1 when no sampled point lies on X
  bool nondegenerate_on_sample = true;  ///< one fiber dimension across sampled points of X
  bool generic_values_agree = true;     ///< diagonal_min == image_generic (vacuous without points on X)
};

/// Points are classified concurrently; the result is in input order.
SampleClassification classify_sample(const RealVariety& v, std::span<const Point> points);

/// True iff V(C) is finite over the z-variables together with kept_barred,
/// i.e. the remaining xi-variables take finitely many values over each
/// point. kept_barred must index xi-variables of C's context.
bool check_finite_projection(const Ideal& C, std::span<const std::size_t> kept_barred);

}  // namespace segrekit
