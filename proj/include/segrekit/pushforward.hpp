#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "segrekit/groebner.hpp"
#include "segrekit/variety.hpp"

namespace segrekit {

/// Holomorphic polynomial map F: C^n -> C^m. Components live in the
/// paired source context and use only z-variables.
class PolyMap {
 public:
  /// Throws SemanticError if a component involves a conjugate variable,
  /// the counts disagree, or source and target names collide.
  PolyMap(Coordinates source, Coordinates target, std::vector<Polynomial> components);

  const Coordinates& source() const noexcept { return source_; }
  const Coordinates& target() const noexcept { return target_; }
  std::size_t source_n() const noexcept { return source_.n(); }
  std::size_t target_n() const noexcept { return target_.n(); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }

 private:
  Coordinates source_;
  Coordinates target_;
  std::vector<Polynomial> components_;
};

/// F + conj(F(conj .)): 2m components on the paired source context, ordered
/// like the paired target context (F_1..F_m, then their sigma-twins).
std::vector<Polynomial> complexify_map(const PolyMap& F);

/// Identity on the given coordinates with target names renamed.
PolyMap identity_map(const Coordinates& source, const Coordinates& target);

/// F after G; G's target names must be F's source names.
PolyMap compose(const PolyMap& F, const PolyMap& G);

/// C + (target_j - F_j(z, xi)) in source followed by target variables.
Ideal graph_ideal(const Ideal& C, const PolyMap& F);

/// Zariski closure of the image of V(C) under the complexified map, in the
/// paired target context.
Ideal image_complexification(const Ideal& C, const PolyMap& F);

/// True when the graph ideal is finite over the target variables, which
/// certifies that F restricted to V(C) is finite.
bool finiteness_certificate(const Ideal& C, const PolyMap& F);

struct DimensionComparison {
  int source_dim;
  int image_dim;
  bool equal;
  bool finite;  ///< finiteness_certificate
};

DimensionComparison dimension_preserved(const Ideal& C, const PolyMap& F);

/// Map file:
///   targets: u, v
///   twins: a, b          (optional, conjugate slot names; default xi_<u>)
///   realvars: x y, s t   (optional, target real/imaginary parts)
///   comp: <polynomial in the source z-variables>   (one per target)
///   check: <expression over target coordinates>    (any number)
/// Throws ParseError for malformed text, SemanticError for count or
/// holomorphy violations.
struct MapFile {
  PolyMap map;
  /// Parsed check: lines in the paired target context.
  std::vector<Polynomial> checks;
  std::vector<std::string> check_sources;
};

MapFile parse_map(std::string_view text, const Coordinates& source);

}  // namespace segrekit
