#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "segrekit/expression.hpp"
#include "segrekit/gaussian_rational.hpp"
#include "segrekit/groebner.hpp"
#include "segrekit/polynomial.hpp"

namespace segrekit {

/// Name of the antiholomorphic slot standing in for conj(name).
std::string conj_name(const std::string& name);

/// Complex coordinates z_1..z_n of C^n, the paired context
/// (z_1..z_n, xi_1..xi_n) in which defining functions live, and the real
/// coordinates z_j = x_j + i*y_j.
class Coordinates {
 public:
  /// Real parts default to x1, y1, x2, y2, ... when real_names is empty.
  explicit Coordinates(std::vector<std::string> complex_names,
                       std::vector<std::pair<std::string, std::string>> real_names = {});
  /// Explicit names for the conjugate slots.
  Coordinates(std::vector<std::string> complex_names, std::vector<std::string> twin_names,
              std::vector<std::pair<std::string, std::string>> real_names);

  std::size_t n() const noexcept { return complex_names_.size(); }
  const std::vector<std::string>& complex_names() const noexcept { return complex_names_; }
  const std::vector<std::pair<std::string, std::string>>& real_names() const noexcept { return real_names_; }
  bool has_declared_real_names() const noexcept { return declared_real_; }

  /// Paired context (z..., xi...).
  const VarContext& complex_context() const noexcept { return complex_ctx_; }
  /// (x_1, y_1, ..., x_n, y_n).
  const VarContext& real_context() const noexcept { return real_ctx_; }
  /// Context of the z-slots only.
  const VarContext& holomorphic_context() const noexcept { return holo_ctx_; }

  /// x_j and y_j as polynomials in (z, xi): (z+xi)/2 and (z-xi)/(2i).
  Polynomial real_part(std::size_t j) const;
  Polynomial imaginary_part(std::size_t j) const;

  /// Rewrites f(z, xi) in real coordinates via z = x+iy, xi = x-iy.
  Polynomial realify(const Polynomial& f) const;
  /// Rewrites g(x, y) in (z, xi).
  Polynomial complexify_coords(const Polynomial& g) const;

 private:
  std::vector<std::string> complex_names_;
  std::vector<std::pair<std::string, std::string>> real_names_;
  bool declared_real_ = false;
  VarContext complex_ctx_;
  VarContext real_ctx_;
  VarContext holo_ctx_;
};

/// Point of C^n with Gaussian-rational coordinates.
struct Point {
  std::vector<GaussianRational> coords;

  std::size_t size() const noexcept { return coords.size(); }
  Point conj() const;
  /// "a,b,..." in canonical coefficient syntax.
  std::string to_string() const;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Swap z_j <-> xi_j and conjugate coefficients. Throws SemanticError if
/// the context has no pairing.
Polynomial sigma(const Polynomial& f);

/// Real-algebraic X = { z : rho(z, conj z) = 0 } in C^n. The generator set
/// is closed under sigma: missing conjugate equations are appended.
class RealVariety {
 public:
  RealVariety(Coordinates coords, std::vector<Polynomial> gens, std::string source = {});

  std::size_t n() const noexcept { return coords_.n(); }
  const Coordinates& coordinates() const noexcept { return coords_; }
  const VarContext& context() const noexcept { return coords_.complex_context(); }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const std::string& source() const noexcept { return source_; }

 private:
  Coordinates coords_;
  std::vector<Polynomial> gens_;
  std::string source_;
};

/// Reads the variety file format:
///   vars: z, w
///   realvars: x y, s t      (optional)
///   eq: <lhs> [= <rhs>]     (any number)
/// with '#' comments. Throws ParseError.
RealVariety parse_equations(std::string_view text);

/// Names for expressions over coords: z-names, their conjugate slots,
/// declared real/imaginary part names, and conj() acting as sigma.
ExpressionEnv coordinate_env(const Coordinates& coords);
/// "lhs = rhs" as lhs - rhs; a missing right side means 0.
Polynomial parse_equation(std::string_view body, const ExpressionEnv& env, SourcePos pos = {});

/// Comma-separated Gaussian rationals; SemanticError if the count is not n.
Point parse_point(std::string_view text, std::size_t n);
/// Points separated by ';'.
std::vector<Point> parse_point_list(std::string_view text, std::size_t n);

std::vector<Polynomial> realify(const RealVariety& v);
Polynomial complexify_coords(const Polynomial& g, const Coordinates& coords);

/// The ideal of the complexification in C^n x C^n.
Ideal complexification(const RealVariety& v);

/// Real dimension of X, i.e. the complex dimension of its complexification.
/// Assumes the generators define the full ideal of X.
int real_dim(const RealVariety& v);

/// Values of the generators at (p, conj p).
std::vector<GaussianRational> evaluate_on_diagonal(const RealVariety& v, const Point& p);
bool contains_point(const RealVariety& v, const Point& p);

struct CrRank {
  int rank;          ///< rank of (d rho_i / d xi_j) at (p, conj p)
  int cr_dimension;  ///< n - rank, meaningful at CR regular points
};

/// Throws SemanticError when p is not on X.
CrRank cr_rank_at(const RealVariety& v, const Point& p);

/// Rank of the full Jacobian d rho / d(z, xi) at (p, conj p). Below the
/// codimension 2n - real_dim the polynomial description is singular at p.
int jacobian_rank_at(const RealVariety& v, const Point& p);

/// Exact rank over Q(i).
int matrix_rank(std::vector<std::vector<GaussianRational>> rows);

}  // namespace segrekit
