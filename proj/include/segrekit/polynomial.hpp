#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "segrekit/gaussian_rational.hpp"

namespace segrekit {

/// Ordered list of variable names, optionally with a z_j <-> xi_j pairing
/// marking which slot stands in for the conjugate of which. The index
/// order is the canonical order every monomial order refers to.
///
/// Contexts are cheap to copy (shared immutable data).
class VarContext {
 public:
  VarContext();
  explicit VarContext(std::vector<std::string> names);

  /// Context (z_1..z_n, xi_1..xi_n) with z_j paired to xi_j.
  static VarContext paired(const std::vector<std::string>& holomorphic,
                           const std::vector<std::string>& antiholomorphic);

  std::size_t size() const noexcept;
  const std::string& name(std::size_t i) const;
  const std::vector<std::string>& names() const noexcept;
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws SemanticError for unknown names.
  std::size_t require_index(std::string_view name) const;

  bool has_pairing() const noexcept;
  std::optional<std::size_t> partner(std::size_t i) const;
  bool is_antiholomorphic(std::size_t i) const;
  /// z-slots in index order. Empty without pairing.
  std::vector<std::size_t> holomorphic_indices() const;
  /// xi-slots, ordered to match holomorphic_indices().
  std::vector<std::size_t> antiholomorphic_indices() const;

  /// Sub-context on the given indices (kept in ascending order). Pairs
  /// survive only if both members are kept.
  VarContext restrict_to(std::span<const std::size_t> keep) const;
  /// Variables of *this followed by those of other. Names must be disjoint.
  VarContext concat(const VarContext& other) const;

  friend bool operator==(const VarContext& a, const VarContext& b);

 private:
  struct Data;
  static std::shared_ptr<Data> make_data(std::vector<std::string> names);
  explicit VarContext(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// Exponent vector. Products past 2^31 in any slot raise LimitExceeded.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }
  std::uint64_t degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  /// Precondition: divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Indices with a positive exponent.
  std::vector<std::size_t> support() const;
  std::uint64_t support_mask() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// lex, grevlex, or a two-block elimination order: the block variables
/// are compared first by grevlex, ties broken by grevlex on the rest.
/// Any monomial containing a block variable beats every monomial free
/// of them.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
  /// first_block[i] marks variable i as belonging to the eliminated block.
  static MonomialOrder block(std::vector<bool> first_block);
  /// Classic form: the first b of nvars variables form the block.
  static MonomialOrder block_first(std::size_t b, std::size_t nvars);

  Kind kind() const noexcept { return kind_; }
  const std::vector<bool>& first_block() const noexcept { return block_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
  friend auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::vector<bool> block) : kind_(kind), block_(std::move(block)) {}
  Kind kind_;
  std::vector<bool> block_;
};

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

struct Term {
  Monomial monomial;
  GaussianRational coefficient;
};

/// Sparse polynomial over Q(i). Terms iterate in descending grevlex order;
/// no stored coefficient is zero.
class Polynomial {
 public:
  using Terms = std::map<Monomial, GaussianRational, GrevlexDescending>;

  explicit Polynomial(VarContext ctx) : ctx_(std::move(ctx)) {}
  Polynomial(VarContext ctx, Terms terms);

  static Polynomial constant(const VarContext& ctx, const GaussianRational& c);
  static Polynomial variable(const VarContext& ctx, std::size_t index);
  static Polynomial variable(const VarContext& ctx, std::string_view name);
  static Polynomial monomial(const VarContext& ctx, Monomial m, const GaussianRational& c);

  const VarContext& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; nullopt otherwise.
  std::optional<GaussianRational> constant_value() const;
  /// -1 for the zero polynomial.
  long total_degree() const;
  /// Coefficient of m (zero if absent).
  GaussianRational coefficient(const Monomial& m) const;
  /// Variables that occur with positive exponent, ascending.
  std::vector<std::size_t> variables() const;
  bool uses_only(const std::vector<bool>& allowed) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Polynomial& g);
  Polynomial& operator*=(const GaussianRational& c);

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(Polynomial f, const GaussianRational& c) { return f *= c; }
  friend Polynomial operator*(const GaussianRational& c, Polynomial f) { return f *= c; }

  Polynomial pow(std::uint32_t e) const;
  Polynomial derivative(std::size_t var) const;
  /// Divides by the leading coefficient under ord. Zero stays zero.
  Polynomial monic(const MonomialOrder& ord) const;
  /// Coefficient-wise conjugate (no variable swap).
  Polynomial conj_coefficients() const;

  /// Exact evaluation at a full assignment (one value per variable).
  GaussianRational evaluate(std::span<const GaussianRational> values) const;

  /// Same polynomial expressed in another context, matching variables by
  /// name. Throws SemanticError if a used variable is missing there.
  Polynomial rebase(const VarContext& target) const;

  /// Canonical text: descending grevlex, "a/b+c/d*i" coefficients.
  std::string to_string() const;

  friend bool operator==(const Polynomial& f, const Polynomial& g);

 private:
  void add_term(const Monomial& m, const GaussianRational& c);
  VarContext ctx_;
  Terms terms_;
};

/// Throws SemanticError on context mismatch.
void require_same_context(const VarContext& a, const VarContext& b);

Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial mul(const Polynomial& f, const Polynomial& g);
/// Throws SemanticError for the zero polynomial.
Term leading_term(const Polynomial& f, const MonomialOrder& ord);

/// Value assigned to a variable by substitute().
using SubstitutionValue = std::variant<GaussianRational, Polynomial>;
using Substitution = std::map<std::string, SubstitutionValue, std::less<>>;

/// Replaces the assigned variables; unassigned ones pass through by name
/// into the target context. Polynomial values must live in target.
Polynomial substitute(const Polynomial& f, const Substitution& assignment, const VarContext& target);
/// Target context taken from the first polynomial value, else f's own.
Polynomial substitute(const Polynomial& f, const Substitution& assignment);

}  // namespace segrekit
