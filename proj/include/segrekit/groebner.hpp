#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "segrekit/polynomial.hpp"

namespace segrekit {

/// Caps the number of S-pairs Buchberger may reduce on this thread while
/// the guard is alive; exceeding it throws LimitExceeded. Guards nest,
/// the innermost wins. 0 means unlimited.
class ScopedPairLimit {
 public:
  explicit ScopedPairLimit(std::size_t max_pairs);
  ~ScopedPairLimit();
  ScopedPairLimit(const ScopedPairLimit&) = delete;
  ScopedPairLimit& operator=(const ScopedPairLimit&) = delete;

  /// Limit in force on the calling thread (0 if none). Worker threads
  /// start unlimited; pass this along to give them the same cap.
  static std::size_t active_limit() noexcept;

 private:
  std::size_t previous_limit_;
  std::size_t previous_used_;
};

/// Full multivariate division remainder: no term of the result is
/// divisible by a leading monomial of basis.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& ord);

/// Reduced Groebner basis, sorted by ascending leading monomial. The zero
/// ideal gives an empty basis, the unit ideal gives {1}.
std::vector<Polynomial> buchberger(std::span<const Polynomial> gens, const MonomialOrder& ord);

/// Finitely generated ideal in a fixed context. Reduced bases are memoized
/// per order; the memo is shared by copies and safe to read concurrently.
class Ideal {
 public:
  explicit Ideal(VarContext ctx, std::vector<Polynomial> gens = {});

  const VarContext& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  /// Reduced basis under ord; computed once per order.
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& ord) const;

  bool contains(const Polynomial& f) const;
  bool is_zero_ideal() const;
  bool is_unit_ideal() const;

  /// Ideal whose grevlex basis is already known (must be reduced).
  static Ideal with_grevlex_basis(VarContext ctx, std::vector<Polynomial> basis);

 private:
  struct Cache;
  VarContext ctx_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

bool ideal_membership(const Polynomial& f, const Ideal& ideal);

/// I intersected with the subring on keep, expressed in the restricted
/// context. Its variety is the Zariski closure of the coordinate
/// projection of V(I).
Ideal elimination_ideal(const Ideal& ideal, std::span<const std::size_t> keep);
Ideal elimination_ideal(const Ideal& ideal, const std::vector<std::string>& keep);

/// Dimension of V(I) over C: -1 for the unit ideal.
int krull_dimension(const Ideal& ideal);

/// True iff C[all]/I is finite over C[kept], kept being the complement of
/// eliminated: every eliminated variable has a pure power among the
/// leading monomials of the block-order basis.
bool finite_over_kept_vars(const Ideal& ideal, std::span<const std::size_t> eliminated);

}  // namespace segrekit
