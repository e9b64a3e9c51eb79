#include "segrekit/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "segrekit/errors.hpp"

namespace segrekit {

namespace {

struct PairBudget {
  std::size_t limit = 0;
  std::size_t used = 0;
};

thread_local PairBudget pair_budget;

void charge_pair() {
  ++pair_budget.used;
  if (pair_budget.limit != 0 && pair_budget.used > pair_budget.limit) {
    throw LimitExceeded("Buchberger pair limit of " + std::to_string(pair_budget.limit) + " exceeded");
  }
}

// Terms in ascending order under a fixed monomial order; the leading term
// sits at the back.
using TermVec = std::vector<Term>;

TermVec to_terms(const Polynomial& f, const MonomialOrder& ord) {
  TermVec out;
  out.reserve(f.term_count());
  for (const auto& [m, c] : f.terms()) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return ord.compare(a.monomial, b.monomial) < 0; });
  return out;
}

Polynomial from_terms(const VarContext& ctx, const TermVec& terms) {
  Polynomial::Terms map;
  for (const auto& t : terms) map.emplace(t.monomial, t.coefficient);
  return Polynomial(ctx, std::move(map));
}

// p - c * m * g
TermVec sub_scaled(const TermVec& p, const GaussianRational& c, const Monomial& m, const TermVec& g,
                   const MonomialOrder& ord) {
  TermVec out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial mg = g[j].monomial * m;
    auto cmp = i == p.size() ? std::strong_ordering::less : ord.compare(mg, p[i].monomial);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(mg), -(c * g[j].coefficient)});
      ++j;
    } else {
      GaussianRational sum = p[i].coefficient - c * g[j].coefficient;
      if (!sum.is_zero()) out.push_back({std::move(mg), std::move(sum)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(TermVec& p) {
  if (p.empty() || p.back().coefficient.is_one()) return;
  GaussianRational inv = p.back().coefficient.inverse();
  for (auto& t : p) t.coefficient *= inv;
}

// Full reduction of p by the monic polynomials basis[k] for which use[k].
TermVec reduce(TermVec p, const std::vector<TermVec>& basis, const std::vector<bool>& use, const MonomialOrder& ord) {
  TermVec rem;
  while (!p.empty()) {
    const Term& lt = p.back();
    std::size_t k = 0;
    for (; k < basis.size(); ++k) {
      if (use[k] && basis[k].back().monomial.divides(lt.monomial)) break;
    }
    if (k == basis.size()) {
      rem.push_back(std::move(p.back()));
      p.pop_back();
      continue;
    }
    GaussianRational c = lt.coefficient;
    Monomial q = lt.monomial.quotient(basis[k].back().monomial);
    p = sub_scaled(p, c, q, basis[k], ord);
  }
  std::reverse(rem.begin(), rem.end());
  return rem;
}

// Reduces only the leading term until it is irreducible.
TermVec top_reduce(TermVec p, const std::vector<TermVec>& basis, const std::vector<bool>& use,
                   const MonomialOrder& ord) {
  while (!p.empty()) {
    const Term& lt = p.back();
    std::size_t k = 0;
    for (; k < basis.size(); ++k) {
      if (use[k] && basis[k].back().monomial.divides(lt.monomial)) break;
    }
    if (k == basis.size()) break;
    GaussianRational c = lt.coefficient;
    Monomial q = lt.monomial.quotient(basis[k].back().monomial);
    p = sub_scaled(p, c, q, basis[k], ord);
  }
  return p;
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  long sugar;
};

const Monomial& lm(const TermVec& p) { return p.back().monomial; }

TermVec s_polynomial(const TermVec& f, const TermVec& g, const Monomial& lcm, const MonomialOrder& ord) {
  // Both monic: S = (lcm/lm f) f - (lcm/lm g) g.
  TermVec sf;
  Monomial qf = lcm.quotient(lm(f));
  sf.reserve(f.size());
  for (const auto& t : f) sf.push_back({t.monomial * qf, t.coefficient});
  return sub_scaled(sf, 1, lcm.quotient(lm(g)), g, ord);
}

class Buchberger {
 public:
  explicit Buchberger(const MonomialOrder& ord) : ord_(ord) {}

  void add_generator(TermVec f) {
    long sugar = 0;
    for (const auto& t : f) sugar = std::max<long>(sugar, t.monomial.degree());
    f = reduce(std::move(f), polys_, active_, ord_);
    if (!f.empty()) insert(std::move(f), sugar);
  }

  void run() {
    while (!pairs_.empty() && !unit_) {
      // Sugar strategy: smallest sugar first, then smallest lcm.
      auto best = pairs_.begin();
      for (auto it = std::next(best); it != pairs_.end(); ++it) {
        if (it->sugar != best->sugar) {
          if (it->sugar < best->sugar) best = it;
          continue;
        }
        auto c = ord_.compare(it->lcm, best->lcm);
        if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
      }
      CriticalPair pair = std::move(*best);
      pairs_.erase(best);
      charge_pair();
      TermVec s = s_polynomial(polys_[pair.i], polys_[pair.j], pair.lcm, ord_);
      s = top_reduce(std::move(s), polys_, active_, ord_);
      if (!s.empty()) insert(std::move(s), pair.sugar);
    }
  }

  std::vector<TermVec> reduced_basis() const {
    std::vector<TermVec> out;
    if (unit_) {
      out.push_back(polys_.back());
      return out;
    }
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (!active_[k]) continue;
      std::vector<bool> others = active_;
      others[k] = false;
      // The leading term survives since active leading monomials are minimal.
      TermVec lead{polys_[k].back()};
      TermVec tail(polys_[k].begin(), std::prev(polys_[k].end()));
      tail = reduce(std::move(tail), polys_, others, ord_);
      tail.push_back(std::move(lead.front()));
      make_monic(tail);
      out.push_back(std::move(tail));
    }
    std::sort(out.begin(), out.end(), [&](const TermVec& a, const TermVec& b) { return ord_.compare(lm(a), lm(b)) < 0; });
    return out;
  }

 private:
  // Gebauer-Moeller update.
  void insert(TermVec h, long sugar) {
    make_monic(h);
    const std::size_t hi = polys_.size();
    if (lm(h).is_one()) {
      polys_.assign(1, std::move(h));
      active_.assign(1, true);
      sugar_.assign(1, sugar);
      pairs_.clear();
      unit_ = true;
      return;
    }
    const Monomial& lh = lm(h);

    std::vector<CriticalPair> fresh;
    for (std::size_t g = 0; g < polys_.size(); ++g) {
      if (!active_[g]) continue;
      Monomial l = lh.lcm(lm(polys_[g]));
      long d = l.degree();
      long sg = std::max(sugar + d - static_cast<long>(lh.degree()), sugar_[g] + d - static_cast<long>(lm(polys_[g]).degree()));
      fresh.push_back({g, hi, std::move(l), sg});
    }
    // Chain criterion among the new pairs: drop (g,h) if another new pair's
    // lcm properly divides it, or equals it and comes earlier.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool coprime = lh.coprime(lm(polys_[p.i]));
      bool redundant = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !redundant; ++b) {
          if (b == a) continue;
          const auto& q = fresh[b];
          if (!q.lcm.divides(p.lcm)) continue;
          if (!(q.lcm == p.lcm)) {
            redundant = true;
          } else if (b < a || lh.coprime(lm(polys_[q.i]))) {
            redundant = true;
          }
        }
      }
      if (!redundant) kept.push_back(p);
    }
    // Product criterion.
    std::erase_if(kept, [&](const CriticalPair& p) { return lh.coprime(lm(polys_[p.i])); });

    // Old pairs made redundant by h.
    std::erase_if(pairs_, [&](const CriticalPair& p) {
      return lh.divides(p.lcm) && !(lh.lcm(lm(polys_[p.i])) == p.lcm) && !(lh.lcm(lm(polys_[p.j])) == p.lcm);
    });
    for (auto& p : kept) pairs_.push_back(std::move(p));

    for (std::size_t g = 0; g < polys_.size(); ++g) {
      if (active_[g] && lh.divides(lm(polys_[g]))) active_[g] = false;
    }
    polys_.push_back(std::move(h));
    active_.push_back(true);
    sugar_.push_back(sugar);
  }

  const MonomialOrder& ord_;
  std::vector<TermVec> polys_;
  std::vector<bool> active_;
  std::vector<long> sugar_;
  std::vector<CriticalPair> pairs_;
  bool unit_ = false;
};

void require_common_context(std::span<const Polynomial> polys) {
  for (const auto& p : polys) require_same_context(p.context(), polys.front().context());
}

}  // namespace

ScopedPairLimit::ScopedPairLimit(std::size_t max_pairs)
    : previous_limit_(pair_budget.limit), previous_used_(pair_budget.used) {
  pair_budget.limit = max_pairs;
  pair_budget.used = 0;
}

std::size_t ScopedPairLimit::active_limit() noexcept { return pair_budget.limit; }

ScopedPairLimit::~ScopedPairLimit() {
  pair_budget.limit = previous_limit_;
  pair_budget.used = previous_used_;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& ord) {
  std::vector<TermVec> b;
  for (const auto& g : basis) {
    require_same_context(g.context(), f.context());
    if (g.is_zero()) throw SemanticError("zero polynomial in division basis");
    TermVec t = to_terms(g, ord);
    make_monic(t);
    b.push_back(std::move(t));
  }
  std::vector<bool> use(b.size(), true);
  return from_terms(f.context(), reduce(to_terms(f, ord), b, use, ord));
}

std::vector<Polynomial> buchberger(std::span<const Polynomial> gens, const MonomialOrder& ord) {
  std::vector<Polynomial> out;
  if (gens.empty()) return out;
  require_common_context(gens);
  const VarContext& ctx = gens.front().context();

  // Deterministic input order regardless of how generators were listed.
  std::vector<TermVec> inputs;
  for (const auto& g : gens) {
    if (!g.is_zero()) inputs.push_back(to_terms(g, ord));
  }
  std::sort(inputs.begin(), inputs.end(), [&](const TermVec& a, const TermVec& b) {
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
      auto c = ord.compare(a[a.size() - 1 - k].monomial, b[b.size() - 1 - k].monomial);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  });

  Buchberger engine(ord);
  for (auto& f : inputs) engine.add_generator(std::move(f));
  engine.run();
  for (const auto& t : engine.reduced_basis()) out.push_back(from_terms(ctx, t));
  return out;
}

// ---------------------------------------------------------------------------
// Ideal

struct Ideal::Cache {
  std::mutex mu;
  std::map<MonomialOrder, std::shared_ptr<const std::vector<Polynomial>>> bases;
};

Ideal::Ideal(VarContext ctx, std::vector<Polynomial> gens) : ctx_(std::move(ctx)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    require_same_context(g.context(), ctx_);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::with_grevlex_basis(VarContext ctx, std::vector<Polynomial> basis) {
  Ideal ideal(std::move(ctx), basis);
  ideal.cache_->bases.emplace(MonomialOrder::grevlex(),
                              std::make_shared<const std::vector<Polynomial>>(std::move(basis)));
  return ideal;
}

const std::vector<Polynomial>& Ideal::groebner_basis(const MonomialOrder& ord) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->bases.find(ord);
    if (it != cache_->bases.end()) return *it->second;
  }
  auto basis = std::make_shared<const std::vector<Polynomial>>(buchberger(gens_, ord));
  std::lock_guard lock(cache_->mu);
  auto [it, inserted] = cache_->bases.emplace(ord, std::move(basis));
  return *it->second;
}

bool Ideal::contains(const Polynomial& f) const {
  require_same_context(f.context(), ctx_);
  if (f.is_zero()) return true;
  auto ord = MonomialOrder::grevlex();
  return normal_form(f, groebner_basis(ord), ord).is_zero();
}

bool Ideal::is_zero_ideal() const { return gens_.empty(); }

bool Ideal::is_unit_ideal() const {
  const auto& gb = groebner_basis(MonomialOrder::grevlex());
  return gb.size() == 1 && gb.front().is_constant();
}

bool ideal_membership(const Polynomial& f, const Ideal& ideal) { return ideal.contains(f); }

Ideal elimination_ideal(const Ideal& ideal, std::span<const std::size_t> keep) {
  const VarContext& ctx = ideal.context();
  std::vector<bool> kept(ctx.size(), false);
  for (std::size_t k : keep) kept.at(k) = true;
  std::vector<bool> eliminated(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) eliminated[i] = !kept[i];

  VarContext sub = ctx.restrict_to(keep);
  std::vector<Polynomial> basis;
  for (const auto& g : ideal.groebner_basis(MonomialOrder::block(eliminated))) {
    if (g.uses_only(kept)) basis.push_back(g.rebase(sub));
  }
  auto grevlex = MonomialOrder::grevlex();
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return grevlex.compare(leading_term(a, grevlex).monomial, leading_term(b, grevlex).monomial) < 0;
  });
  return Ideal::with_grevlex_basis(std::move(sub), std::move(basis));
}

Ideal elimination_ideal(const Ideal& ideal, const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (const auto& name : keep) idx.push_back(ideal.context().require_index(name));
  return elimination_ideal(ideal, idx);
}

int krull_dimension(const Ideal& ideal) {
  const std::size_t n = ideal.context().size();
  const auto& gb = ideal.groebner_basis(MonomialOrder::grevlex());
  std::vector<std::uint64_t> masks;
  for (const auto& g : gb) {
    auto mask = leading_term(g, MonomialOrder::grevlex()).monomial.support_mask();
    if (mask == 0) return -1;
    masks.push_back(mask);
  }
  if (masks.empty()) return static_cast<int>(n);

  // Largest variable set containing no leading-monomial support.
  std::size_t best = 0;
  auto independent = [&](std::uint64_t set) {
    return std::none_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & ~set) == 0; });
  };
  auto search = [&](auto&& self, std::size_t i, std::uint64_t set, std::size_t size) -> void {
    if (size + (n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    std::uint64_t with = set | (std::uint64_t{1} << i);
    if (independent(with)) self(self, i + 1, with, size + 1);
    self(self, i + 1, set, size);
  };
  search(search, 0, 0, 0);
  return static_cast<int>(best);
}

bool finite_over_kept_vars(const Ideal& ideal, std::span<const std::size_t> eliminated) {
  std::vector<bool> block(ideal.context().size(), false);
  for (std::size_t v : eliminated) block.at(v) = true;
  auto ord = MonomialOrder::block(block);
  const auto& gb = ideal.groebner_basis(ord);
  std::vector<bool> has_pure_power(block.size(), false);
  for (const auto& g : gb) {
    auto support = leading_term(g, ord).monomial.support();
    if (support.empty()) return true;  // empty variety
    if (support.size() == 1) has_pure_power[support.front()] = true;
  }
  return std::all_of(eliminated.begin(), eliminated.end(), [&](std::size_t v) { return has_pure_power[v]; });
}

}  // namespace segrekit
