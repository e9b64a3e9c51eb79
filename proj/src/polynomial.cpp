#include "segrekit/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "segrekit/errors.hpp"

namespace segrekit {

// ---------------------------------------------------------------------------
// VarContext

struct VarContext::Data {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  // partner[i] == size() when unpaired
  std::vector<std::size_t> partner;
  std::vector<bool> anti;
  bool paired = false;
};

std::shared_ptr<VarContext::Data> VarContext::make_data(std::vector<std::string> names) {
  auto d = std::make_shared<VarContext::Data>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!d->index.emplace(names[i], i).second) throw SemanticError("duplicate variable name '" + names[i] + "'");
  }
  d->partner.assign(names.size(), names.size());
  d->anti.assign(names.size(), false);
  d->names = std::move(names);
  return d;
}

VarContext::VarContext() : data_(make_data({})) {}

VarContext::VarContext(std::vector<std::string> names) : data_(make_data(std::move(names))) {}

VarContext::VarContext(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

VarContext VarContext::paired(const std::vector<std::string>& holomorphic,
                              const std::vector<std::string>& antiholomorphic) {
  if (holomorphic.size() != antiholomorphic.size()) throw SemanticError("pairing needs equally many z and xi slots");
  std::vector<std::string> names = holomorphic;
  names.insert(names.end(), antiholomorphic.begin(), antiholomorphic.end());
  auto d = make_data(std::move(names));
  const std::size_t n = holomorphic.size();
  for (std::size_t j = 0; j < n; ++j) {
    d->partner[j] = n + j;
    d->partner[n + j] = j;
    d->anti[n + j] = true;
  }
  d->paired = true;
  return VarContext(std::shared_ptr<const Data>(std::move(d)));
}

std::size_t VarContext::size() const noexcept { return data_->names.size(); }

const std::string& VarContext::name(std::size_t i) const { return data_->names.at(i); }

const std::vector<std::string>& VarContext::names() const noexcept { return data_->names; }

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t VarContext::require_index(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw SemanticError("unknown variable '" + std::string(name) + "'");
  return *idx;
}

bool VarContext::has_pairing() const noexcept { return data_->paired; }

std::optional<std::size_t> VarContext::partner(std::size_t i) const {
  std::size_t p = data_->partner.at(i);
  if (p == size()) return std::nullopt;
  return p;
}

bool VarContext::is_antiholomorphic(std::size_t i) const { return data_->anti.at(i); }

std::vector<std::size_t> VarContext::holomorphic_indices() const {
  std::vector<std::size_t> out;
  if (!has_pairing()) return out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (partner(i) && !is_antiholomorphic(i)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> VarContext::antiholomorphic_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i : holomorphic_indices()) out.push_back(*partner(i));
  return out;
}

VarContext VarContext::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::string> names;
  std::vector<std::size_t> new_index(size(), size());
  for (std::size_t i : sorted) {
    new_index.at(i) = names.size();
    names.push_back(name(i));
  }
  auto d = make_data(std::move(names));
  for (std::size_t i : sorted) {
    auto p = partner(i);
    if (p && new_index[*p] != size()) {
      d->partner[new_index[i]] = new_index[*p];
      d->anti[new_index[i]] = is_antiholomorphic(i);
      d->paired = true;
    }
  }
  return VarContext(std::shared_ptr<const Data>(std::move(d)));
}

VarContext VarContext::concat(const VarContext& other) const {
  std::vector<std::string> names = data_->names;
  names.insert(names.end(), other.names().begin(), other.names().end());
  auto d = make_data(std::move(names));
  const std::size_t offset = size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (auto p = partner(i)) {
      d->partner[i] = *p;
      d->anti[i] = is_antiholomorphic(i);
      d->paired = true;
    }
  }
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (auto p = other.partner(i)) {
      d->partner[offset + i] = offset + *p;
      d->anti[offset + i] = other.is_antiholomorphic(i);
      d->paired = true;
    }
  }
  return VarContext(std::shared_ptr<const Data>(std::move(d)));
}

bool operator==(const VarContext& a, const VarContext& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->names == b.data_->names && a.data_->partner == b.data_->partner && a.data_->anti == b.data_->anti;
}

void require_same_context(const VarContext& a, const VarContext& b) {
  if (!(a == b)) throw SemanticError("polynomial context mismatch");
}

// ---------------------------------------------------------------------------
// Monomial

namespace {

constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 31;

std::uint32_t checked_exponent(std::uint64_t e) {
  if (e >= kMaxExponent) throw LimitExceeded("exponent exceeds 2^31");
  return static_cast<std::uint32_t>(e);
}

}  // namespace

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(index) = checked_exponent(power);
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= divisor.exps_[i];
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) l.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return l;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

std::vector<std::size_t> Monomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) out.push_back(i);
  }
  return out;
}

std::uint64_t Monomial::support_mask() const {
  if (exps_.size() > 64) throw LimitExceeded("more than 64 variables");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m(a);
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    m.exps_[i] = checked_exponent(std::uint64_t{a.exps_[i]} + b.exps_[i]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Orders

namespace {

template <typename Pred>
std::strong_ordering grevlex_on(const Monomial& a, const Monomial& b, Pred in_block) {
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (in_block(i)) {
      da += a[i];
      db += b[i];
    }
  }
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!in_block(i) || a[i] == b[i]) continue;
    return a[i] < b[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
  return grevlex_on(a, b, [](std::size_t) { return true; });
}

MonomialOrder MonomialOrder::block(std::vector<bool> first_block) {
  return MonomialOrder(Kind::block, std::move(first_block));
}

MonomialOrder MonomialOrder::block_first(std::size_t b, std::size_t nvars) {
  std::vector<bool> mask(nvars, false);
  for (std::size_t i = 0; i < b && i < nvars; ++i) mask[i] = true;
  return block(std::move(mask));
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
      }
      return std::strong_ordering::equal;
    case Kind::grevlex:
      return grevlex_compare(a, b);
    case Kind::block: {
      auto in_block = [this](std::size_t i) { return i < block_.size() && block_[i]; };
      auto first = grevlex_on(a, b, in_block);
      if (first != 0) return first;
      return grevlex_on(a, b, [&](std::size_t i) { return !in_block(i); });
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(VarContext ctx, Terms terms) : ctx_(std::move(ctx)) {
  for (auto& [m, c] : terms) {
    if (m.size() != ctx_.size()) throw SemanticError("monomial length does not match context");
    if (!c.is_zero()) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(const VarContext& ctx, const GaussianRational& c) {
  return monomial(ctx, Monomial(ctx.size()), c);
}

Polynomial Polynomial::variable(const VarContext& ctx, std::size_t index) {
  if (index >= ctx.size()) throw SemanticError("variable index out of range");
  return monomial(ctx, Monomial::variable(ctx.size(), index), 1);
}

Polynomial Polynomial::variable(const VarContext& ctx, std::string_view name) {
  return variable(ctx, ctx.require_index(name));
}

Polynomial Polynomial::monomial(const VarContext& ctx, Monomial m, const GaussianRational& c) {
  Polynomial p(ctx);
  if (m.size() != ctx.size()) throw SemanticError("monomial length does not match context");
  if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

std::optional<GaussianRational> Polynomial::constant_value() const {
  if (terms_.empty()) return GaussianRational{};
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, static_cast<long>(m.degree()));
  return d;
}

GaussianRational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<bool> used(ctx_.size(), false);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i : m.support()) used[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) out.push_back(i);
  }
  return out;
}

bool Polynomial::uses_only(const std::vector<bool>& allowed) const {
  for (std::size_t i : variables()) {
    if (i >= allowed.size() || !allowed[i]) return false;
  }
  return true;
}

void Polynomial::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  require_same_context(ctx_, g.ctx_);
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  require_same_context(ctx_, g.ctx_);
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  require_same_context(f.ctx_, g.ctx_);
  Polynomial r(f.ctx_);
  for (const auto& [mf, cf] : f.terms_) {
    for (const auto& [mg, cg] : g.terms_) r.add_term(mf * mg, cf * cg);
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& g) { return *this = *this * g; }

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ctx_.size()) throw SemanticError("variable index out of range");
  Polynomial r(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    std::vector<std::uint32_t> e(m.exponents().begin(), m.exponents().end());
    GaussianRational factor(static_cast<long>(e[var]));
    --e[var];
    r.add_term(Monomial(std::move(e)), c * factor);
  }
  return r;
}

Polynomial Polynomial::monic(const MonomialOrder& ord) const {
  if (is_zero()) return *this;
  return *this * leading_term(*this, ord).coefficient.inverse();
}

Polynomial Polynomial::conj_coefficients() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = c.conj();
  return r;
}

GaussianRational Polynomial::evaluate(std::span<const GaussianRational> values) const {
  if (values.size() != ctx_.size()) throw SemanticError("evaluation point has wrong length");
  GaussianRational sum;
  for (const auto& [m, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= values[i];
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::rebase(const VarContext& target) const {
  if (target == ctx_) return *this;
  std::vector<std::size_t> map(ctx_.size(), target.size());
  for (std::size_t i : variables()) {
    auto idx = target.index_of(ctx_.name(i));
    if (!idx) throw SemanticError("variable '" + ctx_.name(i) + "' not present in target context");
    map[i] = *idx;
  }
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    std::vector<std::uint32_t> e(target.size(), 0);
    for (std::size_t i : m.support()) e[map[i]] = m[i];
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += ctx_.name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    // Sign is pulled out of real and purely imaginary coefficients;
    // mixed ones print parenthesized after a '+'.
    bool negative = false;
    GaussianRational mag = c;
    if (c.is_real() ? sgn(c.re()) < 0 : (c.is_imaginary() && sgn(c.im()) < 0)) {
      negative = true;
      mag = -c;
    }
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << mag.to_string();
    } else if (mag.is_one()) {
      out << mono;
    } else if (mag.is_real() || mag.is_imaginary()) {
      out << mag.to_string() << '*' << mono;
    } else {
      out << '(' << mag.to_string() << ")*" << mono;
    }
  }
  return out.str();
}

bool operator==(const Polynomial& f, const Polynomial& g) { return f.ctx_ == g.ctx_ && f.terms_ == g.terms_; }

Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }

Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }

Term leading_term(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw SemanticError("leading term of the zero polynomial");
  auto best = f.terms().begin();
  if (ord.kind() != MonomialOrder::Kind::grevlex) {
    for (auto it = std::next(best); it != f.terms().end(); ++it) {
      if (ord.greater(it->first, best->first)) best = it;
    }
  }
  return {best->first, best->second};
}

// ---------------------------------------------------------------------------
// Substitution

Polynomial substitute(const Polynomial& f, const Substitution& assignment, const VarContext& target) {
  const VarContext& src = f.context();
  std::vector<const SubstitutionValue*> value(src.size(), nullptr);
  for (const auto& [name, v] : assignment) {
    value[src.require_index(name)] = &v;
    if (const auto* p = std::get_if<Polynomial>(&v)) require_same_context(p->context(), target);
  }
  std::vector<std::size_t> passthrough(src.size(), target.size());
  for (std::size_t i : f.variables()) {
    if (value[i] == nullptr) passthrough[i] = target.require_index(src.name(i));
  }

  // powers[i][k] = value_i^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(src.size());
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) {
      cache.push_back(Polynomial::constant(target, 1));
      const auto& v = *value[i];
      if (const auto* c = std::get_if<GaussianRational>(&v)) {
        cache.push_back(Polynomial::constant(target, *c));
      } else {
        cache.push_back(std::get<Polynomial>(v));
      }
    }
    while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
    return cache[k];
  };

  Polynomial result(target);
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> e(target.size(), 0);
    for (std::size_t i : m.support()) {
      if (value[i] == nullptr) e[passthrough[i]] += m[i];
    }
    Polynomial term = Polynomial::monomial(target, Monomial(std::move(e)), c);
    for (std::size_t i : m.support()) {
      if (value[i] != nullptr) term *= power_of(i, m[i]);
    }
    result += term;
  }
  return result;
}

Polynomial substitute(const Polynomial& f, const Substitution& assignment) {
  for (const auto& [name, v] : assignment) {
    if (const auto* p = std::get_if<Polynomial>(&v)) return substitute(f, assignment, p->context());
  }
  return substitute(f, assignment, f.context());
}

}  // namespace segrekit
