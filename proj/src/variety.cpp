#include "segrekit/variety.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "segrekit/errors.hpp"
#include "segrekit/expression.hpp"
#include "directives.hpp"

namespace segrekit {

using detail::split;
using detail::trim;

std::string conj_name(const std::string& name) { return "xi_" + name; }

namespace {

const GaussianRational kHalf{mpq_class(1, 2), 0};

void check_name(const std::string& name, std::set<std::string>& seen) {
  if (!is_identifier(name)) throw SemanticError("invalid variable name '" + name + "'");
  if (name == "i" || name == "conj") throw SemanticError("'" + name + "' is reserved");
  if (!seen.insert(name).second) throw SemanticError("duplicate variable name '" + name + "'");
}

std::vector<std::string> default_twins(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& z : names) out.push_back(conj_name(z));
  return out;
}

bool proportional(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  auto ord = MonomialOrder::grevlex();
  auto lf = leading_term(f, ord);
  auto lg = leading_term(g, ord);
  if (!(lf.monomial == lg.monomial) || f.term_count() != g.term_count()) return false;
  return f * lg.coefficient == g * lf.coefficient;
}

}  // namespace

// ---------------------------------------------------------------------------
// Coordinates

Coordinates::Coordinates(std::vector<std::string> complex_names,
                         std::vector<std::pair<std::string, std::string>> real_names)
    : Coordinates(complex_names, default_twins(complex_names), std::move(real_names)) {}

Coordinates::Coordinates(std::vector<std::string> complex_names, std::vector<std::string> twin_names,
                         std::vector<std::pair<std::string, std::string>> real_names)
    : complex_names_(std::move(complex_names)), real_names_(std::move(real_names)) {
  if (twin_names.size() != complex_names_.size()) throw SemanticError("need one conjugate name per variable");
  declared_real_ = !real_names_.empty();
  if (!declared_real_) {
    for (std::size_t j = 1; j <= complex_names_.size(); ++j) {
      real_names_.emplace_back("x" + std::to_string(j), "y" + std::to_string(j));
    }
  }
  if (real_names_.size() != complex_names_.size()) {
    throw SemanticError("need one real/imaginary name pair per complex variable");
  }
  std::set<std::string> seen;
  for (const auto& z : complex_names_) check_name(z, seen);
  for (const auto& t : twin_names) check_name(t, seen);
  std::set<std::string> seen_real;
  for (const auto& [x, y] : real_names_) {
    check_name(x, seen_real);
    check_name(y, seen_real);
    if (declared_real_ && (seen.count(x) != 0 || seen.count(y) != 0)) {
      throw SemanticError("real coordinate names must differ from complex ones");
    }
  }
  complex_ctx_ = VarContext::paired(complex_names_, twin_names);
  std::vector<std::string> flat;
  for (const auto& [x, y] : real_names_) {
    flat.push_back(x);
    flat.push_back(y);
  }
  real_ctx_ = VarContext(std::move(flat));
  holo_ctx_ = VarContext(complex_names_);
}

Polynomial Coordinates::real_part(std::size_t j) const {
  auto z = Polynomial::variable(complex_ctx_, j);
  auto xi = Polynomial::variable(complex_ctx_, n() + j);
  return (z + xi) * kHalf;
}

Polynomial Coordinates::imaginary_part(std::size_t j) const {
  auto z = Polynomial::variable(complex_ctx_, j);
  auto xi = Polynomial::variable(complex_ctx_, n() + j);
  // (z - xi) / (2i) = -i/2 * (z - xi)
  return (z - xi) * GaussianRational(0, mpq_class(-1, 2));
}

Polynomial Coordinates::realify(const Polynomial& f) const {
  require_same_context(f.context(), complex_ctx_);
  Substitution s;
  for (std::size_t j = 0; j < n(); ++j) {
    auto x = Polynomial::variable(real_ctx_, 2 * j);
    auto y = Polynomial::variable(real_ctx_, 2 * j + 1);
    s.emplace(complex_ctx_.name(j), x + y * GaussianRational::i());
    s.emplace(complex_ctx_.name(n() + j), x - y * GaussianRational::i());
  }
  return substitute(f, s, real_ctx_);
}

Polynomial Coordinates::complexify_coords(const Polynomial& g) const {
  require_same_context(g.context(), real_ctx_);
  Substitution s;
  for (std::size_t j = 0; j < n(); ++j) {
    s.emplace(real_ctx_.name(2 * j), real_part(j));
    s.emplace(real_ctx_.name(2 * j + 1), imaginary_part(j));
  }
  return substitute(g, s, complex_ctx_);
}

// ---------------------------------------------------------------------------
// Points

Point Point::conj() const {
  Point p;
  for (const auto& c : coords) p.coords.push_back(c.conj());
  return p;
}

std::string Point::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i != 0) out += ',';
    out += coords[i].to_string();
  }
  return out;
}

Point parse_point(std::string_view text, std::size_t n) {
  Point p;
  std::size_t column = 1;
  for (const auto& piece : split(text, ',')) {
    if (trim(piece).empty()) throw ParseError("empty point coordinate", 1, column);
    p.coords.push_back(parse_constant(piece, {1, column}));
    column += piece.size() + 1;
  }
  if (p.size() != n) {
    throw SemanticError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
  }
  return p;
}

std::vector<Point> parse_point_list(std::string_view text, std::size_t n) {
  std::vector<Point> out;
  for (const auto& piece : split(text, ';')) {
    if (trim(piece).empty()) continue;
    out.push_back(parse_point(piece, n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// sigma and the variety

Polynomial sigma(const Polynomial& f) {
  const VarContext& ctx = f.context();
  if (!ctx.has_pairing()) throw SemanticError("sigma needs a context with z/xi pairing");
  std::vector<std::size_t> swap(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) swap[i] = ctx.partner(i).value_or(i);
  Polynomial::Terms terms;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> e(ctx.size(), 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) e[swap[i]] = m[i];
    terms.emplace(Monomial(std::move(e)), c.conj());
  }
  return Polynomial(ctx, std::move(terms));
}

RealVariety::RealVariety(Coordinates coords, std::vector<Polynomial> gens, std::string source)
    : coords_(std::move(coords)), source_(std::move(source)) {
  auto add_unique = [this](Polynomial g) {
    if (g.is_zero()) return;
    for (const auto& h : gens_) {
      if (proportional(g, h)) return;
    }
    gens_.push_back(std::move(g));
  };
  for (auto& g : gens) {
    require_same_context(g.context(), context());
    add_unique(std::move(g));
  }
  const std::size_t original = gens_.size();
  for (std::size_t k = 0; k < original; ++k) add_unique(sigma(gens_[k]));
}

ExpressionEnv coordinate_env(const Coordinates& coords) {
  ExpressionEnv env;
  env.context = coords.complex_context();
  env.conj = [](const Polynomial& p) { return sigma(p); };
  env.resolve = [coords](std::string_view name) -> std::optional<Polynomial> {
    const VarContext& ctx = coords.complex_context();
    if (auto idx = ctx.index_of(name)) return Polynomial::variable(ctx, *idx);
    if (coords.has_declared_real_names()) {
      for (std::size_t j = 0; j < coords.n(); ++j) {
        if (coords.real_names()[j].first == name) return coords.real_part(j);
        if (coords.real_names()[j].second == name) return coords.imaginary_part(j);
      }
    }
    return std::nullopt;
  };
  return env;
}

Polynomial parse_equation(std::string_view body, const ExpressionEnv& env, SourcePos pos) {
  auto eq_at = body.find('=');
  if (eq_at != std::string_view::npos && body.find('=', eq_at + 1) != std::string_view::npos) {
    throw ParseError("more than one '='", pos.line, pos.column + body.find('=', eq_at + 1));
  }
  std::string_view lhs = body.substr(0, eq_at);
  if (trim(lhs).empty()) throw ParseError("empty equation", pos.line, pos.column);
  Polynomial g = parse_expression(lhs, env, pos);
  if (eq_at != std::string_view::npos) {
    std::string_view rhs = body.substr(eq_at + 1);
    if (!trim(rhs).empty()) g -= parse_expression(rhs, env, {pos.line, pos.column + eq_at + 1});
  }
  return g;
}

RealVariety parse_equations(std::string_view text) {
  std::optional<std::vector<std::string>> vars;
  std::vector<std::pair<std::string, std::string>> real_names;
  std::vector<detail::Directive> equations;

  for (auto& d : detail::read_directives(text)) {
    if (d.key == "vars") {
      if (vars) throw ParseError("duplicate 'vars:' line", d.line, d.key_column);
      vars = detail::parse_name_list(d);
    } else if (d.key == "realvars") {
      if (!vars) throw ParseError("'realvars:' must follow 'vars:'", d.line, d.key_column);
      if (!real_names.empty()) throw ParseError("duplicate 'realvars:' line", d.line, d.key_column);
      real_names = detail::parse_name_pairs(d);
      if (real_names.size() != vars->size()) {
        throw ParseError("realvars must name a pair for every complex variable", d.line, d.rest_column);
      }
    } else if (d.key == "eq") {
      if (!vars) throw ParseError("'eq:' before 'vars:'", d.line, d.key_column);
      equations.push_back(std::move(d));
    } else {
      throw ParseError("unknown directive '" + d.key + "'", d.line, d.key_column);
    }
  }
  if (!vars) throw ParseError("missing 'vars:' line", 1, 1);

  Coordinates coords = [&] {
    try {
      return Coordinates(*vars, real_names);
    } catch (const SemanticError& e) {
      throw ParseError(e.what(), 1, 1);
    }
  }();
  ExpressionEnv env = coordinate_env(coords);
  std::vector<Polynomial> gens;
  for (const auto& eq : equations) gens.push_back(parse_equation(eq.rest, env, {eq.line, eq.rest_column}));
  return RealVariety(std::move(coords), std::move(gens), std::string(text));
}

std::vector<Polynomial> realify(const RealVariety& v) {
  std::vector<Polynomial> out;
  for (const auto& g : v.generators()) out.push_back(v.coordinates().realify(g));
  return out;
}

Polynomial complexify_coords(const Polynomial& g, const Coordinates& coords) { return coords.complexify_coords(g); }

Ideal complexification(const RealVariety& v) { return Ideal(v.context(), v.generators()); }

int real_dim(const RealVariety& v) { return krull_dimension(complexification(v)); }

std::vector<GaussianRational> evaluate_on_diagonal(const RealVariety& v, const Point& p) {
  if (p.size() != v.n()) {
    throw SemanticError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(v.n()));
  }
  std::vector<GaussianRational> at = p.coords;
  for (const auto& c : p.coords) at.push_back(c.conj());
  std::vector<GaussianRational> out;
  for (const auto& g : v.generators()) out.push_back(g.evaluate(at));
  return out;
}

bool contains_point(const RealVariety& v, const Point& p) {
  auto values = evaluate_on_diagonal(v, p);
  return std::all_of(values.begin(), values.end(), [](const GaussianRational& c) { return c.is_zero(); });
}

namespace {

std::vector<std::vector<GaussianRational>> jacobian_rows(const RealVariety& v, const Point& p,
                                                         std::span<const std::size_t> vars) {
  std::vector<GaussianRational> at = p.coords;
  for (const auto& c : p.coords) at.push_back(c.conj());
  std::vector<std::vector<GaussianRational>> rows;
  for (const auto& g : v.generators()) {
    std::vector<GaussianRational> row;
    for (std::size_t var : vars) row.push_back(g.derivative(var).evaluate(at));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

CrRank cr_rank_at(const RealVariety& v, const Point& p) {
  if (!contains_point(v, p)) throw SemanticError("point " + p.to_string() + " is not on the variety");
  auto barred = v.context().antiholomorphic_indices();
  int rank = matrix_rank(jacobian_rows(v, p, barred));
  return {rank, static_cast<int>(v.n()) - rank};
}

int jacobian_rank_at(const RealVariety& v, const Point& p) {
  if (p.size() != v.n()) throw SemanticError("point dimension mismatch");
  std::vector<std::size_t> all(v.context().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return matrix_rank(jacobian_rows(v, p, all));
}

int matrix_rank(std::vector<std::vector<GaussianRational>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    GaussianRational inv = rows[r][c].inverse();
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c].is_zero()) continue;
      GaussianRational factor = rows[k][c] * inv;
      for (std::size_t j = c; j < cols; ++j) rows[k][j] -= factor * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace segrekit
