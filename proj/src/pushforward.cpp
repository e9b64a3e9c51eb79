#include "segrekit/pushforward.hpp"

#include <numeric>
#include <optional>

#include "directives.hpp"
#include "segrekit/errors.hpp"

namespace segrekit {

namespace {

std::vector<bool> holomorphic_mask(const VarContext& ctx) {
  std::vector<bool> mask(ctx.size(), false);
  for (std::size_t idx : ctx.holomorphic_indices()) mask[idx] = true;
  return mask;
}

std::vector<std::size_t> index_range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

}  // namespace

PolyMap::PolyMap(Coordinates source, Coordinates target, std::vector<Polynomial> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (components_.size() != target_.n()) {
    throw SemanticError("map has " + std::to_string(components_.size()) + " components for " +
                        std::to_string(target_.n()) + " target variables");
  }
  const VarContext& src = source_.complex_context();
  for (const auto& name : target_.complex_context().names()) {
    if (src.index_of(name)) throw SemanticError("target variable '" + name + "' clashes with a source variable");
  }
  auto mask = holomorphic_mask(src);
  for (std::size_t j = 0; j < components_.size(); ++j) {
    require_same_context(components_[j].context(), src);
    if (!components_[j].uses_only(mask)) {
      throw SemanticError("component " + std::to_string(j + 1) + " is not holomorphic");
    }
  }
}

std::vector<Polynomial> complexify_map(const PolyMap& F) {
  std::vector<Polynomial> out = F.components();
  for (const auto& f : F.components()) out.push_back(sigma(f));
  return out;
}

PolyMap identity_map(const Coordinates& source, const Coordinates& target) {
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < source.n(); ++j) comps.push_back(Polynomial::variable(source.complex_context(), j));
  return PolyMap(source, target, std::move(comps));
}

PolyMap compose(const PolyMap& F, const PolyMap& G) {
  if (F.source().complex_names() != G.target().complex_names()) {
    throw SemanticError("cannot compose: intermediate coordinates differ");
  }
  const VarContext& ctx = G.source().complex_context();
  Substitution s;
  for (std::size_t j = 0; j < G.target_n(); ++j) s.emplace(G.target().complex_names()[j], G.components()[j]);
  std::vector<Polynomial> comps;
  for (const auto& f : F.components()) comps.push_back(substitute(f, s, ctx));
  return PolyMap(G.source(), F.target(), std::move(comps));
}

Ideal graph_ideal(const Ideal& C, const PolyMap& F) {
  const VarContext& src = F.source().complex_context();
  const VarContext& tgt = F.target().complex_context();
  if (!(C.context() == src)) throw SemanticError("ideal and map have different source coordinates");
  VarContext big = src.concat(tgt);
  std::vector<Polynomial> gens;
  for (const auto& g : C.generators()) gens.push_back(g.rebase(big));
  auto comps = complexify_map(F);
  for (std::size_t j = 0; j < comps.size(); ++j) {
    gens.push_back(Polynomial::variable(big, src.size() + j) - comps[j].rebase(big));
  }
  return Ideal(big, std::move(gens));
}

Ideal image_complexification(const Ideal& C, const PolyMap& F) {
  const std::size_t ns = F.source().complex_context().size();
  const VarContext& tgt = F.target().complex_context();
  Ideal graph = graph_ideal(C, F);
  auto keep = index_range(ns, ns + tgt.size());
  Ideal image = elimination_ideal(graph, keep);
  std::vector<Polynomial> basis;
  for (const auto& g : image.groebner_basis(MonomialOrder::grevlex())) basis.push_back(g.rebase(tgt));
  return Ideal::with_grevlex_basis(tgt, std::move(basis));
}

bool finiteness_certificate(const Ideal& C, const PolyMap& F) {
  auto eliminated = index_range(0, F.source().complex_context().size());
  return finite_over_kept_vars(graph_ideal(C, F), eliminated);
}

DimensionComparison dimension_preserved(const Ideal& C, const PolyMap& F) {
  int src = krull_dimension(C);
  int img = krull_dimension(image_complexification(C, F));
  return {src, img, src == img, finiteness_certificate(C, F)};
}

MapFile parse_map(std::string_view text, const Coordinates& source) {
  std::optional<detail::Directive> targets;
  std::optional<detail::Directive> twins;
  std::optional<detail::Directive> realvars;
  std::vector<detail::Directive> comps;
  std::vector<detail::Directive> checks;

  auto once = [](std::optional<detail::Directive>& slot, detail::Directive& d) {
    if (slot) throw ParseError("duplicate '" + d.key + ":' line", d.line, d.key_column);
    slot = std::move(d);
  };
  for (auto& d : detail::read_directives(text)) {
    if (d.key == "targets") {
      once(targets, d);
    } else if (d.key == "twins") {
      once(twins, d);
    } else if (d.key == "realvars") {
      once(realvars, d);
    } else if (d.key == "comp") {
      comps.push_back(std::move(d));
    } else if (d.key == "check") {
      checks.push_back(std::move(d));
    } else {
      throw ParseError("unknown directive '" + d.key + "'", d.line, d.key_column);
    }
  }
  if (!targets) throw ParseError("missing 'targets:' line", 1, 1);

  auto names = detail::parse_name_list(*targets);
  std::vector<std::string> twin_names;
  if (twins) {
    twin_names = detail::parse_name_list(*twins);
    if (twin_names.size() != names.size()) throw SemanticError("twins must name one slot per target");
  } else {
    for (const auto& n : names) twin_names.push_back(conj_name(n));
  }
  std::vector<std::pair<std::string, std::string>> real_names;
  if (realvars) {
    real_names = detail::parse_name_pairs(*realvars);
    if (real_names.size() != names.size()) throw SemanticError("realvars must name a pair for every target");
  }
  Coordinates target(names, twin_names, real_names);

  ExpressionEnv src_env = coordinate_env(source);
  std::vector<Polynomial> components;
  for (const auto& d : comps) components.push_back(parse_expression(d.rest, src_env, {d.line, d.rest_column}));

  MapFile out{PolyMap(source, target, std::move(components)), {}, {}};
  ExpressionEnv tgt_env = coordinate_env(out.map.target());
  for (const auto& d : checks) {
    out.checks.push_back(parse_equation(d.rest, tgt_env, {d.line, d.rest_column}));
    out.check_sources.push_back(detail::trim(d.rest));
  }
  return out;
}

}  // namespace segrekit
