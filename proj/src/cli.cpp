#include "segrekit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "segrekit/errors.hpp"
#include "segrekit/intrinsic.hpp"
#include "segrekit/segre.hpp"

namespace segrekit {

using nlohmann::json;

namespace {

json strings(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string ideal_text(const std::vector<Polynomial>& basis) {
  if (basis.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < basis.size(); ++k) out += (k ? ", " : "") + basis[k].to_string();
  return out + ")";
}

json variety_inputs(const RealVariety& v) {
  return {{"variables", v.coordinates().complex_names()}, {"equations", strings(v.generators())}};
}

json classification_json(const PointClassification& c) {
  return {{"point", c.point.to_string()},
          {"on_variety", c.on_variety},
          {"segre_dim", c.segre_dim},
          {"generic_segre_dim", c.generic_segre_dim},
          {"degenerate", c.degenerate},
          {"max_nondegenerate", c.max_nondegenerate},
          {"codim_k", c.codim_k},
          {"singular", c.singular},
          {"fiber", strings(c.fiber_basis)},
          {"fiber_ideal", ideal_text(c.fiber_basis)}};
}

std::string singular_caveat(const Point& p, int codim) {
  return "at " + p.to_string() + ": Jacobian rank of the defining polynomials is below the codimension " +
         std::to_string(codim) + "; possible noncoherence, germ-level values may differ from the polynomial ones";
}

void add_sample_summary(Report& r, const SampleClassification& s) {
  r.results["generic_segre_dim"] = s.image_generic;
  json points = json::array();
  for (const auto& c : s.points) {
    points.push_back(classification_json(c));
    if (c.singular) r.caveats.push_back(singular_caveat(c.point, c.codim_k));
  }
  r.results["points"] = std::move(points);
  r.results["sample"] = {{"diagonal_min_segre_dim", s.diagonal_min},
                         {"nondegenerate_on_sample", s.nondegenerate_on_sample},
                         {"generic_values_agree", s.generic_values_agree}};
  if (!s.generic_values_agree) {
    r.caveats.push_back("image-generic Segre dimension " + std::to_string(s.image_generic) +
                        " differs from the smallest Segre dimension " + std::to_string(s.diagonal_min) +
                        " seen at sampled points of X");
  }
}

std::vector<Point> all_points(const QueryPoints& q) {
  std::vector<Point> out;
  if (q.at) out.push_back(*q.at);
  out.insert(out.end(), q.grid.begin(), q.grid.end());
  return out;
}

json point_list(const QueryPoints& q) {
  json out = json::object();
  if (q.at) out["at"] = q.at->to_string();
  if (!q.grid.empty()) {
    json grid = json::array();
    for (const auto& p : q.grid) grid.push_back(p.to_string());
    out["grid"] = std::move(grid);
  }
  return out;
}

json probe_entry_json(const ProbeEntry& e) {
  return {{"point", e.point.to_string()}, {"segre_dim", e.segre_dim},       {"estimate", e.estimate},
          {"singular", e.singular},       {"nondegenerate", e.nondegenerate}, {"violation", e.violation}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void render_text(const json& value, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      if (item.is_primitive()) {
        out << pad << key << ": " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
      } else if (item.empty()) {
        out << pad << key << ": " << (item.is_array() ? "[]" : "{}") << '\n';
      } else {
        out << pad << key << ":\n";
        render_text(item, indent + 1, out);
      }
    }
  } else if (value.is_array()) {
    for (const auto& item : value) {
      if (item.is_primitive()) {
        out << pad << "- " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
      } else {
        out << pad << "-\n";
        render_text(item, indent + 1, out);
      }
    }
  }
}

}  // namespace

json Report::to_json() const {
  std::vector<std::string> unique;
  for (const auto& c : caveats) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
  }
  return {{"command", command}, {"inputs", inputs}, {"results", results}, {"caveats", unique}};
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::text() const {
  std::ostringstream out;
  json j = to_json();
  out << "command: " << command << '\n';
  out << "inputs:\n";
  render_text(j["inputs"], 1, out);
  out << "results:\n";
  render_text(j["results"], 1, out);
  out << "caveats:\n";
  render_text(j["caveats"], 1, out);
  return out.str();
}

Report cmd_complexify(const RealVariety& v) {
  Report r;
  r.command = "complexify";
  r.inputs = variety_inputs(v);
  const int n = static_cast<int>(v.n());
  const int dim = real_dim(v);
  r.results["n"] = n;
  r.results["generators"] = strings(v.generators());
  r.results["ideal"] = ideal_text(v.generators());
  r.results["real_dim"] = dim;
  r.results["codim_k"] = 2 * n - dim;
  r.results["realified"] = strings(realify(v));
  const auto& rc = v.coordinates().real_context().names();
  r.results["real_variables"] = rc;
  if (v.generators().empty()) {
    r.results["note"] = "no equations: the complexification is all of C^" + std::to_string(2 * n) +
                        ", real_dim = 2n = " + std::to_string(2 * n);
  }
  r.caveats.push_back(kPolynomialIdealCaveat);
  return r;
}

Report cmd_segre(const RealVariety& v, const QueryPoints& q) {
  if (!q.at && q.grid.empty()) throw SemanticError("segre needs --at or --grid");
  Report r;
  r.command = "segre";
  r.inputs = variety_inputs(v);
  r.inputs["points"] = point_list(q);
  auto points = all_points(q);
  add_sample_summary(r, classify_sample(v, points));
  r.caveats.insert(r.caveats.begin(), kPolynomialIdealCaveat);
  return r;
}

Report cmd_intrinsic(const RealVariety& v, const QueryPoints& q) {
  if (!q.grid.empty() && !q.at) throw SemanticError("intrinsic --grid needs --at as the base point");
  Report r;
  r.command = "intrinsic";
  r.inputs = variety_inputs(v);
  r.inputs["points"] = point_list(q);
  r.caveats.push_back(kPolynomialIdealCaveat);

  auto result = intrinsic_ideal(complexification(v));
  r.results["n"] = v.n();
  r.results["generators"] = strings(result.basis());
  r.results["ideal"] = ideal_text(result.basis());
  r.results["dim"] = result.dim;
  r.results["generic"] = result.generic;

  if (q.at) {
    auto f = intrinsic_dim_formula_check(v, *q.at);
    r.results["formula"] = {{"point", f.point.to_string()},
                            {"lhs", f.lhs},
                            {"rhs", f.rhs},
                            {"equal", f.equal},
                            {"segre_dim", f.segre_dim},
                            {"nondegenerate", f.nondegenerate}};
    if (!f.nondegenerate) {
      r.caveats.push_back("at " + f.point.to_string() +
                          ": Segre degenerate, the dimension formula is not expected to hold");
    }
    SegreAnalysis analysis(v);
    if (q.grid.empty() && analysis.classify(*q.at).singular) {
      r.caveats.push_back(singular_caveat(*q.at, analysis.codim_k()));
    }
  }
  if (q.at && !q.grid.empty()) {
    auto probe = upper_semicontinuity_probe(v, *q.at, q.grid);
    json seq = json::array();
    for (const auto& e : probe.sequence) seq.push_back(probe_entry_json(e));
    r.results["probe"] = {{"base", probe_entry_json(probe.base)},
                          {"sequence", std::move(seq)},
                          {"global_dim", probe.global_dim},
                          {"semicontinuous", probe.semicontinuous}};
    r.caveats.insert(r.caveats.end(), probe.caveats.begin(), probe.caveats.end());
  }
  return r;
}

Report cmd_pushforward(const RealVariety& v, const MapFile& map) {
  Report r;
  r.command = "pushforward";
  r.inputs = variety_inputs(v);
  r.inputs["map"] = {{"targets", map.map.target().complex_names()}, {"components", strings(map.map.components())}};
  r.caveats.push_back(kPolynomialIdealCaveat);
  r.caveats.push_back("images are Zariski closures; finiteness of the map is assumed unless certified");

  Ideal C = complexification(v);
  Ideal image = image_complexification(C, map.map);
  const auto& basis = image.groebner_basis(MonomialOrder::grevlex());
  auto dims = dimension_preserved(C, map.map);
  r.results["target_variables"] = map.map.target().complex_context().names();
  r.results["complexified_map"] = strings(complexify_map(map.map));
  r.results["generators"] = strings(basis);
  r.results["ideal"] = ideal_text(basis);
  r.results["source_dim"] = dims.source_dim;
  r.results["image_dim"] = dims.image_dim;
  r.results["dimension_preserved"] = dims.equal;
  r.results["finite"] = dims.finite;
  json checks = json::array();
  for (std::size_t k = 0; k < map.checks.size(); ++k) {
    checks.push_back({{"expression", map.check_sources[k]},
                      {"complexified", map.checks[k].to_string()},
                      {"member", image.contains(map.checks[k])}});
  }
  r.results["checks"] = std::move(checks);
  return r;
}

Report cmd_classify(const RealVariety& v, const QueryPoints& q) {
  if (!q.at && q.grid.empty()) throw SemanticError("classify needs --at or --grid");
  Report r;
  r.command = "classify";
  r.inputs = variety_inputs(v);
  r.inputs["points"] = point_list(q);
  auto points = all_points(q);
  add_sample_summary(r, classify_sample(v, points));
  const int lhs = intrinsic_ideal(complexification(v)).dim;
  const int rd = real_dim(v);
  r.results["intrinsic_dim"] = lhs;
  r.results["real_dim"] = rd;
  for (std::size_t k = 0; k < points.size(); ++k) {
    json& entry = r.results["points"][k];
    if (!entry["on_variety"].get<bool>()) {
      entry["cr_rank"] = nullptr;
      entry["formula"] = nullptr;
      continue;
    }
    auto cr = cr_rank_at(v, points[k]);
    entry["cr_rank"] = {{"rank", cr.rank}, {"cr_dimension", cr.cr_dimension}};
    const int rhs = rd - entry["segre_dim"].get<int>();
    entry["formula"] = {{"lhs", lhs}, {"rhs", rhs}, {"equal", lhs == rhs}};
  }
  r.caveats.insert(r.caveats.begin(), kPolynomialIdealCaveat);
  r.caveats.push_back("CR dimension n - rank is meaningful only at CR regular points");
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Segre varieties, complexifications and intrinsic complexifications", "segrekit"};
  app.require_subcommand(1);
  bool as_json = false;
  std::size_t max_pairs = 100000;
  app.add_flag("--json", as_json, "emit JSON instead of text");
  app.add_option("--max-pairs", max_pairs, "Buchberger pair budget, 0 for unlimited")->capture_default_str();

  std::string file;
  std::string map_file;
  std::string at_text;
  std::string grid_text;
  auto with_points = [&](CLI::App* sub) {
    sub->add_option("file", file, "variety file")->required();
    sub->add_option("--at", at_text, "point as comma-separated Gaussian rationals");
    sub->add_option("--grid", grid_text, "points separated by ';'");
    return sub;
  };
  auto* complexify = app.add_subcommand("complexify", "complexification ideal and real dimension");
  complexify->add_option("file", file, "variety file")->required();
  auto* segre = with_points(app.add_subcommand("segre", "Segre fibers and degeneracy"));
  auto* intrinsic = with_points(app.add_subcommand("intrinsic", "intrinsic complexification"));
  auto* classify = with_points(app.add_subcommand("classify", "pointwise classification"));
  auto* pushforward = app.add_subcommand("pushforward", "image complexification under a polynomial map");
  pushforward->add_option("file", file, "variety file")->required();
  pushforward->add_option("map", map_file, "map file")->required();
  for (auto* sub : {complexify, segre, intrinsic, classify, pushforward}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseFailure;
  }

  std::string where = file;
  try {
    RealVariety v = parse_equations(read_file(file));
    QueryPoints q;
    where = "--at";
    if (!at_text.empty()) q.at = parse_point(at_text, v.n());
    where = "--grid";
    if (!grid_text.empty()) q.grid = parse_point_list(grid_text, v.n());
    where = map_file;

    ScopedPairLimit guard(max_pairs);
    Report report;
    if (app.got_subcommand(complexify)) {
      report = cmd_complexify(v);
    } else if (app.got_subcommand(segre)) {
      report = cmd_segre(v, q);
    } else if (app.got_subcommand(intrinsic)) {
      report = cmd_intrinsic(v, q);
    } else if (app.got_subcommand(classify)) {
      report = cmd_classify(v, q);
    } else {
      report = cmd_pushforward(v, parse_map(read_file(map_file), v.coordinates()));
    }
    report.inputs["file"] = file;
    if (!map_file.empty()) report.inputs["map_file"] = map_file;
    out << (as_json ? report.json_text() : report.text());
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << where << ":" << e.line() << ":" << e.column() << ": " << e.message() << '\n';
    return kParseFailure;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
    return kSemanticFailure;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimitFailure;
  }
}

}  // namespace segrekit
