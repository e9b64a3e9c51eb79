#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "segrekit/cli.hpp"
#include "test_support.hpp"

using namespace segrekit;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* file) { return std::string(SEGREKIT_DATA_DIR) + "/" + file; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("segrekit_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool any_contains(const json& caveats, const std::string& needle) {
  for (const auto& c : caveats) {
    if (c.get<std::string>().find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("complexify") {
  auto cone = run({"--json", "complexify", data("cone.var")});
  REQUIRE(cone.code == 0);
  auto r = cone.report();
  CHECK(r["command"] == "complexify");
  CHECK(r["results"]["generators"] == json::array({"z*xi_z - w*xi_w"}));
  CHECK(r["results"]["real_dim"] == 3);
  CHECK(r["results"]["realified"] == json::array({"x1^2 + y1^2 - x2^2 - y2^2"}));

  auto m = run({"--json", "complexify", data("w_abs_z2.var")}).report();
  CHECK(m["results"]["generators"].size() == 2);
  CHECK(m["results"]["real_dim"] == 2);

  auto empty = run({"--json", "complexify", temp_file("empty.var", "vars: z, w\n")}).report();
  CHECK(empty["results"]["real_dim"] == 4);
  CHECK(empty["results"]["note"].get<std::string>().find("real_dim = 2n = 4") != std::string::npos);
}

TEST_CASE("segre") {
  auto at0 = run({"--json", "segre", data("cone.var"), "--at", "0,0"}).report();
  auto p0 = at0["results"]["points"][0];
  CHECK(p0["segre_dim"] == 2);
  CHECK(p0["degenerate"] == true);
  auto at1 = run({"--json", "segre", data("cone.var"), "--at", "1,1"}).report();
  auto p1 = at1["results"]["points"][0];
  CHECK(p1["segre_dim"] == 1);
  CHECK(p1["degenerate"] == false);
  CHECK(p1["fiber"] == json::array({"z - w"}));

  auto u = run({"--json", "segre", data("cartan_umbrella.var"), "--at", "0,0"}).report();
  CHECK(u["results"]["points"][0]["fiber"] == json::array({"z^3"}));
  CHECK(u["results"]["points"][0]["fiber_ideal"] == "(z^3)");
  CHECK(u["results"]["points"][0]["segre_dim"] == 1);

  auto grid = run({"--json", "segre", data("w_abs_z2.var"), "--grid", "0,0; 1,1; 1+i,2"}).report();
  CHECK(grid["results"]["points"].size() == 3);
  CHECK(grid["results"]["sample"]["nondegenerate_on_sample"] == false);
  CHECK(grid["results"]["sample"]["diagonal_min_segre_dim"] == 0);

  CHECK(run({"segre", data("cone.var")}).code == kSemanticFailure);
}

TEST_CASE("intrinsic") {
  auto r = run({"--json", "intrinsic", data("abs_z4_z6.var")}).report();
  auto gens = r["results"]["generators"];
  CHECK(std::find(gens.begin(), gens.end(), "w1^3 - w2^2") != gens.end());
  CHECK(r["results"]["dim"] == 2);

  auto m = run({"--json", "intrinsic", data("w_abs_z2.var")}).report();
  CHECK(m["results"]["ideal"] == "(0)");
  CHECK(m["results"]["generic"] == true);
  auto line = run({"--json", "intrinsic", data("real_line.var")}).report();
  CHECK(line["results"]["ideal"] == "(0)");
  CHECK(line["results"]["generic"] == true);

  auto f = run({"--json", "intrinsic", data("cartan_umbrella.var"), "--at", "0,0"}).report();
  CHECK(f["results"]["formula"]["lhs"] == 2);
  CHECK(f["results"]["formula"]["rhs"] == 2);
  CHECK(f["results"]["formula"]["equal"] == true);

  auto probe = run({"--json", "intrinsic", data("cartan_umbrella.var"), "--at", "0,0", "--grid", "0,1;0,1/2;0,1/4"});
  REQUIRE(probe.code == 0);
  auto caveats = probe.report()["caveats"];
  CHECK(any_contains(caveats, "at 0,1/2: Jacobian rank"));
  CHECK(any_contains(caveats, "noncoherence"));

  auto off = run({"intrinsic", data("cone.var"), "--at", "1,0"});
  CHECK(off.code == kSemanticFailure);
  CHECK(off.err.find("not on the variety") != std::string::npos);
  CHECK(run({"intrinsic", data("cone.var"), "--grid", "1,1"}).code == kSemanticFailure);
}

TEST_CASE("pushforward") {
  auto sq = run({"--json", "pushforward", data("real_line.var"), data("square.map")}).report();
  CHECK(sq["results"]["generators"] == json::array({"w - omega"}));
  CHECK(sq["results"]["source_dim"] == 1);
  CHECK(sq["results"]["image_dim"] == 1);

  auto wh = run({"--json", "pushforward", data("real_plane.var"), data("whitney.map")}).report();
  CHECK(wh["results"]["source_dim"] == 2);
  CHECK(wh["results"]["image_dim"] == 2);
  for (const auto& c : wh["results"]["checks"]) CHECK(c["member"] == true);

  auto id = run({"--json", "pushforward", data("cone.var"), temp_file("id.map", "targets: a, b\ncomp: z\ncomp: w\n")});
  REQUIRE(id.code == 0);
  CHECK(id.report()["results"]["generators"] == json::array({"a*xi_a - b*xi_b"}));

  auto mismatch = run({"pushforward", data("cone.var"), temp_file("bad.map", "targets: a, b\ncomp: z\n")});
  CHECK(mismatch.code == kSemanticFailure);
}

TEST_CASE("classify") {
  auto r = run({"--json", "classify", data("w_abs_z2.var"), "--grid", "0,0;1,1;1,0"}).report();
  auto pts = r["results"]["points"];
  REQUIRE(pts.size() == 3);
  CHECK(pts[0]["cr_rank"]["rank"] == 1);
  CHECK(pts[0]["cr_rank"]["cr_dimension"] == 1);
  CHECK(pts[1]["cr_rank"]["rank"] == 2);
  CHECK(pts[1]["cr_rank"]["cr_dimension"] == 0);
  CHECK(pts[2]["on_variety"] == false);
  CHECK(pts[2]["cr_rank"].is_null());
}

TEST_CASE("exit codes") {
  auto parse = run({"complexify", temp_file("broken.var", "vars: z\neq: sin(z)\n")});
  CHECK(parse.code == kParseFailure);
  CHECK(parse.err.find(":2:5:") != std::string::npos);
  CHECK(run({"segre", data("cone.var"), "--at", "1,2,3"}).code == kSemanticFailure);
  CHECK(run({"segre", data("cone.var"), "--at", "1,("}).code == kParseFailure);
  CHECK(run({"complexify", "/nonexistent/file.var"}).code == kSemanticFailure);
  CHECK(run({"--bogus", "complexify", data("cone.var")}).code == kParseFailure);
  CHECK(run({}).code == kParseFailure);
  CHECK(run({"--help"}).code == kOk);
  auto limited = run({"--max-pairs", "1", "intrinsic", data("abs_z4_z6.var")});
  CHECK(limited.code == kLimitFailure);
  CHECK(limited.err.find("limit") != std::string::npos);
}

TEST_CASE("text output") {
  auto t = run({"segre", data("cone.var"), "--at", "0,0"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("command: segre") == 0);
  CHECK(t.out.find("segre_dim: 2") != std::string::npos);
  CHECK(t.out.find("caveats:\n  - polynomial-ideal semantics") != std::string::npos);
}

TEST_CASE("identical runs produce identical bytes") {
  std::vector<std::vector<std::string>> cmds = {
      {"--json", "classify", data("noncoherent_cone.var"), "--grid", "0,0;1,1;2,2;0,1;1+i,1+i;0,i"},
      {"--json", "pushforward", data("real_plane.var"), data("whitney.map")},
      {"--json", "intrinsic", data("abs_z4_z6.var")},
  };
  for (const auto& cmd : cmds) {
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("printed generators re-parse to the same polynomials") {
  const char* files[] = {"cone.var", "w_abs_z2.var", "cartan_umbrella.var", "abs_z4_z6.var",
                         "noncoherent_cone.var", "bihomogenized_cone.var"};
  for (const char* file : files) {
    CAPTURE(std::string(file));
    auto v = parse_equations(testing::read_data(file));
    auto r = run({"--json", "complexify", data(file)}).report();
    std::string header = "vars: ";
    for (std::size_t j = 0; j < v.n(); ++j) header += (j ? ", " : "") + v.coordinates().complex_names()[j];
    const auto& gens = r["results"]["generators"];
    REQUIRE(gens.size() == v.generators().size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto again = parse_equations(header + "\neq: " + gens[k].get<std::string>() + "\n");
      CHECK(again.generators()[0] == v.generators()[k]);
    }
  }
}
