#include <random>

#include "doctest.h"
#include "segrekit/errors.hpp"
#include "segrekit/segre.hpp"
#include "test_support.hpp"

using namespace segrekit;
using namespace segrekit::testing;

namespace {

using G = GaussianRational;

Point pt(std::initializer_list<GaussianRational> c) { return Point{std::vector<GaussianRational>(c)}; }

RealVariety load(const char* file) { return parse_equations(read_data(file)); }

std::vector<std::string> basis_strings(const SegreFiber& f) {
  std::vector<std::string> out;
  for (const auto& g : f.basis()) out.push_back(g.to_string());
  return out;
}

/// All fiber generators vanish at z = p.
bool in_own_fiber(const Ideal& C, const Point& p) {
  SegreFiber f = segre_fiber(C, p);
  for (const auto& g : f.ideal.generators()) {
    if (!g.evaluate(p.coords).is_zero()) return false;
  }
  return true;
}

/// q in Sigma_p: every generator of C vanishes at (q, conj p).
bool in_segre(const Ideal& C, const Point& q, const Point& p) {
  std::vector<GaussianRational> at = q.coords;
  for (const auto& c : p.coords) at.push_back(c.conj());
  for (const auto& g : C.generators()) {
    if (!g.evaluate(at).is_zero()) return false;
  }
  return true;
}

Point random_point(std::mt19937& rng, std::size_t n) {
  Point p;
  for (std::size_t j = 0; j < n; ++j) p.coords.push_back(random_point_coordinate(rng));
  return p;
}

const char* const kExamples[] = {"cone.var",      "w_abs_z2.var",         "w_z2_plus.var",
                                 "cartan_umbrella.var", "abs_z4_z6.var", "noncoherent_cone.var",
                                 "bihomogenized_cone.var", "real_line.var", "real_plane.var"};

/// Rational points known to lie on each example.
std::vector<Point> known_points(const std::string& file) {
  G i = G::i();
  if (file == "cone.var") return {pt({0, 0}), pt({1, 1}), pt({i, 1}), pt({2, G(0, 2)}), pt({G(mpq_class(3, 5), mpq_class(4, 5)), -1})};
  if (file == "w_abs_z2.var") return {pt({0, 0}), pt({1, 1}), pt({G(1, 1), 2}), pt({2, 4})};
  if (file == "w_z2_plus.var") return {pt({0, 0}), pt({1, 2}), pt({i, -2}), pt({G(1, 1), 0})};
  if (file == "cartan_umbrella.var") return {pt({0, 0}), pt({0, 1}), pt({0, G(mpq_class(1, 2), 3)}), pt({1, 1}), pt({G(1, 1), G(mpq_class(1, 2), 5)})};
  if (file == "abs_z4_z6.var") return {pt({0, 0, 0}), pt({1, 1, 1}), pt({G(1, 1), 4, 8})};
  if (file == "noncoherent_cone.var") return {pt({0, 0}), pt({1, 1}), pt({2, 2}), pt({G(1, 1), G(1, 1)}), pt({0, 1}), pt({0, i})};
  if (file == "bihomogenized_cone.var") return {pt({0, 0, 0}), pt({0, 0, 1}), pt({1, 0, 1})};
  if (file == "real_line.var") return {pt({0}), pt({3}), pt({G(mpq_class(-1, 2))})};
  if (file == "real_plane.var") return {pt({0, 0}), pt({1, -2})};
  return {};
}

}  // namespace

TEST_CASE("segre_fiber examples") {
  auto cone = complexification(load("cone.var"));
  auto f0 = segre_fiber(cone, pt({0, 0}));
  CHECK(f0.ideal.is_zero_ideal());
  CHECK(f0.dim == 2);
  auto f1 = segre_fiber(cone, pt({1, 1}));
  CHECK(basis_strings(f1) == std::vector<std::string>{"z - w"});
  CHECK(f1.dim == 1);

  auto m = complexification(load("w_abs_z2.var"));
  auto m0 = segre_fiber(m, pt({0, 0}));
  CHECK(basis_strings(m0) == std::vector<std::string>{"w"});
  CHECK(m0.dim == 1);

  auto umbrella = complexification(load("cartan_umbrella.var"));
  auto u0 = segre_fiber(umbrella, pt({0, 0}));
  CHECK(basis_strings(u0) == std::vector<std::string>{"z^3"});
  CHECK(u0.dim == 1);

  CHECK_THROWS_AS(segre_fiber(m, pt({1})), SemanticError);
  VarContext plain(std::vector<std::string>{"z"});
  CHECK_THROWS_AS(segre_fiber(Ideal(plain), pt({1})), SemanticError);
}

TEST_CASE("w = z conj z: fibers off the origin are single points") {
  auto v = load("w_abs_z2.var");
  auto C = complexification(v);
  const std::pair<G, G> samples[] = {{G(1), G(1)}, {G(1, 1), G(2)}, {G(2), G(4)}};
  for (const auto& [alpha, beta] : samples) {
    Point p = pt({alpha.conj(), beta.conj()});
    REQUIRE(contains_point(v, p));
    auto f = segre_fiber(C, p);
    CHECK(f.dim == 0);
    const VarContext& ctx = f.ideal.context();
    auto z = Polynomial::variable(ctx, "z");
    auto w = Polynomial::variable(ctx, "w");
    CHECK(f.ideal.contains(z - Polynomial::constant(ctx, beta * alpha.inverse())));
    CHECK(f.ideal.contains(w - Polynomial::constant(ctx, beta)));
  }
}

TEST_CASE("generic_segre_dim") {
  CHECK(generic_segre_dim(complexification(load("cone.var"))) == 1);
  // The xi-projection of this complexification is dominant, so the generic
  // fiber is a point even though the fiber over 0 is a line.
  CHECK(generic_segre_dim(complexification(load("w_abs_z2.var"))) == 0);
  CHECK(generic_segre_dim(complexification(load("real_line.var"))) == 0);
  auto ctx = VarContext::paired({"z"}, {"xi_z"});
  CHECK(generic_segre_dim(Ideal(ctx, {Polynomial::constant(ctx, 1)})) == -1);
}

TEST_CASE("classify_point") {
  auto cone = load("cone.var");
  auto c0 = classify_point(cone, pt({0, 0}));
  CHECK(c0.on_variety);
  CHECK(c0.segre_dim == 2);
  CHECK(c0.generic_segre_dim == 1);
  CHECK(c0.degenerate);
  CHECK_FALSE(c0.max_nondegenerate);
  CHECK(c0.codim_k == 1);
  CHECK(c0.singular);
  auto c1 = classify_point(cone, pt({1, 1}));
  CHECK(c1.segre_dim == 1);
  CHECK_FALSE(c1.degenerate);
  CHECK(c1.max_nondegenerate);
  CHECK_FALSE(c1.singular);

  auto nc = load("noncoherent_cone.var");
  CHECK(classify_point(nc, pt({0, 0})).segre_dim == 2);
  CHECK(classify_point(nc, pt({1, 1})).segre_dim == 1);

  auto off = classify_point(cone, pt({1, 0}));
  CHECK_FALSE(off.on_variety);
  CHECK_FALSE(off.singular);
}

TEST_CASE("w = z^2 + conj(z)^2 is maximally Segre nondegenerate on the sample") {
  auto v = load("w_z2_plus.var");
  for (const auto& p : known_points("w_z2_plus.var")) {
    CAPTURE(p.to_string());
    auto c = classify_point(v, p);
    CHECK(c.on_variety);
    CHECK(c.segre_dim == 0);
    CHECK(c.codim_k == 2);
    CHECK(c.max_nondegenerate);
  }
}

TEST_CASE("bihomogenized cone fibers") {
  auto C = complexification(load("bihomogenized_cone.var"));
  auto f0 = segre_fiber(C, pt({0, 0, 0}));
  CHECK(basis_strings(f0) == std::vector<std::string>{"z1^3"});
  CHECK(f0.dim == 2);
  auto f1 = segre_fiber(C, pt({0, 0, 1}));
  CHECK(basis_strings(f1) == std::vector<std::string>{"z1^3 - z1^2 + z2^2"});
  CHECK(f1.dim == 2);
}

TEST_CASE("check_finite_projection") {
  auto ctx = VarContext::paired({"z", "w"}, {"xi_z", "xi_w"});
  auto z = Polynomial::variable(ctx, "z"), w = Polynomial::variable(ctx, "w");
  auto xz = Polynomial::variable(ctx, "xi_z"), xw = Polynomial::variable(ctx, "xi_w");
  Ideal plus(ctx, {w - z * z - xz * xz, xw - z * z - xz * xz});
  CHECK(check_finite_projection(plus, {}));
  Ideal cone(ctx, {z * xz - w * xw});
  const std::size_t keep_xz[] = {2};
  CHECK_FALSE(check_finite_projection(cone, keep_xz));
  const std::size_t bad[] = {0};
  CHECK_THROWS_AS(check_finite_projection(cone, bad), SemanticError);

  auto lctx = VarContext::paired({"z"}, {"xi_z"});
  Ideal line(lctx, {Polynomial::variable(lctx, 0) - Polynomial::variable(lctx, 1)});
  CHECK(check_finite_projection(line, {}));
}

TEST_CASE("p in X iff p in its own Segre variety") {
  std::mt19937 rng(41);
  for (const char* file : kExamples) {
    CAPTURE(std::string(file));
    auto v = load(file);
    auto C = complexification(v);
    for (const auto& p : known_points(file)) {
      REQUIRE(contains_point(v, p));
      CHECK(in_own_fiber(C, p));
    }
    for (int trial = 0; trial < 100; ++trial) {
      Point p = random_point(rng, v.n());
      CHECK(contains_point(v, p) == in_own_fiber(C, p));
    }
  }
}

TEST_CASE("Hermitian symmetry of the Segre relation") {
  std::mt19937 rng(43);
  for (const char* file : kExamples) {
    CAPTURE(std::string(file));
    auto v = load(file);
    auto C = complexification(v);
    for (int trial = 0; trial < 50; ++trial) {
      Point p = random_point(rng, v.n());
      Point q = random_point(rng, v.n());
      CHECK(in_segre(C, q, p) == in_segre(C, p, q));
    }
  }
  // Pairs that are related: on the cone q = s*(conj p_w, conj p_z) lies in Sigma_p.
  auto C = complexification(load("cone.var"));
  for (int trial = 0; trial < 50; ++trial) {
    Point p = random_point(rng, 2);
    G s = random_point_coordinate(rng);
    Point q = pt({s * p.coords[1].conj(), s * p.coords[0].conj()});
    REQUIRE(in_segre(C, q, p));
    CHECK(in_segre(C, p, q));
  }
  auto L = complexification(load("real_line.var"));
  for (int trial = 0; trial < 20; ++trial) {
    Point p = random_point(rng, 1);
    REQUIRE(in_segre(L, p.conj(), p));
    CHECK(in_segre(L, p, p.conj()));
  }
}

TEST_CASE("fiber dimension is upper semicontinuous over the xi-image") {
  for (const char* file : kExamples) {
    CAPTURE(std::string(file));
    auto v = load(file);
    auto C = complexification(v);
    int generic = generic_segre_dim(C);
    Ideal image = elimination_ideal(C, C.context().antiholomorphic_indices());
    for (const auto& p : known_points(file)) {
      bool in_image = true;
      for (const auto& g : image.generators()) in_image = in_image && g.evaluate(p.conj().coords).is_zero();
      if (!in_image) continue;
      CHECK(segre_fiber(C, p).dim >= generic);
    }
  }
}

TEST_CASE("real hypersurfaces have Segre dimension n-1 at regular points") {
  for (const char* file : {"cone.var", "cartan_umbrella.var", "noncoherent_cone.var", "bihomogenized_cone.var"}) {
    CAPTURE(std::string(file));
    auto v = load(file);
    SegreAnalysis a(v);
    REQUIRE(a.codim_k() == 1);
    int regular = 0;
    for (const auto& p : known_points(file)) {
      auto c = a.classify(p);
      if (c.singular) continue;
      ++regular;
      CHECK(c.segre_dim == static_cast<int>(v.n()) - 1);
    }
    CHECK(regular > 0);
  }
}

TEST_CASE("substitution commutes with elimination") {
  std::mt19937 rng(47);
  for (const char* file : kExamples) {
    CAPTURE(std::string(file));
    auto v = load(file);
    auto C = complexification(v);
    const VarContext& ctx = C.context();
    auto barred = ctx.antiholomorphic_indices();
    std::vector<Point> points = known_points(file);
    for (int k = 0; k < 3; ++k) points.push_back(random_point(rng, v.n()));
    for (const auto& p : points) {
      auto fiber = segre_fiber(C, p);
      std::vector<Polynomial> gens = C.generators();
      for (std::size_t j = 0; j < v.n(); ++j) {
        gens.push_back(Polynomial::variable(ctx, barred[j]) - Polynomial::constant(ctx, p.coords[j].conj()));
      }
      Ideal eliminated = elimination_ideal(Ideal(ctx, gens), ctx.holomorphic_indices());
      for (const auto& g : eliminated.generators()) CHECK(fiber.ideal.contains(g.rebase(fiber.ideal.context())));
      for (const auto& g : fiber.ideal.generators()) CHECK(eliminated.contains(g.rebase(eliminated.context())));
      CHECK(krull_dimension(eliminated) == fiber.dim);
    }
  }
}

TEST_CASE("classify_sample") {
  auto m = load("w_abs_z2.var");
  auto points = known_points("w_abs_z2.var");
  points.push_back(pt({1, 0}));
  auto s = classify_sample(m, points);
  REQUIRE(s.points.size() == points.size());
  CHECK(s.image_generic == 0);
  CHECK(s.diagonal_min == 0);
  CHECK_FALSE(s.nondegenerate_on_sample);
  CHECK(s.generic_values_agree);
  for (std::size_t k = 0; k < points.size(); ++k) {
    auto c = classify_point(m, points[k]);
    CHECK(s.points[k].point == points[k]);
    CHECK(s.points[k].segre_dim == c.segre_dim);
    CHECK(s.points[k].fiber_basis == c.fiber_basis);
  }

  std::vector<Point> off_origin = {pt({1, 1}), pt({G::i(), 1})};
  auto cone = classify_sample(load("cone.var"), off_origin);
  CHECK(cone.nondegenerate_on_sample);
  CHECK(cone.diagonal_min == 1);
  CHECK(cone.generic_values_agree);

  auto none = classify_sample(load("cone.var"), std::vector<Point>{pt({1, 0})});
  CHECK(none.diagonal_min == -1);
  CHECK(none.generic_values_agree);
}

TEST_CASE("pair limits apply inside classify_sample workers") {
  ScopedPairLimit guard(1);
  auto points = known_points("abs_z4_z6.var");
  CHECK_THROWS_AS(classify_sample(load("abs_z4_z6.var"), points), LimitExceeded);
}
