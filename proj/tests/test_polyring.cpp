#include <algorithm>
#include <random>

#include "doctest.h"
#include "segrekit/errors.hpp"
#include "segrekit/polynomial.hpp"
#include "test_support.hpp"

using namespace segrekit;
using segrekit::testing::random_coefficient;
using segrekit::testing::random_polynomial;

namespace {

const GaussianRational I = GaussianRational::i();

GaussianRational q(long a, long b) { return {mpq_class(a, b), 0}; }

}  // namespace

TEST_CASE("gaussian rationals are exact and canonical") {
  GaussianRational half(mpq_class(2, 4));
  CHECK(half.re() == mpq_class(1, 2));
  CHECK(half.to_string() == "1/2");
  CHECK((I * I) == GaussianRational(-1));
  CHECK(GaussianRational(mpq_class(1, 2), mpq_class(-3, 4)).to_string() == "1/2-3/4*i");
  CHECK(GaussianRational(0, -1).to_string() == "-i");
  CHECK((GaussianRational(1, 1) / GaussianRational(1, -1)) == I);
  CHECK_THROWS_AS(GaussianRational{}.inverse(), SemanticError);
}

TEST_CASE("conjugation is an involutive ring homomorphism") {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto c = random_coefficient(rng);
    auto d = random_coefficient(rng);
    CHECK(c.conj().conj() == c);
    CHECK((c * d).conj() == c.conj() * d.conj());
    CHECK((c + d).conj() == c.conj() + d.conj());
  }
}

TEST_CASE("add") {
  VarContext ctx({"z", "w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  CHECK(add(z + I * w, z - I * w) == GaussianRational(2) * z);
  CHECK(add(z, Polynomial(ctx)) == z);
  CHECK(add(q(1, 2) * z, q(1, 3) * z) == q(5, 6) * z);
  CHECK(add(z, -z).is_zero());
  CHECK(add(z, -z).terms().empty());
  CHECK_THROWS_AS(add(z, Polynomial::variable(VarContext({"z"}), "z")), SemanticError);
}

TEST_CASE("mul") {
  VarContext ctx({"z", "w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  CHECK(mul(z - w, z + w) == z * z - w * w);
  auto i_poly = Polynomial::constant(ctx, I);
  CHECK(mul(i_poly, i_poly) == Polynomial::constant(ctx, -1));
  auto f = z * z * w + I * z - q(3, 7) * w;
  CHECK(mul(f, Polynomial::constant(ctx, 1)) == f);
  CHECK_THROWS_AS(mul(z, Polynomial::variable(VarContext({"w", "z"}), "z")), SemanticError);
}

TEST_CASE("leading_term") {
  VarContext ctx({"z", "w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  auto grevlex = MonomialOrder::grevlex();
  auto lex = MonomialOrder::lex();
  CHECK(leading_term(z * z + z * w + w * w, grevlex).monomial == Monomial({2, 0}));
  CHECK(leading_term(z + w.pow(3), lex).monomial == Monomial({1, 0}));
  CHECK(leading_term(z + w.pow(3), grevlex).monomial == Monomial({0, 3}));
  CHECK_THROWS_AS(leading_term(Polynomial(ctx), grevlex), SemanticError);
}

TEST_CASE("block order puts any first-block monomial above the rest") {
  auto ord = MonomialOrder::block({true, false, false});
  CHECK(ord.greater(Monomial({1, 0, 0}), Monomial({0, 5, 7})));
  CHECK(ord.greater(Monomial({1, 1, 0}), Monomial({1, 0, 0})));
  CHECK(ord.compare(Monomial({2, 0, 0}), Monomial({1, 3, 0})) > 0);
  CHECK(MonomialOrder::block_first(1, 3) == ord);
}

TEST_CASE("substitute") {
  VarContext ctx = VarContext::paired({"z", "w"}, {"xi_z", "xi_w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  auto xz = Polynomial::variable(ctx, "xi_z");
  auto xw = Polynomial::variable(ctx, "xi_w");
  auto f = z * xz - w * xw;
  CHECK(substitute(f, {{"xi_z", GaussianRational(1)}, {"xi_w", GaussianRational(1)}}) == z - w);
  CHECK(substitute(f, {{"xi_z", GaussianRational(0)}, {"xi_w", GaussianRational(0)}}).is_zero());
  CHECK(substitute(f, {{"z", z}, {"w", w}, {"xi_z", xz}, {"xi_w", xw}}) == f);
  CHECK(substitute(f, {}) == f);
  CHECK_THROWS_AS(substitute(f, {{"q", GaussianRational(1)}}), SemanticError);

  SUBCASE("into a smaller context") {
    VarContext zonly({"z", "w"});
    auto r = substitute(f, {{"xi_z", GaussianRational(2)}, {"xi_w", I}}, zonly);
    auto zz = Polynomial::variable(zonly, "z");
    auto ww = Polynomial::variable(zonly, "w");
    CHECK(r == GaussianRational(2) * zz - I * ww);
  }
}

TEST_CASE("exponent overflow is a limit error") {
  VarContext ctx({"z"});
  Monomial big = Monomial::variable(1, 0, (1U << 31) - 1);
  CHECK_THROWS_AS(big * Monomial::variable(1, 0, 1), LimitExceeded);
}

TEST_CASE("canonical printing") {
  VarContext ctx = VarContext::paired({"z", "w"}, {"xi_z", "xi_w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  auto xz = Polynomial::variable(ctx, "xi_z");
  auto xw = Polynomial::variable(ctx, "xi_w");
  CHECK((z * xz - w * xw).to_string() == "z*xi_z - w*xi_w");
  CHECK((w - z * xz).to_string() == "-z*xi_z + w");
  CHECK((q(-1, 8) * z.pow(3)).to_string() == "-1/8*z^3");
  CHECK((GaussianRational(1, 2) * z + I * w - Polynomial::constant(ctx, I)).to_string() == "(1+2*i)*z + i*w - i");
  CHECK(Polynomial(ctx).to_string() == "0");
}

TEST_CASE("ring axioms on random polynomials") {
  VarContext ctx({"a", "b", "c"});
  std::mt19937 rng(1234);
  for (int k = 0; k < 60; ++k) {
    auto f = random_polynomial(ctx, rng, 3, 5);
    auto g = random_polynomial(ctx, rng, 3, 5);
    auto h = random_polynomial(ctx, rng, 3, 5);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f + g == g + f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f - f).is_zero());
    CHECK((f * g).to_string() == (g * f).to_string());
  }
}

TEST_CASE("term insertion order does not affect the result") {
  VarContext ctx({"a", "b"});
  std::mt19937 rng(99);
  for (int k = 0; k < 30; ++k) {
    auto f = random_polynomial(ctx, rng, 4, 8);
    std::vector<Polynomial> parts;
    for (const auto& [m, c] : f.terms()) parts.push_back(Polynomial::monomial(ctx, m, c));
    std::shuffle(parts.begin(), parts.end(), rng);
    Polynomial g(ctx);
    for (const auto& p : parts) g += p;
    CHECK(g == f);
    CHECK(g.to_string() == f.to_string());
  }
}

TEST_CASE("leading term is multiplicative") {
  VarContext ctx({"a", "b", "c"});
  std::mt19937 rng(5);
  std::vector<MonomialOrder> orders{MonomialOrder::lex(), MonomialOrder::grevlex(),
                                    MonomialOrder::block({false, true, false})};
  for (int k = 0; k < 40; ++k) {
    auto f = random_polynomial(ctx, rng, 3, 4);
    auto g = random_polynomial(ctx, rng, 3, 4);
    if (f.is_zero() || g.is_zero()) continue;
    for (const auto& ord : orders) {
      auto lf = leading_term(f, ord);
      auto lg = leading_term(g, ord);
      auto lfg = leading_term(f * g, ord);
      CHECK(lfg.monomial == lf.monomial * lg.monomial);
      CHECK(lfg.coefficient == lf.coefficient * lg.coefficient);
    }
  }
}

TEST_CASE("two-stage substitution equals the combined one") {
  VarContext ctx({"a", "b", "c"});
  std::mt19937 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto f = random_polynomial(ctx, rng, 3, 5);
    auto pa = random_polynomial(ctx, rng, 2, 3);
    auto cb = random_coefficient(rng);
    auto staged = substitute(substitute(f, {{"a", pa}}), {{"b", cb}});
    // pa may contain b; the combined map must account for it.
    auto combined = substitute(f, {{"a", substitute(pa, {{"b", cb}})}, {"b", Polynomial::constant(ctx, cb)}});
    CHECK(staged == combined);
  }
}

TEST_CASE("derivative and evaluation") {
  VarContext ctx({"z", "w"});
  auto z = Polynomial::variable(ctx, "z");
  auto w = Polynomial::variable(ctx, "w");
  auto f = z.pow(3) * w - I * w;
  CHECK(f.derivative(0) == GaussianRational(3) * z * z * w);
  CHECK(f.derivative(1) == z.pow(3) - Polynomial::constant(ctx, I));
  std::vector<GaussianRational> at{GaussianRational(1, 1), GaussianRational(2)};
  // (1+i)^3 = -2+2i
  CHECK(f.evaluate(at) == GaussianRational(-4, 2));
}

TEST_CASE("context restriction keeps complete pairs only") {
  VarContext ctx = VarContext::paired({"z", "w"}, {"xi_z", "xi_w"});
  std::vector<std::size_t> keep{0, 2, 3};
  VarContext sub = ctx.restrict_to(keep);
  CHECK(sub.names() == std::vector<std::string>{"z", "xi_z", "xi_w"});
  CHECK(sub.partner(0) == std::optional<std::size_t>(1));
  CHECK_FALSE(sub.partner(2).has_value());
  CHECK(ctx.holomorphic_indices() == std::vector<std::size_t>{0, 1});
  CHECK(ctx.antiholomorphic_indices() == std::vector<std::size_t>{2, 3});
}
