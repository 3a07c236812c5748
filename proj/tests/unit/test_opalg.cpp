#include <doctest.h>

#include "rgupz/error.hpp"
#include "rgupz/opalg.hpp"
#include "support/word_oracle.hpp"

using namespace rgupz::opalg;

namespace {

const Metric kE3 = Metric::euclidean(3);

OperatorPoly X(int i, Metric m = kE3) { return OperatorPoly::position(m, i); }
OperatorPoly P(int i, Metric m = kE3) { return OperatorPoly::momentum(m, i); }
OperatorPoly C(const Coefficient& c, Metric m = kE3) { return OperatorPoly::constant(m, c); }

Coefficient i_hbar() { return Coefficient::i() * Coefficient::param(Param::Hbar); }

OperatorPoly mul(const OperatorPoly& a, const OperatorPoly& b) { return normal_product(a, b); }

}  // namespace

TEST_CASE("normal product of canonical pairs") {
  CHECK(mul(P(1), X(1)) == mul(X(1), P(1)) - C(i_hbar()));
  CHECK(mul(X(1), P(1)).size() == 1);
  // p x x = x x p - 2 i hbar x
  CHECK(mul(P(1), mul(X(1), X(1))) ==
        mul(mul(X(1), X(1)), P(1)) - Coefficient(2) * i_hbar() * X(1));
  // different indices commute
  CHECK(mul(P(2), X(1)) == mul(X(1), P(2)));
}

TEST_CASE("Minkowski time component carries the metric sign") {
  const Metric mk = Metric::minkowski();
  // [x^0, p^0] = i hbar eta^00 = -i hbar
  CHECK(commutator(X(0, mk), P(0, mk)) == C(-i_hbar(), mk));
  CHECK(commutator(X(2, mk), P(2, mk)) == C(i_hbar(), mk));
  CHECK(commutator(X(0, mk), P(1, mk)).is_zero());
}

TEST_CASE("commutator examples") {
  CHECK(commutator(X(1), P(1)) == C(i_hbar()));
  const auto p2 = OperatorPoly::momentum_square(kE3);
  CHECK(commutator(X(1), p2) == Coefficient(2) * i_hbar() * P(1));
  CHECK(commutator(P(1), P(2)).is_zero());
}

TEST_CASE("metric mismatch is rejected") {
  CHECK_THROWS_AS(normal_product(X(1), X(1, Metric::euclidean(2))), rgupz::ValidationError);
  CHECK_THROWS_AS(commutator(X(1), X(1, Metric::minkowski())), rgupz::ValidationError);
}

TEST_CASE("library product agrees with brute-force rewriting") {
  for (bool minkowski : {false, true}) {
    word_oracle::Generator gen(minkowski ? 17 : 5, minkowski, 3);
    for (int trial = 0; trial < 150; ++trial) {
      const auto a = gen.poly(4, 3);
      const auto b = gen.poly(4, 3);
      const auto library = normal_product(word_oracle::to_library(a, gen.metric()),
                                          word_oracle::to_library(b, gen.metric()));
      const auto expected = word_oracle::product(a, b, minkowski);
      REQUIRE(word_oracle::from_library(library) == expected);
    }
  }
}

TEST_CASE("high powers agree with brute-force rewriting") {
  using word_oracle::Letter;
  // p^3 x^3 in one index, plus mixed indices
  word_oracle::WordPoly a{{{{true, 1}, {true, 1}, {true, 1}}, {{{0, 0, 0, 0, 0, 0}, 1}}}};
  word_oracle::WordPoly b{{{{false, 1}, {false, 1}, {false, 1}, {false, 2}}, {{{0, 0, 0, 0, 0, 0}, 1}}}};
  const auto library = normal_product(word_oracle::to_library(a, kE3), word_oracle::to_library(b, kE3));
  CHECK(word_oracle::from_library(library) == word_oracle::product(a, b, false));
}

TEST_CASE("associativity, antisymmetry and Jacobi on random polynomials") {
  for (bool minkowski : {false, true}) {
    word_oracle::Generator gen(minkowski ? 101 : 202, minkowski, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = gen.library_poly(4, 3);
      const auto b = gen.library_poly(4, 3);
      const auto c = gen.library_poly(4, 3);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK((commutator(a, b) + commutator(b, a)).is_zero());
    }
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = gen.library_poly(3, 3);
      const auto b = gen.library_poly(3, 3);
      const auto c = gen.library_poly(3, 3);
      const auto jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                          commutator(c, commutator(a, b));
      CHECK(jacobi.is_zero());
    }
  }
}

TEST_CASE("truncation") {
  const auto a1 = Coefficient::param(Param::A1);
  const auto p = P(1);
  const auto q = P(2);
  const auto poly = C(1) + a1 * p + (a1 * a1) * q;
  CHECK(truncate(poly, {{Param::A1, 1}}) == C(1) + a1 * p);
  const auto plain = C(3) + X(1);
  CHECK(truncate(plain, {{Param::Eps, 0}, {Param::A1, 0}}) == plain);
  const auto eg2 = Coefficient::param(Param::Eps) * Coefficient::param(Param::Gamma2);
  const auto second = (eg2 * eg2) * p + eg2 * q;
  CHECK(truncate(second, {{Param::Eps, 1}, {Param::Gamma2, 1}}) == eg2 * q);

  word_oracle::Generator gen(9, false, 3);
  for (int trial = 0; trial < 100; ++trial) {
    // raise random a1 powers via products so that caps bite
    const auto x = mul(gen.library_poly(2, 3), gen.library_poly(2, 3));
    const auto y = mul(gen.library_poly(2, 3), gen.library_poly(2, 3));
    const TruncationOrder order{{Param::A1, 1}, {Param::Hbar, 2}};
    CHECK(truncate(x + y, order) == truncate(x, order) + truncate(y, order));
  }
}

TEST_CASE("non-relativistic deformed operators") {
  const auto ops = deformed_ops_nonrel(3);
  // p^i = p0^i + (a2/2) p0^i p0^j p0^j
  for (int i = 1; i <= 3; ++i) {
    CHECK(ops.p(i).size() == 4);
    OpMonomial linear;
    linear.p[i] = 1;
    CHECK(ops.p(i).coefficient(linear) == Coefficient(1));
    OpMonomial cubic;
    cubic.p[i] = 3;
    CHECK(ops.p(i).coefficient(cubic) == Coefficient(Rational(1, 2)) * Coefficient::param(Param::A2));
  }
  SUBCASE("a2 = 2 a1 leaves the position undeformed") {
    const auto special = substitute(ops, Param::A2, Coefficient(2) * Coefficient::param(Param::A1));
    for (int i = 1; i <= 3; ++i) CHECK(special.x(i) == X(i));
  }
  SUBCASE("undeformed limit") {
    auto zero = substitute(ops, Param::A1, Coefficient(0));
    zero = substitute(zero, Param::A2, Coefficient(0));
    for (int i = 1; i <= 3; ++i) {
      CHECK(zero.x(i) == X(i));
      CHECK(zero.p(i) == P(i));
    }
  }
}

TEST_CASE("general non-relativistic algebra to first order") {
  const auto ops = deformed_ops_nonrel(3);
  const TruncationOrder order{{Param::A1, 1}, {Param::A2, 1}};
  const auto a1 = Coefficient::param(Param::A1);
  const auto a2 = Coefficient::param(Param::A2);
  auto first_order = [&](const OperatorPoly& p) {
    auto out = truncate(p, order);
    // drop a1 a2 cross terms as well
    OperatorPoly kept(p.metric());
    for (const auto& [m, c] : out.terms()) {
      Coefficient cc;
      for (const auto& [pm, q] : c.terms()) {
        if (pm.power(Param::A1) + pm.power(Param::A2) <= 1) cc.add_term(pm, q);
      }
      kept.add_term(m, cc);
    }
    return kept;
  };
  const auto p2 = OperatorPoly::momentum_square(kE3);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      // i hbar [(1 + a1 p^2) delta + a2 p^i p^j]
      OperatorPoly target = i_hbar() * a2 * mul(P(i), P(j));
      if (i == j) target += i_hbar() * (C(1) + a1 * p2);
      CHECK(first_order(commutator(ops.x(i), ops.p(j))) == target);
      // [x^i, x^j] = i hbar (2 a1 - a2) (p^i x^j - p^j x^i)
      const auto xx_target = i_hbar() * (Coefficient(2) * a1 - a2) * (mul(P(i), X(j)) - mul(P(j), X(i)));
      CHECK(first_order(commutator(ops.x(i), ops.x(j))) == first_order(xx_target));
      CHECK(commutator(ops.p(i), ops.p(j)).is_zero());
    }
  }
}

TEST_CASE("relativistic deformed operators") {
  const Metric mk = Metric::minkowski();
  const auto ops = deformed_ops_rel();
  for (int mu = 0; mu <= 3; ++mu) CHECK(ops.x(mu).size() == 1);
  // p^0 contains eps gamma^2 p0^0 (-p0^0 p0^0 + sum_i p0^i p0^i)
  const auto eg2 = Coefficient::param(Param::Eps) * Coefficient::param(Param::Gamma2);
  OperatorPoly expected = P(0, mk);
  expected += eg2 * (Coefficient(-1) * mul(P(0, mk), mul(P(0, mk), P(0, mk))));
  for (int i = 1; i <= 3; ++i) expected += eg2 * mul(P(0, mk), mul(P(i, mk), P(i, mk)));
  CHECK(ops.p(0) == expected);
  const auto undeformed = substitute(ops, Param::Eps, Coefficient(0));
  for (int mu = 0; mu <= 3; ++mu) CHECK(undeformed.p(mu) == P(mu, mk));
  for (int mu = 0; mu <= 3; ++mu) {
    for (int nu = 0; nu <= 3; ++nu) CHECK(commutator(ops.p(mu), ops.p(nu)).is_zero());
  }
}

TEST_CASE("verification cases") {
  const auto linear = verify_algebra(AlgebraCase::RelLinear);
  CHECK(linear.pass());
  CHECK(linear.entries.size() == 16);
  const auto xx = verify_algebra(AlgebraCase::RelPositionPosition);
  CHECK(xx.pass());
  for (const auto& e : xx.entries) CHECK(e.residual.is_zero());

  const auto special = verify_algebra(AlgebraCase::NonrelSpecial);
  CHECK(special.pass());
  REQUIRE_FALSE(special.annotations.empty());
  CHECK(special.annotations.front().find("published-discrepancy") != std::string::npos);
  // the off-diagonal [x^1, p^2] carries 2 i hbar a1 p0^1 p0^2
  OpMonomial p1p2;
  p1p2.p[1] = 1;
  p1p2.p[2] = 1;
  bool found = false;
  for (const auto& e : special.entries) {
    if (e.label == "[x^1, p^2]") {
      found = true;
      CHECK(e.computed.coefficient(p1p2) == Coefficient(2) * i_hbar() * Coefficient::param(Param::A1));
    }
  }
  CHECK(found);

  const auto printed = verify_algebra(AlgebraCase::NonrelSpecial, TargetForm::Printed);
  CHECK_FALSE(printed.pass());
  CHECK(printed.to_text().find("FAIL") != std::string::npos);
}

TEST_CASE("case tags") {
  CHECK(parse_algebra_case("rel-linear") == AlgebraCase::RelLinear);
  CHECK(algebra_case_tag(AlgebraCase::NonrelSpecial) == "nonrel-special");
  CHECK_THROWS_AS(parse_algebra_case("bogus"), rgupz::ValidationError);
}
