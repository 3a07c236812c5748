#include <doctest.h>

#include <cmath>

#include "rgupz/error.hpp"
#include "rgupz/oracle.hpp"
#include "rgupz/spectrum.hpp"
#include "support/reference.hpp"

using namespace rgupz;
using namespace rgupz::oracle;

namespace {

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("Laguerre polynomials") {
  CHECK(laguerre(0, 3.0, 2.5) == 1.0);
  CHECK(laguerre(1, 1.0, 0.5) == doctest::Approx(1.5));  // 1 + alpha - x
  // L_2^a(x) = x^2/2 - (a+2) x + (a+1)(a+2)/2
  CHECK(laguerre(2, 3.0, 1.5) == doctest::Approx(1.125 - 7.5 + 10.0));
  CHECK(laguerre(-1, 0.0, 1.0) == 0.0);
}

TEST_CASE("Gauss-Laguerre rule") {
  const auto& rule = gauss_laguerre(kDefaultNodes);
  REQUIRE(rule.nodes.size() == static_cast<std::size_t>(kDefaultNodes));
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.weights[i] >= 0.0);
    CHECK(rule.nodes[i] > 0.0);
    total += rule.weights[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  // int e^{-x} x^5 = 120
  const RadialGrid grid(20, 1.0);
  CHECK(grid.integrate([](double x) { return std::pow(x, 5); }) == doctest::Approx(120.0).epsilon(1e-13));
  // scaled: int e^{-2x} x dx = 1/4
  const RadialGrid scaled(10, 2.0);
  CHECK(scaled.integrate([](double x) { return x; }) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(&gauss_laguerre(30) == &gauss_laguerre(30));
  CHECK_THROWS_AS(gauss_laguerre(1), ValidationError);
  CHECK_THROWS_AS(gauss_laguerre(151), ValidationError);
}

TEST_CASE("radial wavefunctions") {
  const double a = reference::kBohrRadius;
  CHECK(radial_wavefunction(1, 0, 1, 0.0, a) == doctest::Approx(2.0 / std::pow(a, 1.5)).epsilon(1e-14));
  // R_21 = r e^{-r/2a} / (sqrt(24) a^{5/2})
  const double r = 1.7 * a;
  CHECK(radial_wavefunction(2, 1, 1, r, a) ==
        doctest::Approx(r * std::exp(-r / (2.0 * a)) / (std::sqrt(24.0) * std::pow(a, 2.5))).epsilon(1e-13));
  // R_10 for Z = 2: 2 (Z/a)^{3/2} e^{-Z r/a}
  CHECK(radial_wavefunction(1, 0, 2, r, a) ==
        doctest::Approx(2.0 * std::pow(2.0 / a, 1.5) * std::exp(-2.0 * r / a)).epsilon(1e-13));
  CHECK_THROWS_AS(radial_wavefunction(1, 1, 1, r, a), ValidationError);
  CHECK_THROWS_AS(radial_wavefunction(2, 0, 1, -1.0, a), ValidationError);
}

TEST_CASE("normalization and orthogonality") {
  CHECK(close(radial_expectation(3, 2, 1, 0, 1.0), 1.0, 1e-12));
  for (int n = 1; n <= 6; ++n) {
    for (int l = 0; l < n; ++l) {
      CHECK(close(radial_expectation(n, l, 1, 0, 1.0), 1.0, 1e-10));
      CHECK(close(radial_overlap(n, n, l, 1), 1.0, 1e-10));
      for (int m = l + 1; m < n; ++m) CHECK(std::abs(radial_overlap(n, m, l, 1)) < 1e-10);
    }
  }
}

TEST_CASE("radial moments match the textbook closed forms") {
  const double a = reference::kBohrRadius;
  for (int Z : {1, 3}) {
    for (int n = 1; n <= 5; ++n) {
      for (int l = 0; l < n; ++l) {
        for (int k = -3; k <= 2; ++k) {
          if (k == -3 && l == 0) continue;
          const double expected = reference::radial_moment(n, l, Z, k) * std::pow(a, k);
          CHECK(close(radial_expectation(n, l, Z, k, a), expected, 1e-8));
          CHECK(close(radial_expectation_closed_form(n, l, Z, k, a), expected, 1e-13));
          // node doubling
          CHECK(close(radial_expectation(n, l, Z, k, a, 120), radial_expectation(n, l, Z, k, a), 1e-10));
        }
      }
    }
  }
  CHECK_THROWS_AS(radial_expectation(2, 0, 1, -3, a), DomainError);
  CHECK_THROWS_AS(radial_expectation_closed_form(2, 0, 1, -3, a), DomainError);
  CHECK_THROWS_AS(radial_expectation(2, 1, 1, 3, a), ValidationError);
}

TEST_CASE("momentum moments") {
  const auto k = load_constants();
  const double unit = k.hbar / k.r0;
  for (int n = 1; n <= 5; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto p2 = p2_expectation_exact(n, l, 1, k);
      const double p2_ref = reference::p2_moment(n, 1) * unit * unit;
      CHECK(close(p2.quadrature, p2_ref, 1e-8));
      CHECK(close(p2.closed_form, p2_ref, 1e-13));
      CHECK(close(p2_expectation_exact(n, l, 1, k, 120).quadrature, p2.quadrature, 1e-10));

      const auto p4 = p4_expectation_exact(n, l, 1, k);
      const double p4_ref = reference::p4_moment(n, l, 1) * std::pow(unit, 4);
      CHECK(close(p4.quadrature, p4_ref, 1e-6));
      CHECK(close(p4.closed_form, p4_ref, 1e-12));
      CHECK(close(p4_expectation_exact(n, l, 1, k, 120).quadrature, p4.quadrature, 1e-10));
      // Cauchy-Schwarz
      CHECK(p4.quadrature >= p2.quadrature * p2.quadrature * (1.0 - 1e-12));
    }
  }
  const auto p2z = p2_expectation_exact(2, 1, 2, k);
  CHECK(close(p2z.quadrature, reference::p2_moment(2, 2) * unit * unit, 1e-8));
}

TEST_CASE("angular approximation overestimates the 2p kinetic moment eightfold") {
  const auto k = load_constants();
  const double approx = spectrum::exp_p2_paper(1, k.r0, k.hbar);
  const auto exact = p2_expectation_exact(2, 1, 1, k);
  CHECK(approx / exact.closed_form == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("quantum number validation") {
  CHECK_THROWS_AS(validate_quantum_numbers(0, 0, 1), ValidationError);
  CHECK_THROWS_AS(validate_quantum_numbers(2, 2, 1), ValidationError);
  CHECK_THROWS_AS(validate_quantum_numbers(2, -1, 1), ValidationError);
  CHECK_THROWS_AS(validate_quantum_numbers(2, 1, 0), ValidationError);
  CHECK_NOTHROW(validate_quantum_numbers(2, 1, 1));
}
