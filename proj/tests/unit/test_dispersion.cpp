#include <doctest.h>

#include <cmath>
#include <string>

#include "rgupz/dispersion.hpp"
#include "rgupz/units.hpp"
#include "support/reference.hpp"

using namespace rgupz::dispersion;

TEST_CASE("exact root against 50-digit reference") {
  for (double M : {1.0, 0.5, 3.0}) {
    for (double s : {1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.04}) {
      if (8.0 * s * M > 1.0) continue;
      const double ref = reference::dispersion_root(M, s);
      CHECK(std::abs(p0sq_exact(M, s) - ref) <= 1e-14 * std::abs(ref));
    }
  }
  // s M = 0.01
  const double u = p0sq_exact(1.0, 0.01);
  CHECK(std::abs(u - (-1.0208423834)) < 1e-9);
  CHECK(std::abs(u - (-1.0 - 0.02 - 8.0 * 0.01 * 0.01)) <= 1e-4);
  CHECK(std::abs(2.0 * 0.01 * u * u + u + 1.0) <= 1e-14);
}

TEST_CASE("series error bound on a log grid") {
  const double M = 1.0;
  for (int k = 0; k < 100; ++k) {
    const double x = std::pow(10.0, -6.0 + 4.0 * k / 99.0);  // eps gamma^2 (mc)^2
    const double s = x / M;
    const double exact = p0sq_exact(M, s);
    const double series = p0sq_series(M, s, 1);
    CHECK(std::abs(exact - series) <= 10.0 * s * s * M * M * M);
    // second order tightens the error to O(x^3)
    CHECK(std::abs(exact - p0sq_series(M, s, 2)) <= 100.0 * x * x * x * M);
  }
}

TEST_CASE("residual and undeformed limit") {
  for (double x : {1e-6, 1e-4, 1e-2, 0.1, 0.12}) {
    const auto sol = solve(2.0, x / 2.0, 1);
    CHECK(std::abs(sol.relative_residual) <= 1e-12);
    CHECK(sol.order == 1);
  }
  CHECK(p0sq_exact(1.7, 0.0) == -1.7);
  CHECK(p0sq_series(1.7, 0.0, 2) == -1.7);
  const auto sol = solve(1.7, 0.0, 2);
  CHECK(sol.exact_root == -1.7);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("root is monotone in the deformation") {
  double previous = p0sq_exact(1.0, 0.0);
  for (int k = 1; k <= 50; ++k) {
    const double next = p0sq_exact(1.0, 0.0025 * k);
    CHECK(next < previous);
    previous = next;
  }
}

TEST_CASE("first derivative in the deformation is -2 (mc)^4") {
  const double M = 1.3;
  const double h = 1e-5;
  // Richardson-extrapolated forward difference at s = 0
  const double d1 = (p0sq_exact(M, h) - p0sq_exact(M, 0.0)) / h;
  const double d2 = (p0sq_exact(M, h / 2) - p0sq_exact(M, 0.0)) / (h / 2);
  const double slope = 2.0 * d2 - d1;
  CHECK(std::abs(slope - (-2.0 * M * M)) < 1e-6);
}

TEST_CASE("trans-Planckian input has no real root") {
  CHECK_THROWS_AS(p0sq_exact(1.0, 0.2), TransPlanckianError);
  CHECK_THROWS_AS(solve(1.0, 0.2), rgupz::DomainError);
  try {
    p0sq_exact(1.0, 0.2);
  } catch (const TransPlanckianError& e) {
    CHECK(e.scale() == doctest::Approx(0.2));
    CHECK(std::string(e.what()).find("1/8") != std::string::npos);
  }
  // boundary: discriminant exactly zero is allowed
  CHECK(p0sq_exact(1.0, 0.125) == doctest::Approx(-2.0));
}

TEST_CASE("order and input validation") {
  CHECK_THROWS_AS(p0sq_series(1.0, 0.01, 0), rgupz::ValidationError);
  CHECK_THROWS_AS(p0sq_series(1.0, 0.01, 3), rgupz::ValidationError);
  CHECK_THROWS_AS(solve(1.0, 0.01, 5), rgupz::ValidationError);
  CHECK_THROWS_AS(p0sq_exact(-1.0, 0.01), rgupz::ValidationError);
}

TEST_CASE("CGS overloads and physical scale") {
  const auto k = rgupz::load_constants();
  const double gamma = 1.0 / (k.m_planck * k.c);
  const double mc = k.m_e * k.c;
  const double exact = p0sq_exact(k.m_e, 1.0, gamma, k.c);
  CHECK(exact == doctest::Approx(-mc * mc).epsilon(1e-15));
  CHECK(p0sq_series(k.m_e, 1.0, gamma, k.c, 1) == doctest::Approx(-mc * mc).epsilon(1e-15));
  // eps gamma^2 (m_e c)^2 = (m_e / M_Pl)^2
  const double ratio = reference::kElectronMass / reference::kPlanckMass;
  CHECK(gamma * gamma * mc * mc == doctest::Approx(ratio * ratio).epsilon(1e-12));
}

TEST_CASE("non-relativistic limit note") {
  const auto& note = nonrel_limit_note();
  CHECK_FALSE(note.statement.empty());
  CHECK(note.substitution.find("<p^2>") != std::string::npos);
  CHECK(nonrel_correction_scale(2.0, 3.0, 5.0) == -2.0 * 9.0 * 5.0);
}
