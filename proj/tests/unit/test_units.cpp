#include <doctest.h>

#include <cmath>

#include "rgupz/error.hpp"
#include "rgupz/units.hpp"
#include "support/reference.hpp"

using namespace rgupz;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("builtin constants satisfy their identities") {
  const auto k = load_constants();
  CHECK(check_invariants(k).empty());
  CHECK(rel(k.alpha, k.e * k.e / (k.hbar * k.c)) < 1e-6);
  CHECK(rel(k.r0, k.hbar * k.hbar / (k.m_e * k.e * k.e)) < 1e-6);
  CHECK(rel(k.mu_b(), reference::bohr_magneton()) < 1e-12);
  CHECK(k.e > 0);
  CHECK(k.m_planck > 0);
}

TEST_CASE("Bohr magneton energy at one tesla") {
  const auto k = load_constants();
  const double energy_ev = k.mu_b() * kGaussPerTesla / k.ev;
  CHECK(rel(energy_ev, 5.788e-5) < 1e-3);
  CHECK(rel(k.alpha, 7.297e-3) < 1e-4);
}

TEST_CASE("electron to Planck mass ratio squared") {
  const auto k = load_constants();
  const double ratio = std::pow(reference::kElectronMass / reference::kPlanckMass, 2);
  CHECK(rel(ratio, 1.75e-45) < 1e-2);
  CHECK(rel(std::pow(k.m_e / k.m_planck, 2), ratio) < 1e-12);
}

TEST_CASE("invariant check reports a broken table") {
  auto k = load_constants();
  k.alpha *= 1.01;
  CHECK_FALSE(check_invariants(k).empty());
  auto negative = load_constants();
  negative.c = -1.0;
  CHECK_FALSE(check_invariants(negative).empty());
}

TEST_CASE("make_params resolves gamma and validates fields") {
  const auto k = load_constants();
  SUBCASE("planck gamma") {
    const auto p = make_params(0.0, 1.0, GammaSpec::planck(), k.m_e, 1, k);
    CHECK(p.gamma == 1.0 / (k.m_planck * k.c));
    CHECK(rel(p.correction_scale(), 1.75e-45) < 1e-2);
  }
  SUBCASE("zero deformation") {
    const auto p = make_params(1e4, 0.0, GammaSpec::explicit_value(0.0), k.m_e, 1, k);
    CHECK(p.correction_scale() == 0.0);
  }
  SUBCASE("errors name the field") {
    auto field_of = [&](auto&& fn) {
      try {
        fn();
      } catch (const ValidationError& e) {
        return e.field();
      }
      return std::string("none");
    };
    CHECK(field_of([&] { make_params(-1.0, 1.0, GammaSpec::planck(), k.m_e, 1, k); }) == "B");
    CHECK(field_of([&] { make_params(1.0, -1.0, GammaSpec::planck(), k.m_e, 1, k); }) == "epsilon");
    CHECK(field_of([&] { make_params(1.0, 1.0, GammaSpec::planck(), 0.0, 1, k); }) == "m");
    CHECK(field_of([&] { make_params(1.0, 1.0, GammaSpec::planck(), -k.m_e, 1, k); }) == "m");
    CHECK(field_of([&] { make_params(1.0, 1.0, GammaSpec::planck(), k.m_e, 0, k); }) == "Z");
    CHECK(field_of([&] { make_params(1.0, 1.0, GammaSpec::explicit_value(-1.0), k.m_e, 1, k); }) ==
          "gamma");
  }
  SUBCASE("deterministic") {
    const auto a = make_params(3.0, 2.0, GammaSpec::planck(), k.m_e, 2, k);
    const auto b = make_params(3.0, 2.0, GammaSpec::planck(), k.m_e, 2, k);
    CHECK(a.B == b.B);
    CHECK(a.gamma == b.gamma);
    CHECK(a.correction_scale() == b.correction_scale());
  }
}

TEST_CASE("energy conversions") {
  const auto k = load_constants();
  CHECK(rel(convert_energy(1.0, EnergyUnit::EV, EnergyUnit::Erg, k), reference::kElectronVolt) < 1e-15);
  CHECK(convert_energy(0.0, EnergyUnit::Erg, EnergyUnit::EV, k) == 0.0);
  // E / (h c) with h = 2 pi hbar
  const double wavenumber = reference::kElectronVolt / (2.0 * M_PI * reference::kHbar * reference::kLight);
  CHECK(rel(convert_energy(1.0, EnergyUnit::EV, EnergyUnit::InverseCm, k), wavenumber) < 1e-12);
  CHECK(rel(convert_energy(1.0, EnergyUnit::EV, EnergyUnit::InverseCm, k), 8065.5) < 1e-4);

  const EnergyUnit units[] = {EnergyUnit::Erg, EnergyUnit::EV, EnergyUnit::InverseCm, EnergyUnit::Hz};
  for (auto from : units) {
    for (auto to : units) {
      const double x = 3.7e-5;
      const double back = convert_energy(convert_energy(x, from, to, k), to, from, k);
      CHECK(rel(back, x) < 1e-14);
    }
  }
}

TEST_CASE("unit tags") {
  CHECK(parse_energy_unit("eV") == EnergyUnit::EV);
  CHECK(parse_energy_unit("cm-1") == EnergyUnit::InverseCm);
  CHECK(parse_energy_unit("Hz") == EnergyUnit::Hz);
  CHECK(parse_energy_unit("erg") == EnergyUnit::Erg);
  CHECK_THROWS_AS(parse_energy_unit("joule"), ValidationError);
  CHECK(energy_unit_tag(EnergyUnit::InverseCm) == "cm-1");
}

TEST_CASE("constant listing contains stored and derived entries") {
  const auto entries = constant_entries(load_constants());
  auto has = [&](const char* name) {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
  };
  CHECK(has("e"));
  CHECK(has("mu_b"));
  CHECK(has("m_planck"));
  for (const auto& e : entries) CHECK(e.value > 0.0);
}
