#include "rgupz/units.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rgupz/error.hpp"

namespace rgupz {

namespace {

// CODATA 2018. The Gaussian charge is e_SI * c_SI * 10.
constexpr double kSpeedOfLight = 2.99792458e10;
constexpr double kElementaryChargeSI = 1.602176634e-19;
constexpr double kElementaryCharge = kElementaryChargeSI * 2.99792458e9;
constexpr double kElectronMass = 9.1093837015e-28;
constexpr double kHbar = 1.054571817e-27;
constexpr double kFineStructure = 7.2973525693e-3;
constexpr double kBohrRadius = 5.29177210903e-9;
constexpr double kPlanckMass = 2.176434e-5;
constexpr double kElectronVolt = kElementaryChargeSI * 1.0e7;

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

void require_finite(const char* field, double value) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

}  // namespace

double ConstantsTable::planck_h() const { return 2.0 * std::numbers::pi * hbar; }

ConstantsTable load_constants(ConstantSource source) {
  switch (source) {
    case ConstantSource::BuiltinCodata:
      break;
  }
  return ConstantsTable{
      .e = kElementaryCharge,
      .m_e = kElectronMass,
      .c = kSpeedOfLight,
      .hbar = kHbar,
      .alpha = kFineStructure,
      .r0 = kBohrRadius,
      .m_planck = kPlanckMass,
      .ev = kElectronVolt,
  };
}

std::vector<std::string> check_invariants(const ConstantsTable& t) {
  std::vector<std::string> problems;
  const std::pair<const char*, double> stored[] = {
      {"e", t.e},         {"m_e", t.m_e},           {"c", t.c},   {"hbar", t.hbar},
      {"alpha", t.alpha}, {"r0", t.r0}, {"m_planck", t.m_planck}, {"ev", t.ev}};
  for (const auto& [name, value] : stored) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      problems.push_back(fmt::format("{} is not a positive finite number", name));
    }
  }
  if (!problems.empty()) return problems;

  const double alpha = t.e * t.e / (t.hbar * t.c);
  if (!relative_close(alpha, t.alpha, 1e-6)) {
    problems.push_back(fmt::format("alpha = {} but e^2/(hbar c) = {}", t.alpha, alpha));
  }
  const double r0 = t.hbar * t.hbar / (t.m_e * t.e * t.e);
  if (!relative_close(r0, t.r0, 1e-6)) {
    problems.push_back(fmt::format("r0 = {} but hbar^2/(m_e e^2) = {}", t.r0, r0));
  }
  return problems;
}

std::vector<ConstantEntry> constant_entries(const ConstantsTable& t) {
  return {
      {"e", t.e, "statC"},
      {"m_e", t.m_e, "g"},
      {"c", t.c, "cm/s"},
      {"hbar", t.hbar, "erg*s"},
      {"alpha", t.alpha, "1"},
      {"r0", t.r0, "cm"},
      {"m_planck", t.m_planck, "g"},
      {"mu_b", t.mu_b(), "erg/G"},
      {"ev", t.ev, "erg"},
      {"gamma_planck", 1.0 / (t.m_planck * t.c), "s/(g*cm)"},
  };
}

double PhysicalParams::correction_scale() const {
  const double mc = m * constants.c;
  return epsilon * (gamma * mc) * (gamma * mc);
}

PhysicalParams make_params(double B, double epsilon, GammaSpec gamma, double m, int Z,
                           const ConstantsTable& constants) {
  require_finite("B", B);
  require_finite("epsilon", epsilon);
  require_finite("m", m);
  if (B < 0.0) throw ValidationError("B", "field magnitude must be >= 0");
  if (epsilon < 0.0) throw ValidationError("epsilon", "must be >= 0");
  if (m <= 0.0) throw ValidationError("m", "mass must be > 0");
  if (Z < 1) throw ValidationError("Z", "nuclear charge must be >= 1");

  double g = 0.0;
  if (gamma.is_planck()) {
    g = 1.0 / (constants.m_planck * constants.c);
  } else {
    require_finite("gamma", gamma.value());
    if (gamma.value() < 0.0) throw ValidationError("gamma", "must be >= 0");
    g = gamma.value();
  }
  return PhysicalParams{B, epsilon, g, m, Z, constants};
}

EnergyUnit parse_energy_unit(std::string_view tag) {
  if (tag == "erg") return EnergyUnit::Erg;
  if (tag == "eV" || tag == "ev") return EnergyUnit::EV;
  if (tag == "cm-1" || tag == "cm^-1") return EnergyUnit::InverseCm;
  if (tag == "Hz" || tag == "hz") return EnergyUnit::Hz;
  throw ValidationError("unit", fmt::format("unknown energy unit '{}'", tag));
}

std::string_view energy_unit_tag(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::Erg: return "erg";
    case EnergyUnit::EV: return "eV";
    case EnergyUnit::InverseCm: return "cm-1";
    case EnergyUnit::Hz: return "Hz";
  }
  return "?";
}

namespace {

double erg_per_unit(EnergyUnit unit, const ConstantsTable& t) {
  switch (unit) {
    case EnergyUnit::Erg: return 1.0;
    case EnergyUnit::EV: return t.ev;
    case EnergyUnit::InverseCm: return t.planck_h() * t.c;
    case EnergyUnit::Hz: return t.planck_h();
  }
  return 1.0;
}

}  // namespace

double convert_energy(double value, EnergyUnit from, EnergyUnit to,
                      const ConstantsTable& constants) {
  if (from == to) return value;
  return value * (erg_per_unit(from, constants) / erg_per_unit(to, constants));
}

}  // namespace rgupz
