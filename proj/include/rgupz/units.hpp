#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rgupz {

// Gaussian-CGS throughout: statC, g, cm, s, erg, gauss.
struct ConstantsTable {
  double e;        // elementary charge magnitude, statC
  double m_e;      // electron mass, g
  double c;        // speed of light, cm/s
  double hbar;     // reduced Planck constant, erg s
  double alpha;    // fine-structure constant
  double r0;       // Bohr radius, cm
  double m_planck; // Planck mass, g
  double ev;       // one electronvolt in erg

  /// Bohr magneton e hbar / (2 m_e c) in erg/G; derived, never stored.
  double mu_b() const { return e * hbar / (2.0 * m_e * c); }
  double planck_h() const;
};

enum class ConstantSource { BuiltinCodata };

ConstantsTable load_constants(ConstantSource source = ConstantSource::BuiltinCodata);

/// Checks the derived identities (alpha = e^2/(hbar c), r0 = hbar^2/(m_e e^2))
/// and positivity. Returns a description of each violation; empty when valid.
std::vector<std::string> check_invariants(const ConstantsTable& table);

struct ConstantEntry {
  std::string name;
  double value;
  std::string unit;
};

/// Flat listing used by the `constants` command, stored and derived values.
std::vector<ConstantEntry> constant_entries(const ConstantsTable& table);

class GammaSpec {
 public:
  /// gamma = 1 / (M_Pl c)
  static GammaSpec planck() { return GammaSpec(true, 0.0); }
  static GammaSpec explicit_value(double gamma) { return GammaSpec(false, gamma); }

  bool is_planck() const { return planck_; }
  double value() const { return value_; }

 private:
  GammaSpec(bool planck, double value) : planck_(planck), value_(value) {}
  bool planck_;
  double value_;
};

struct PhysicalParams {
  double B;        // field magnitude, G
  double epsilon;  // dimensionless deformation strength
  double gamma;    // inverse-momentum scale, s/(g cm)
  double m;        // mass entering (mc)^2, g
  int Z;
  ConstantsTable constants;

  /// The dimensionless product epsilon gamma^2 (m c)^2.
  double correction_scale() const;
};

/// Validates and assembles a parameter record. A non-positive `m` is an error;
/// pass `constants.m_e` for the hydrogen electron.
PhysicalParams make_params(double B, double epsilon, GammaSpec gamma, double m, int Z,
                           const ConstantsTable& constants);

enum class EnergyUnit { Erg, EV, InverseCm, Hz };

EnergyUnit parse_energy_unit(std::string_view tag);
std::string_view energy_unit_tag(EnergyUnit unit);

double convert_energy(double value, EnergyUnit from, EnergyUnit to,
                      const ConstantsTable& constants);

inline constexpr double kGaussPerTesla = 1.0e4;

}  // namespace rgupz
