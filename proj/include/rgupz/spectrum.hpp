#pragma once

// First-order Zeeman shifts of hydrogen-like levels for the standard (Lande),
// relativistic, GUP and relativistic-GUP models, plus the spin-orbit term,
// line generation and the derived-vs-published comparison.
//
// All energies are in erg, angular momenta in erg*s (Gaussian CGS).

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rgupz/units.hpp"

namespace rgupz::spectrum {

enum class Branch { Plus, Minus };  // j = l + 1/2, j = l - 1/2

Branch parse_branch(std::string_view tag);
std::string_view branch_tag(Branch b);

/// Uncoupled basis |m_l, m_s> used for the spin-orbit expectation.
struct AltBasis {
  int m_l;
  int two_ms;  // +1 or -1
};

struct QuantumState {
  int n = 1;
  int l = 0;
  Branch branch = Branch::Plus;
  int two_mj = 1;  // 2 m_j, always odd
  std::optional<AltBasis> alt;

  int two_j() const { return branch == Branch::Plus ? 2 * l + 1 : 2 * l - 1; }
  double j() const { return 0.5 * two_j(); }
  double mj() const { return 0.5 * two_mj; }

  friend bool operator==(const QuantumState&, const QuantumState&) = default;
};

/// Converts a half-integer given as a double (e.g. 1.5) to twice its value.
/// Throws ValidationError naming `field` unless 2*value is an odd integer.
int twice_half_odd(double value, const char* field);

QuantumState make_state(int n, int l, Branch branch, double mj);
/// Throws ValidationError describing the first violated invariant.
void validate(const QuantumState& state);

/// All m_j of one fine-structure level, in descending m_j.
std::vector<QuantumState> level_states(int n, int l, Branch branch);
/// Both branches of an (n, l) manifold (only `plus` when l = 0).
std::vector<QuantumState> manifold_states(int n, int l);

// Expectation values in the coupled |j, m_j> basis.
double exp_jz(double mj, double hbar);
double exp_sz(int l, Branch branch, double mj, double hbar);
double exp_ls(int m_l, double m_s, double hbar);
/// hbar^2 l(l+1) / r^2: the angular part of the radial Laplacian at fixed r.
double exp_p2_paper(int l, double r, double hbar);

enum class Regime { Lande, Rel, Gup, Rgup };
enum class Mode { Derived, AsPublished };

Regime parse_regime(std::string_view tag);
std::string_view regime_tag(Regime r);
Mode parse_mode(std::string_view tag);
std::string_view mode_tag(Mode m);

enum class TermKind {
  Base,        // undeformed magnetic term
  Correction,  // deformation bracket, proportional to B
  LevelShift,  // deformation bracket, independent of B
};

std::string_view term_kind_tag(TermKind k);

struct ShiftTerm {
  std::string label;
  std::string ref;  // the expectation-value expression this addend evaluates
  double value_erg;
  TermKind kind;
};

struct ShiftBreakdown {
  Regime regime;
  Mode mode;
  std::vector<ShiftTerm> terms;
  double total;             // compensated sum of terms
  double correction_scale;  // eps gamma^2 (mc)^2 for RGUP, -eps gamma^2 <p^2> for GUP, else 0

  const ShiftTerm* find(std::string_view label) const;
  /// Sum of every term that is not a level shift.
  double magnetic_total() const;
};

struct ShiftOptions {
  Mode mode = Mode::Derived;
  /// Radius at which <p^2> is evaluated; the Bohr radius when unset.
  std::optional<double> radius;
};

/// Every label the regime can produce, in output order.
std::vector<std::string> regime_term_labels(Regime regime);

ShiftBreakdown energy_shift_B(const QuantumState& state, const PhysicalParams& params,
                              Regime regime, const ShiftOptions& options = {});

/// Spin-orbit expectation for the Coulomb potential -Z e^2 / r:
/// (1 - eps gamma^2 (mc)^2) hbar^2 m_l m_s / (2 m_e^2 c^2) * Z e^2 <r^-3>.
double hls_shift(const QuantumState& state, const PhysicalParams& params);

enum class Polarization { Pi, SigmaPlus, SigmaMinus };
std::string_view polarization_tag(Polarization p);

struct Line {
  QuantumState upper;
  QuantumState lower;
  Polarization polarization;
  double delta_erg;           // upper total - lower total
  double magnetic_delta_erg;  // same, excluding level-shift terms
};

/// Every (upper, lower) pair with |delta l| = 1 and |delta m_j| <= 1.
std::vector<Line> zeeman_lines(std::span<const QuantumState> upper,
                               std::span<const QuantumState> lower, const PhysicalParams& params,
                               Regime regime, const ShiftOptions& options = {});

enum class DiscrepancyClass { MissingHbarPower, MissingR0Power, SignOfAlphaTerm, Factor2, Uncatalogued };
std::string_view discrepancy_class_tag(DiscrepancyClass c);

struct DiscrepancyEntry {
  Regime regime;
  std::string label;
  double derived_erg;
  double published_erg;
  double ratio;  // derived / published
  DiscrepancyClass cls;
  std::string detail;
};

struct DiscrepancyReport {
  QuantumState state;
  std::vector<DiscrepancyEntry> differences;
  int agreeing_terms = 0;
};

/// Compares derived and as-published evaluations term by term for the RGUP
/// and GUP regimes and classifies every mismatch.
DiscrepancyReport discrepancy_report(const QuantumState& state, const PhysicalParams& params,
                                     const ShiftOptions& options = {});

}  // namespace rgupz::spectrum
