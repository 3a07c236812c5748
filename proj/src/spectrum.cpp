#include "rgupz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rgupz/error.hpp"
#include "rgupz/oracle.hpp"

namespace rgupz::spectrum {

// ---------------------------------------------------------------------------
// Tags

Branch parse_branch(std::string_view tag) {
  if (tag == "plus" || tag == "+") return Branch::Plus;
  if (tag == "minus" || tag == "-") return Branch::Minus;
  throw ValidationError("branch", fmt::format("expected plus or minus, got '{}'", tag));
}

std::string_view branch_tag(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Regime parse_regime(std::string_view tag) {
  if (tag == "lande" || tag == "LANDE") return Regime::Lande;
  if (tag == "rel" || tag == "REL") return Regime::Rel;
  if (tag == "gup" || tag == "GUP") return Regime::Gup;
  if (tag == "rgup" || tag == "RGUP") return Regime::Rgup;
  throw ValidationError("regime", fmt::format("unknown regime '{}'", tag));
}

std::string_view regime_tag(Regime r) {
  switch (r) {
    case Regime::Lande: return "LANDE";
    case Regime::Rel: return "REL";
    case Regime::Gup: return "GUP";
    case Regime::Rgup: return "RGUP";
  }
  return "?";
}

Mode parse_mode(std::string_view tag) {
  if (tag == "derived") return Mode::Derived;
  if (tag == "as-published") return Mode::AsPublished;
  throw ValidationError("mode", fmt::format("unknown mode '{}'", tag));
}

std::string_view mode_tag(Mode m) { return m == Mode::Derived ? "derived" : "as-published"; }

std::string_view term_kind_tag(TermKind k) {
  switch (k) {
    case TermKind::Base: return "base";
    case TermKind::Correction: return "correction";
    case TermKind::LevelShift: return "level-shift";
  }
  return "?";
}

std::string_view polarization_tag(Polarization p) {
  switch (p) {
    case Polarization::Pi: return "pi";
    case Polarization::SigmaPlus: return "sigma+";
    case Polarization::SigmaMinus: return "sigma-";
  }
  return "?";
}

std::string_view discrepancy_class_tag(DiscrepancyClass c) {
  switch (c) {
    case DiscrepancyClass::MissingHbarPower: return "missing-hbar-power";
    case DiscrepancyClass::MissingR0Power: return "missing-r0-power";
    case DiscrepancyClass::SignOfAlphaTerm: return "sign-of-alpha-term";
    case DiscrepancyClass::Factor2: return "factor-2";
    case DiscrepancyClass::Uncatalogued: return "uncatalogued";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// States

int twice_half_odd(double value, const char* field) {
  const double twice = 2.0 * value;
  if (!std::isfinite(twice) || twice != std::round(twice) || std::abs(twice) > 1e6 ||
      static_cast<long>(std::round(twice)) % 2 == 0) {
    throw ValidationError(field, fmt::format("{} is not a half-odd integer", value));
  }
  return static_cast<int>(std::lround(twice));
}

void validate(const QuantumState& s) {
  oracle::validate_quantum_numbers(s.n, s.l, 1);
  if (s.branch == Branch::Minus && s.l == 0) {
    throw ValidationError("branch", "j = l - 1/2 requires l >= 1");
  }
  if (s.two_mj % 2 == 0) throw ValidationError("mj", "must be a half-odd integer");
  if (std::abs(s.two_mj) > s.two_j()) {
    throw ValidationError("mj", fmt::format("|mj| = {} exceeds j = {}", std::abs(s.mj()), s.j()));
  }
  if (s.alt) {
    if (std::abs(s.alt->m_l) > s.l) {
      throw ValidationError("m_l", fmt::format("|m_l| = {} exceeds l = {}", std::abs(s.alt->m_l), s.l));
    }
    if (s.alt->two_ms != 1 && s.alt->two_ms != -1) {
      throw ValidationError("m_s", "must be +1/2 or -1/2");
    }
  }
}

QuantumState make_state(int n, int l, Branch branch, double mj) {
  QuantumState s{n, l, branch, twice_half_odd(mj, "mj"), std::nullopt};
  validate(s);
  return s;
}

std::vector<QuantumState> level_states(int n, int l, Branch branch) {
  QuantumState probe{n, l, branch, 1, std::nullopt};
  validate(probe);
  std::vector<QuantumState> out;
  for (int two_mj = probe.two_j(); two_mj >= -probe.two_j(); two_mj -= 2) {
    out.push_back(QuantumState{n, l, branch, two_mj, std::nullopt});
  }
  return out;
}

std::vector<QuantumState> manifold_states(int n, int l) {
  std::vector<QuantumState> out = level_states(n, l, Branch::Plus);
  if (l >= 1) {
    auto minus = level_states(n, l, Branch::Minus);
    out.insert(out.end(), minus.begin(), minus.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expectation values

double exp_jz(double mj, double hbar) {
  twice_half_odd(mj, "mj");
  return mj * hbar;
}

double exp_sz(int l, Branch branch, double mj, double hbar) {
  twice_half_odd(mj, "mj");
  if (l < 0) throw ValidationError("l", "must be >= 0");
  if (branch == Branch::Minus && l == 0) {
    throw ValidationError("branch", "j = l - 1/2 requires l >= 1");
  }
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  return sign * mj * hbar / (2.0 * l + 1.0);
}

double exp_ls(int m_l, double m_s, double hbar) {
  const int two_ms = twice_half_odd(m_s, "m_s");
  if (two_ms != 1 && two_ms != -1) throw ValidationError("m_s", "must be +1/2 or -1/2");
  return hbar * hbar * m_l * m_s;
}

double exp_p2_paper(int l, double r, double hbar) {
  if (l < 0) throw ValidationError("l", "must be >= 0");
  if (!(r > 0.0)) throw ValidationError("r", "radius must be > 0");
  return hbar * hbar * l * (l + 1.0) / (r * r);
}

// ---------------------------------------------------------------------------
// Shifts

namespace {

// Neumaier's compensated summation.
double compensated_sum(const std::vector<ShiftTerm>& terms) {
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& t : terms) {
    const double v = t.value_erg;
    const double next = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - next) + v;
    } else {
      carry += (v - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

bool deformation_off(const PhysicalParams& p) { return p.epsilon * p.gamma * p.gamma == 0.0; }

// Shared ingredients of every regime.
struct Inputs {
  double hbar, e, m_e, c, alpha, B;
  double larmor;  // eB / (2 m_e c), multiplies angular momenta
  double jz, sz;  // <J_z>, <S_z>
  double p2, p4;  // <p^2>, <p^2>^2
  double radius;
  double sign;    // +1 for j = l + 1/2
  double g_upper, g_lower;  // 1 +- 1/(2l+1), 1 -+ 1/(2l+1)
  double ll;      // l(l+1)
  double mj;
  int l;
};

Inputs gather(const QuantumState& s, const PhysicalParams& params, const ShiftOptions& options) {
  const ConstantsTable& k = params.constants;
  Inputs in{};
  in.hbar = k.hbar;
  in.e = k.e;
  in.m_e = k.m_e;
  in.c = k.c;
  in.alpha = k.alpha;
  in.B = params.B;
  in.larmor = k.e * params.B / (2.0 * k.m_e * k.c);
  in.mj = s.mj();
  in.jz = exp_jz(in.mj, k.hbar);
  in.sz = exp_sz(s.l, s.branch, in.mj, k.hbar);
  in.radius = options.radius.value_or(k.r0);
  if (!(in.radius > 0.0)) throw ValidationError("radius", "must be > 0");
  in.p2 = exp_p2_paper(s.l, in.radius, k.hbar);
  in.p4 = in.p2 * in.p2;
  in.sign = s.branch == Branch::Plus ? 1.0 : -1.0;
  in.g_upper = 1.0 + in.sign / (2.0 * s.l + 1.0);
  in.g_lower = 1.0 - in.sign / (2.0 * s.l + 1.0);
  in.ll = s.l * (s.l + 1.0);
  in.l = s.l;
  return in;
}

constexpr const char* kRefLande = "-(eB/2 m_e c) <J_z + S_z>";
constexpr const char* kRefAnomalous = "-(alpha' eB/2 pi m_e c) <S_z>";
constexpr const char* kRefKinetic = "+(eB/4 m_e^3 c^3) <p^2 (J_z - S_z)>";
constexpr const char* kRefJPlusS = "K (eB/2 m_e c) <J_z + S_z>";
constexpr const char* kRefJMinusS = "K (eB/2 m_e c) <J_z - S_z>";
constexpr const char* kRefRgupAnomalous = "K (eB alpha'/2 m_e c pi) <S_z>";
constexpr const char* kRefRgupP2 = "-K <p^2>/m_e";
constexpr const char* kRefRgupP4 = "+K <p^4>/2 m_e^3 c^2";
constexpr const char* kRefGupCross = "K_gup (eB/2 m_e c) <J_z + S_z>, K_gup = -eps gamma^2 <p^2>";
constexpr const char* kRefGupP2 = "-K_gup <p^2>/m_e";

void add_lande(std::vector<ShiftTerm>& terms, const Inputs& in) {
  terms.push_back({"lande", kRefLande, -in.larmor * (in.jz + in.sz), TermKind::Base});
}

void add_rel(std::vector<ShiftTerm>& terms, const Inputs& in) {
  const double kinetic_prefactor = in.e * in.B / (4.0 * in.m_e * in.m_e * in.m_e * in.c * in.c * in.c);
  terms.push_back({"anomalous_moment", kRefAnomalous,
                   -(in.alpha / std::numbers::pi) * in.larmor * in.sz, TermKind::Base});
  terms.push_back({"relativistic_kinetic", kRefKinetic,
                   kinetic_prefactor * in.p2 * (in.jz - in.sz), TermKind::Base});
}

void add_rgup_bracket(std::vector<ShiftTerm>& terms, const Inputs& in, double K) {
  const double m3c2 = 2.0 * in.m_e * in.m_e * in.m_e * in.c * in.c;
  terms.push_back({"rgup_j_plus_s", kRefJPlusS, K * in.larmor * (in.jz + in.sz),
                   TermKind::Correction});
  terms.push_back({"rgup_j_minus_s", kRefJMinusS, K * in.larmor * (in.jz - in.sz),
                   TermKind::Correction});
  terms.push_back({"rgup_anomalous", kRefRgupAnomalous,
                   K * (in.alpha / std::numbers::pi) * in.larmor * in.sz, TermKind::Correction});
  terms.push_back({"rgup_p2", kRefRgupP2, -K * in.p2 / in.m_e, TermKind::LevelShift});
  terms.push_back({"rgup_p4", kRefRgupP4, K * in.p4 / m3c2, TermKind::LevelShift});
}

void add_gup_bracket(std::vector<ShiftTerm>& terms, const Inputs& in, double K_gup) {
  terms.push_back({"gup_cross", kRefGupCross, K_gup * in.larmor * (in.jz + in.sz),
                   TermKind::Correction});
  terms.push_back({"gup_p2", kRefGupP2, -K_gup * in.p2 / in.m_e, TermKind::LevelShift});
}

// Closed forms as originally printed, coefficient for coefficient.
void add_published_rgup(std::vector<ShiftTerm>& terms, const Inputs& in, double K,
                        bool with_bracket) {
  const double h = in.hbar;
  const double r2 = in.radius * in.radius;
  const double kinetic_prefactor = in.e * in.B / (4.0 * in.m_e * in.m_e * in.m_e * in.c * in.c * in.c);
  const double alpha_pi = in.alpha / std::numbers::pi;
  const double two_l1 = 2.0 * in.l + 1.0;

  terms.push_back({"lande", "published: -(eB hbar/2 m_e c) m' [1 +- 1/(2l+1)]",
                   -in.larmor * h * in.mj * in.g_upper, TermKind::Base});
  terms.push_back({"anomalous_moment", "published: -+(alpha' eB/2 pi m_e c) m' hbar/(2l+1)",
                   -in.sign * alpha_pi * in.larmor * in.mj * h / two_l1, TermKind::Base});
  terms.push_back({"relativistic_kinetic",
                   "published: +(eB/4 m_e^3 c^3) (m' hbar^2/r0^2) l(l+1) (1 -+ 1/(2l+1))",
                   kinetic_prefactor * in.mj * h * h / r2 * in.ll * in.g_lower, TermKind::Base});
  if (!with_bracket) return;
  const double m3c2 = 2.0 * in.m_e * in.m_e * in.m_e * in.c * in.c;
  terms.push_back({"rgup_j_plus_s", "published: K (eB/2 m_e c) m' hbar (1 +- 1/(2l+1))",
                   K * in.larmor * in.mj * h * in.g_upper, TermKind::Correction});
  terms.push_back({"rgup_j_minus_s", "published: K (eB/2 m_e c) m' hbar (1 -+ 1/(2l+1))",
                   K * in.larmor * in.mj * h * in.g_lower, TermKind::Correction});
  terms.push_back({"rgup_anomalous", "published: -+K (eB alpha'/2 m_e c pi) m' hbar/(2l+1)",
                   -in.sign * K * alpha_pi * in.larmor * in.mj * h / two_l1, TermKind::Correction});
  terms.push_back({"rgup_p2", "published: -K hbar^2 l(l+1)/m_e", -K * h * h * in.ll / in.m_e,
                   TermKind::LevelShift});
  terms.push_back({"rgup_p4", "published: +K hbar^4 (l(l+1))^2/(2 m_e^3 c^2 r0^4)",
                   K * h * h * h * h * in.ll * in.ll / (m3c2 * r2 * r2), TermKind::LevelShift});
}

void add_published_gup(std::vector<ShiftTerm>& terms, const Inputs& in, double eps_gamma2,
                       bool with_bracket) {
  const double h = in.hbar;
  const double r2 = in.radius * in.radius;
  terms.push_back({"lande", "published: -(eB hbar/2 m_e c) m' [1 +- 1/(2l+1)]",
                   -in.larmor * h * in.mj * in.g_upper, TermKind::Base});
  if (!with_bracket) return;
  terms.push_back({"gup_cross",
                   "published: -(eps gamma^2/m_e) (eB m'/c) (hbar^2/r0^2) l(l+1) (1 +- 1/(2l+1))",
                   -(eps_gamma2 / in.m_e) * (in.e * in.B * in.mj / in.c) * (h * h / r2) * in.ll *
                       in.g_upper,
                   TermKind::Correction});
  terms.push_back({"gup_p2", "published: +(eps gamma^2/m_e) hbar^4 (l(l+1))^2/r0^4",
                   (eps_gamma2 / in.m_e) * h * h * h * h * in.ll * in.ll / (r2 * r2),
                   TermKind::LevelShift});
}

}  // namespace

const ShiftTerm* ShiftBreakdown::find(std::string_view label) const {
  auto it = std::find_if(terms.begin(), terms.end(),
                         [label](const ShiftTerm& t) { return t.label == label; });
  return it == terms.end() ? nullptr : &*it;
}

double ShiftBreakdown::magnetic_total() const {
  std::vector<ShiftTerm> magnetic;
  std::copy_if(terms.begin(), terms.end(), std::back_inserter(magnetic),
               [](const ShiftTerm& t) { return t.kind != TermKind::LevelShift; });
  return compensated_sum(magnetic);
}

std::vector<std::string> regime_term_labels(Regime regime) {
  switch (regime) {
    case Regime::Lande: return {"lande"};
    case Regime::Rel: return {"lande", "anomalous_moment", "relativistic_kinetic"};
    case Regime::Gup: return {"lande", "gup_cross", "gup_p2"};
    case Regime::Rgup:
      return {"lande",          "anomalous_moment", "relativistic_kinetic",
              "rgup_j_plus_s",  "rgup_j_minus_s",   "rgup_anomalous",
              "rgup_p2",        "rgup_p4"};
  }
  return {};
}

ShiftBreakdown energy_shift_B(const QuantumState& state, const PhysicalParams& params,
                              Regime regime, const ShiftOptions& options) {
  validate(state);
  if ((regime == Regime::Gup || regime == Regime::Rgup) && params.epsilon < 0.0) {
    throw ValidationError("epsilon", "must be >= 0 for deformed regimes");
  }
  const Inputs in = gather(state, params, options);
  const bool bracket = !deformation_off(params);
  const bool published = options.mode == Mode::AsPublished;
  const double eps_gamma2 = params.epsilon * params.gamma * params.gamma;

  ShiftBreakdown out{regime, options.mode, {}, 0.0, 0.0};
  switch (regime) {
    case Regime::Lande:
      add_lande(out.terms, in);
      break;
    case Regime::Rel:
      add_lande(out.terms, in);
      add_rel(out.terms, in);
      break;
    case Regime::Rgup: {
      const double K = params.correction_scale();
      out.correction_scale = bracket ? K : 0.0;
      if (published) {
        add_published_rgup(out.terms, in, K, bracket);
      } else {
        add_lande(out.terms, in);
        add_rel(out.terms, in);
        if (bracket) add_rgup_bracket(out.terms, in, K);
      }
      break;
    }
    case Regime::Gup: {
      const double K_gup = -eps_gamma2 * in.p2;
      out.correction_scale = bracket ? K_gup : 0.0;
      if (published) {
        add_published_gup(out.terms, in, eps_gamma2, bracket);
      } else {
        add_lande(out.terms, in);
        if (bracket) add_gup_bracket(out.terms, in, K_gup);
      }
      break;
    }
  }
  out.total = compensated_sum(out.terms);
  return out;
}

double hls_shift(const QuantumState& state, const PhysicalParams& params) {
  validate(state);
  if (!state.alt) throw ValidationError("alt", "spin-orbit shift needs the (m_l, m_s) basis");
  if (state.l == 0) return 0.0;
  const ConstantsTable& k = params.constants;
  const double ls = exp_ls(state.alt->m_l, 0.5 * state.alt->two_ms, k.hbar);
  const double inv_r3 = oracle::radial_expectation_closed_form(state.n, state.l, params.Z, -3, k.r0);
  const double factor = 1.0 - params.correction_scale();
  return factor * ls / (2.0 * k.m_e * k.m_e * k.c * k.c) * params.Z * k.e * k.e * inv_r3;
}

// ---------------------------------------------------------------------------
// Lines

std::vector<Line> zeeman_lines(std::span<const QuantumState> upper,
                               std::span<const QuantumState> lower, const PhysicalParams& params,
                               Regime regime, const ShiftOptions& options) {
  if (upper.empty()) throw ValidationError("upper", "empty level set");
  if (lower.empty()) throw ValidationError("lower", "empty level set");

  std::vector<ShiftBreakdown> lower_shifts;
  lower_shifts.reserve(lower.size());
  for (const auto& s : lower) lower_shifts.push_back(energy_shift_B(s, params, regime, options));

  std::vector<Line> lines;
  for (const auto& u : upper) {
    const ShiftBreakdown us = energy_shift_B(u, params, regime, options);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      const QuantumState& d = lower[i];
      if (std::abs(u.l - d.l) != 1) continue;
      const int dm = u.two_mj - d.two_mj;
      if (std::abs(dm) > 2) continue;
      const Polarization pol =
          dm == 0 ? Polarization::Pi : (dm > 0 ? Polarization::SigmaPlus : Polarization::SigmaMinus);
      lines.push_back(Line{u, d, pol, us.total - lower_shifts[i].total,
                           us.magnetic_total() - lower_shifts[i].magnetic_total()});
    }
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Discrepancies

namespace {

bool near(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

struct Classification {
  DiscrepancyClass cls;
  std::string detail;
};

Classification classify(const std::string& label, double ratio, double hbar, double radius) {
  if (near(ratio, -1.0)) {
    if (label.find("anomalous") != std::string::npos) {
      return {DiscrepancyClass::SignOfAlphaTerm, "derived/published = -1"};
    }
    return {DiscrepancyClass::Uncatalogued, "derived/published = -1"};
  }
  if (near(ratio, hbar)) return {DiscrepancyClass::MissingHbarPower, "derived/published = hbar"};
  if (near(ratio, 1.0 / hbar)) {
    return {DiscrepancyClass::MissingHbarPower, "derived/published = 1/hbar"};
  }
  const double r2 = radius * radius;
  if (near(ratio, 1.0 / r2)) return {DiscrepancyClass::MissingR0Power, "derived/published = 1/r0^2"};
  if (near(ratio, r2)) return {DiscrepancyClass::MissingR0Power, "derived/published = r0^2"};
  if (near(ratio, 2.0)) return {DiscrepancyClass::Factor2, "derived/published = 2"};
  if (near(ratio, 0.5)) return {DiscrepancyClass::Factor2, "derived/published = 1/2"};
  if (near(ratio, 0.5 * hbar)) return {DiscrepancyClass::Factor2, "derived/published = hbar/2"};
  if (near(ratio, 2.0 / hbar)) return {DiscrepancyClass::Factor2, "derived/published = 2/hbar"};
  return {DiscrepancyClass::Uncatalogued, fmt::format("derived/published = {:.6e}", ratio)};
}

}  // namespace

DiscrepancyReport discrepancy_report(const QuantumState& state, const PhysicalParams& params,
                                     const ShiftOptions& options) {
  validate(state);
  const double radius = options.radius.value_or(params.constants.r0);
  DiscrepancyReport report{state, {}, 0};
  for (Regime regime : {Regime::Rgup, Regime::Gup}) {
    ShiftOptions derived_opts = options;
    derived_opts.mode = Mode::Derived;
    ShiftOptions published_opts = options;
    published_opts.mode = Mode::AsPublished;
    const ShiftBreakdown derived = energy_shift_B(state, params, regime, derived_opts);
    const ShiftBreakdown published = energy_shift_B(state, params, regime, published_opts);
    for (const auto& term : derived.terms) {
      const ShiftTerm* other = published.find(term.label);
      const double d = term.value_erg;
      const double p = other ? other->value_erg : 0.0;
      if (d == 0.0 && p == 0.0) continue;
      if (d != 0.0 && p != 0.0 && near(d, p)) {
        ++report.agreeing_terms;
        continue;
      }
      DiscrepancyEntry entry{regime, term.label, d, p, p != 0.0 ? d / p : 0.0,
                             DiscrepancyClass::Uncatalogued, ""};
      if (d != 0.0 && p != 0.0) {
        auto c = classify(term.label, entry.ratio, params.constants.hbar, radius);
        entry.cls = c.cls;
        entry.detail = std::move(c.detail);
      } else {
        entry.detail = "one side vanishes";
      }
      report.differences.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace rgupz::spectrum
