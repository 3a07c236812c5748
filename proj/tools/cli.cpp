#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "rgupz/rgupz.h"

namespace rgupz::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// C API plumbing

class ApiError : public std::runtime_error {
 public:
  ApiError(rgupz_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  rgupz_status status() const { return status_; }

 private:
  rgupz_status status_;
};

void check(rgupz_status status) {
  if (status != RGUPZ_OK) throw ApiError(status, rgupz_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using ParamsPtr = std::unique_ptr<rgupz_params, Deleter<rgupz_params, rgupz_params_destroy>>;
using BreakdownPtr = std::unique_ptr<rgupz_breakdown, Deleter<rgupz_breakdown, rgupz_breakdown_destroy>>;
using LinesPtr = std::unique_ptr<rgupz_lines, Deleter<rgupz_lines, rgupz_lines_destroy>>;
using ReportPtr = std::unique_ptr<rgupz_report, Deleter<rgupz_report, rgupz_report_destroy>>;
using DiscrepancyPtr =
    std::unique_ptr<rgupz_discrepancy, Deleter<rgupz_discrepancy, rgupz_discrepancy_destroy>>;

rgupz_constants constants() {
  rgupz_constants k{};
  check(rgupz_constants_builtin(&k));
  return k;
}

// ---------------------------------------------------------------------------
// Formatting

double clean(double v) { return v == 0.0 ? 0.0 : v; }  // folds -0 into 0
std::string num(double v) { return fmt::format("{}", clean(v)); }
std::string sci(double v) { return fmt::format("{:.9e}", clean(v)); }

std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return fmt::format("{}/2", twice);
}

int two_j(const rgupz_state& s) { return s.branch == RGUPZ_BRANCH_PLUS ? 2 * s.l + 1 : 2 * s.l - 1; }

std::string state_text(const rgupz_state& s) {
  return fmt::format("n={} l={} j={} mj={}", s.n, s.l, half(two_j(s)), half(s.two_mj));
}

const char* branch_text(const rgupz_state& s) {
  return s.branch == RGUPZ_BRANCH_PLUS ? "plus" : "minus";
}

Json state_json(const rgupz_state& s) {
  Json j;
  j["n"] = s.n;
  j["l"] = s.l;
  j["branch"] = branch_text(s);
  j["j"] = 0.5 * two_j(s);
  j["mj"] = 0.5 * s.two_mj;
  if (s.has_alt) {
    j["m_l"] = s.m_l;
    j["m_s"] = 0.5 * s.two_ms;
  }
  return j;
}

double to_unit(double erg, const std::string& unit) {
  double out = 0.0;
  check(rgupz_convert_energy(erg, "erg", unit.c_str(), &out));
  return clean(out);
}

std::string upper_tag(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// ---------------------------------------------------------------------------
// Flags

const std::vector<std::string> kRegimes = {"lande", "rel", "gup", "rgup", "LANDE", "REL", "GUP", "RGUP"};
const std::vector<std::string> kModes = {"derived", "as-published"};
const std::vector<std::string> kUnits = {"eV", "erg", "cm-1", "Hz"};
const std::vector<std::string> kFormats = {"table", "json", "csv"};

struct SettingFlags {
  std::optional<std::string> B_tesla, epsilon, gamma, mass, Z, regime, mode, radius, unit;
  bool json = false;
  bool csv = false;

  std::map<std::string, std::string> collect() const {
    std::map<std::string, std::string> out;
    auto put = [&out](const char* key, const std::optional<std::string>& v) {
      if (v) out[key] = *v;
    };
    put("field.B_tesla", B_tesla);
    put("deform.epsilon", epsilon);
    put("deform.gamma", gamma);
    put("particle.mass_g", mass);
    put("particle.Z", Z);
    put("model.regime", regime);
    put("model.mode", mode);
    put("model.radius_cm", radius);
    put("output.unit", unit);
    if (json && csv) throw UsageError("--json and --csv are mutually exclusive");
    if (json) out["output.format"] = "json";
    if (csv) out["output.format"] = "csv";
    return out;
  }
};

struct StateFlags {
  std::optional<int> n;
  int l = 0;
  std::string branch = "plus";
  std::string mj = "0.5";
  std::optional<int> m_l;
  std::optional<std::string> m_s;
};

void add_physics_flags(CLI::App* sub, SettingFlags& f) {
  sub->add_option("--B-tesla", f.B_tesla, "Field magnitude in tesla");
  sub->add_option("--epsilon", f.epsilon, "Deformation strength");
  sub->add_option("--gamma", f.gamma, "'planck' or an explicit value in s/(g cm)");
  sub->add_option("--mass", f.mass, "'electron' or a mass in grams");
  sub->add_option("--Z", f.Z, "Nuclear charge");
}

void add_model_flags(CLI::App* sub, SettingFlags& f) {
  sub->add_option("--regime", f.regime, "lande | rel | gup | rgup");
  sub->add_option("--mode", f.mode, "derived | as-published");
  sub->add_option("--radius-cm", f.radius, "Radius for <p^2>; 'bohr' for r0");
}

void add_output_flags(CLI::App* sub, SettingFlags& f, bool with_unit, bool with_csv) {
  if (with_unit) sub->add_option("--unit", f.unit, "eV | erg | cm-1 | Hz");
  sub->add_flag("--json", f.json, "Emit one JSON object");
  if (with_csv) sub->add_flag("--csv", f.csv, "Emit CSV");
}

void add_state_flags(CLI::App* sub, StateFlags& s, bool with_alt) {
  sub->add_option("--n", s.n, "Principal quantum number (default l + 1)");
  sub->add_option("--l", s.l, "Orbital quantum number")->capture_default_str();
  sub->add_option("--branch", s.branch, "plus (j = l + 1/2) | minus (j = l - 1/2)")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  sub->add_option("--mj", s.mj, "Magnetic quantum number m_j, e.g. 1.5")->capture_default_str();
  if (with_alt) {
    sub->add_option("--m-l", s.m_l, "m_l of the uncoupled basis (enables the spin-orbit value)");
    sub->add_option("--m-s", s.m_s, "m_s of the uncoupled basis, 0.5 or -0.5");
  }
}

double flag_number(const std::string& flag, const std::string& raw) {
  auto v = parse_double(raw);
  if (!v) throw UsageError(fmt::format("{}: '{}' is not a number", flag, raw));
  return *v;
}

rgupz_state make_state(const StateFlags& f) {
  const double mj = flag_number("--mj", f.mj);
  const int n = f.n.value_or(f.l + 1);
  const rgupz_branch branch = f.branch == "minus" ? RGUPZ_BRANCH_MINUS : RGUPZ_BRANCH_PLUS;
  rgupz_state s{};
  check(rgupz_state_make(n, f.l, branch, mj, &s));
  if (f.m_l.has_value() != f.m_s.has_value()) {
    throw UsageError("--m-l and --m-s must be given together");
  }
  if (f.m_l) {
    const double ms = flag_number("--m-s", *f.m_s);
    s.has_alt = 1;
    s.m_l = *f.m_l;
    s.two_ms = static_cast<int>(std::lround(2.0 * ms));
    if (2.0 * ms != s.two_ms) s.two_ms = 0;  // rejected by validation below
    check(rgupz_state_validate(&s));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Resolved settings

struct Context {
  std::ostream& out;
  RunConfig cfg;
  rgupz_constants k;

  std::string format() const { return cfg.choice("output.format", kFormats); }
  std::string unit() const { return cfg.choice("output.unit", kUnits); }
  std::string regime() const { return upper_tag(cfg.choice("model.regime", kRegimes)); }
  std::string mode() const { return cfg.choice("model.mode", kModes); }

  double mass() const {
    if (cfg.get("particle.mass_g") == "electron") return k.m_e;
    return cfg.number("particle.mass_g");
  }

  bool gamma_planck() const { return cfg.get("deform.gamma") == "planck"; }
  double gamma() const { return gamma_planck() ? 0.0 : cfg.number("deform.gamma"); }

  std::optional<double> radius() const {
    if (cfg.get("model.radius_cm") == "bohr") return std::nullopt;
    return cfg.number("model.radius_cm");
  }

  ParamsPtr params(double B_tesla) const {
    rgupz_params* raw = nullptr;
    check(rgupz_params_create(B_tesla * RGUPZ_GAUSS_PER_TESLA, cfg.number("deform.epsilon"),
                              gamma_planck() ? 1 : 0, gamma(), mass(), cfg.integer("particle.Z"), &raw));
    return ParamsPtr(raw);
  }

  ParamsPtr params() const { return params(cfg.number("field.B_tesla")); }

  // Keeps the regime and mode strings alive for the options struct.
  struct ShiftOpts {
    std::string regime, mode;
    rgupz_shift_options raw{};
  };

  ShiftOpts shift_options() const {
    ShiftOpts o{regime(), mode(), {}};
    o.raw.regime = o.regime.c_str();
    o.raw.mode = o.mode.c_str();
    if (auto r = radius()) {
      o.raw.has_radius = 1;
      o.raw.radius_cm = *r;
    }
    return o;
  }

  // Validates every setting a command may read, so that bad values always
  // surface as usage errors before any physics runs.
  void validate_common() const {
    format();
    unit();
    regime();
    mode();
    cfg.number("field.B_tesla");
    cfg.number("deform.epsilon");
    gamma();
    mass();
    cfg.integer("particle.Z");
    radius();
  }
};

struct Term {
  std::string label, ref, kind;
  double erg;
};

struct Breakdown {
  std::string regime, mode;
  std::vector<Term> terms;
  double total = 0.0, scale = 0.0;
};

Breakdown shift(const rgupz_params* params, const rgupz_state& state, const rgupz_shift_options& opts) {
  rgupz_breakdown* raw = nullptr;
  check(rgupz_shift(params, &state, &opts, &raw));
  BreakdownPtr b(raw);
  Breakdown out{rgupz_breakdown_regime(b.get()), rgupz_breakdown_mode(b.get()), {},
                rgupz_breakdown_total(b.get()), rgupz_breakdown_correction_scale(b.get())};
  for (size_t i = 0; i < rgupz_breakdown_term_count(b.get()); ++i) {
    rgupz_term t{};
    check(rgupz_breakdown_term(b.get(), i, &t));
    out.terms.push_back({t.label, t.ref, t.kind_tag, t.value_erg});
  }
  return out;
}

std::vector<std::string> regime_labels(const std::string& regime) {
  size_t count = 0;
  check(rgupz_regime_label_count(regime.c_str(), &count));
  std::vector<std::string> out;
  for (size_t i = 0; i < count; ++i) {
    const char* label = nullptr;
    check(rgupz_regime_label(regime.c_str(), i, &label));
    out.emplace_back(label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_constants(Context& ctx) {
  const size_t count = rgupz_constant_entry_count();
  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (size_t i = 0; i < count; ++i) {
      const char* name = nullptr;
      const char* unit = nullptr;
      double value = 0.0;
      check(rgupz_constant_entry(i, &name, &value, &unit));
      arr.push_back(Json{{"name", name}, {"value", value}, {"unit", unit}});
    }
    ctx.out << Json{{"constants", arr}}.dump(2) << '\n';
    return kExitOk;
  }
  for (size_t i = 0; i < count; ++i) {
    const char* name = nullptr;
    const char* unit = nullptr;
    double value = 0.0;
    check(rgupz_constant_entry(i, &name, &value, &unit));
    fmt::print(ctx.out, "{} = {} {}\n", name, num(value), unit);
  }
  return kExitOk;
}

int cmd_shift(Context& ctx, const StateFlags& sf) {
  ctx.validate_common();
  const rgupz_state state = make_state(sf);
  const auto params = ctx.params();
  const auto opts = ctx.shift_options();
  const Breakdown b = shift(params.get(), state, opts.raw);
  const std::string unit = ctx.unit();

  std::optional<double> spin_orbit;
  if (state.has_alt) {
    double v = 0.0;
    check(rgupz_hls_shift(params.get(), &state, &v));
    spin_orbit = v;
  }

  const std::string fmt_tag = ctx.format();
  if (fmt_tag == "csv") {
    fmt::print(ctx.out, "regime,mode,label,kind,value_erg,value_{}\n", unit);
    for (const auto& t : b.terms) {
      fmt::print(ctx.out, "{},{},{},{},{},{}\n", b.regime, b.mode, t.label, t.kind, num(t.erg),
                 num(to_unit(t.erg, unit)));
    }
    fmt::print(ctx.out, "{},{},TOTAL,total,{},{}\n", b.regime, b.mode, num(b.total),
               num(to_unit(b.total, unit)));
    return kExitOk;
  }
  if (fmt_tag == "json") {
    rgupz_params_info info{};
    check(rgupz_params_info_get(params.get(), &info));
    Json j;
    j["command"] = "shift";
    j["regime"] = b.regime;
    j["mode"] = b.mode;
    j["state"] = state_json(state);
    j["params"] = Json{{"B_gauss", info.B}, {"epsilon", info.epsilon}, {"gamma", info.gamma},
                       {"mass_g", info.m}, {"Z", info.Z}};
    j["correction_scale"] = clean(b.scale);
    j["unit"] = unit;
    Json terms = Json::array();
    for (const auto& t : b.terms) {
      Json row{{"label", t.label}, {"paper_ref", t.ref}, {"kind", t.kind},
               {"value_erg", clean(t.erg)}, {"value_eV", to_unit(t.erg, "eV")}};
      if (unit != "eV" && unit != "erg") row["value_" + unit] = to_unit(t.erg, unit);
      terms.push_back(row);
    }
    j["terms"] = terms;
    j["total_erg"] = clean(b.total);
    j["total_eV"] = to_unit(b.total, "eV");
    if (unit != "eV" && unit != "erg") j["total_" + unit] = to_unit(b.total, unit);
    if (spin_orbit) j["spin_orbit_erg"] = clean(*spin_orbit);
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }

  fmt::print(ctx.out, "{:<18}{}\n", "regime", b.regime);
  fmt::print(ctx.out, "{:<18}{}\n", "mode", b.mode);
  fmt::print(ctx.out, "{:<18}{}\n", "state", state_text(state));
  fmt::print(ctx.out, "{:<18}{} T\n", "B", num(ctx.cfg.number("field.B_tesla")));
  fmt::print(ctx.out, "{:<18}{}\n", "correction_scale", sci(b.scale));
  fmt::print(ctx.out, "\n{:<22}{:<13}{:>18}\n", "label", "kind", "value_" + unit);
  for (const auto& t : b.terms) {
    fmt::print(ctx.out, "{:<22}{:<13}{:>18}\n", t.label, t.kind, sci(to_unit(t.erg, unit)));
  }
  fmt::print(ctx.out, "{:<22}{:<13}{:>18}\n", "TOTAL", "", sci(to_unit(b.total, unit)));
  if (spin_orbit) {
    fmt::print(ctx.out, "\n{:<22}{:<13}{:>18}\n", "spin_orbit", "separate", sci(to_unit(*spin_orbit, unit)));
  }
  return kExitOk;
}

struct SweepFlags {
  std::string param;
  std::optional<std::string> from, to, values;
  std::optional<int> steps;
};

std::vector<double> sweep_values(const SweepFlags& f) {
  std::vector<double> out;
  if (f.values) {
    if (f.from || f.to || f.steps) throw UsageError("--values cannot be combined with --from/--to/--steps");
    std::stringstream ss(*f.values);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(flag_number("--values", item));
    if (out.empty()) throw UsageError("--values: empty list");
  } else {
    if (!f.from || !f.to || !f.steps) throw UsageError("sweep needs --values or all of --from, --to, --steps");
    const double lo = flag_number("--from", *f.from);
    const double hi = flag_number("--to", *f.to);
    const int steps = *f.steps;
    if (steps < 1) throw UsageError("--steps: must be >= 1");
    if (steps == 1) {
      out.push_back(lo);
    } else {
      for (int i = 0; i < steps; ++i) {
        out.push_back(i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
      }
    }
  }
  if (f.param == "l" || f.param == "n") {
    for (double v : out) {
      if (v != std::floor(v)) throw UsageError(fmt::format("--param {}: {} is not an integer", f.param, v));
    }
  }
  std::stable_sort(out.begin(), out.end());
  return out;
}

int cmd_sweep(Context& ctx, const StateFlags& sf, const SweepFlags& wf) {
  ctx.validate_common();
  const std::vector<double> values = sweep_values(wf);
  const std::string regime = ctx.regime();
  const std::string unit = ctx.unit();
  const auto labels = regime_labels(regime);
  const auto opts = ctx.shift_options();

  struct Row {
    double x;
    std::vector<double> terms;
    double total;
  };
  std::vector<Row> rows;
  for (double x : values) {
    StateFlags s = sf;
    double B_tesla = ctx.cfg.number("field.B_tesla");
    std::optional<double> epsilon;
    if (wf.param == "B") B_tesla = x;
    if (wf.param == "epsilon") epsilon = x;
    if (wf.param == "l") s.l = static_cast<int>(x);
    if (wf.param == "n") s.n = static_cast<int>(x);
    if (wf.param == "mj") s.mj = fmt::format("{}", x);
    const rgupz_state state = make_state(s);

    ParamsPtr params;
    if (epsilon) {
      rgupz_params* raw = nullptr;
      check(rgupz_params_create(B_tesla * RGUPZ_GAUSS_PER_TESLA, *epsilon, ctx.gamma_planck() ? 1 : 0,
                                ctx.gamma(), ctx.mass(), ctx.cfg.integer("particle.Z"), &raw));
      params.reset(raw);
    } else {
      params = ctx.params(B_tesla);
    }
    const Breakdown b = shift(params.get(), state, opts.raw);
    Row row{x, {}, b.total};
    for (const auto& label : labels) {
      auto it = std::find_if(b.terms.begin(), b.terms.end(), [&](const Term& t) { return t.label == label; });
      row.terms.push_back(it == b.terms.end() ? 0.0 : it->erg);
    }
    rows.push_back(std::move(row));
  }

  const std::string column = wf.param == "B" ? "B_tesla" : wf.param;
  if (ctx.format() == "json") {
    Json j;
    j["command"] = "sweep";
    j["param"] = column;
    j["regime"] = regime;
    j["mode"] = ctx.mode();
    j["unit"] = unit;
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json terms = Json::object();
      for (size_t i = 0; i < labels.size(); ++i) terms[labels[i]] = to_unit(row.terms[i], unit);
      arr.push_back(Json{{column, row.x}, {"terms", terms}, {"total", to_unit(row.total, unit)}});
    }
    j["rows"] = arr;
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }
  fmt::print(ctx.out, "{},regime", column);
  for (const auto& label : labels) fmt::print(ctx.out, ",{}_{}", label, unit);
  fmt::print(ctx.out, ",total_{}\n", unit);
  for (const auto& row : rows) {
    fmt::print(ctx.out, "{},{}", num(row.x), regime);
    for (double v : row.terms) fmt::print(ctx.out, ",{}", num(to_unit(v, unit)));
    fmt::print(ctx.out, ",{}\n", num(to_unit(row.total, unit)));
  }
  return kExitOk;
}

struct LinesFlags {
  int n_upper = 2, l_upper = 1, n_lower = 1, l_lower = 0;
  std::string branch_upper = "all", branch_lower = "all";
};

std::vector<rgupz_state> level_set(int n, int l, const std::string& branch) {
  size_t count = 0;
  std::vector<rgupz_state> out;
  if (branch == "all") {
    check(rgupz_manifold_states(n, l, nullptr, 0, &count));
    out.resize(count);
    check(rgupz_manifold_states(n, l, out.data(), out.size(), &count));
  } else {
    const rgupz_branch b = branch == "minus" ? RGUPZ_BRANCH_MINUS : RGUPZ_BRANCH_PLUS;
    check(rgupz_level_states(n, l, b, nullptr, 0, &count));
    out.resize(count);
    check(rgupz_level_states(n, l, b, out.data(), out.size(), &count));
  }
  return out;
}

int cmd_lines(Context& ctx, const LinesFlags& lf) {
  ctx.validate_common();
  const auto upper = level_set(lf.n_upper, lf.l_upper, lf.branch_upper);
  const auto lower = level_set(lf.n_lower, lf.l_lower, lf.branch_lower);
  const auto params = ctx.params();
  const auto opts = ctx.shift_options();
  rgupz_lines* raw = nullptr;
  check(rgupz_lines_create(params.get(), upper.data(), upper.size(), lower.data(), lower.size(),
                           &opts.raw, &raw));
  LinesPtr lines(raw);
  std::vector<rgupz_line> all(rgupz_lines_count(lines.get()));
  for (size_t i = 0; i < all.size(); ++i) check(rgupz_lines_get(lines.get(), i, &all[i]));
  const std::string unit = ctx.unit();

  const std::string fmt_tag = ctx.format();
  if (fmt_tag == "json") {
    Json arr = Json::array();
    for (const auto& line : all) {
      arr.push_back(Json{{"upper", state_json(line.upper)},
                         {"lower", state_json(line.lower)},
                         {"polarization", line.polarization_tag},
                         {"delta_erg", clean(line.delta_erg)},
                         {"delta_" + unit, to_unit(line.delta_erg, unit)},
                         {"magnetic_delta_" + unit, to_unit(line.magnetic_delta_erg, unit)}});
    }
    Json j{{"command", "lines"}, {"regime", opts.regime},
           {"mode", opts.mode}, {"count", all.size()}, {"lines", arr}};
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }
  if (fmt_tag == "csv") {
    fmt::print(ctx.out,
               "upper_n,upper_l,upper_j,upper_mj,lower_n,lower_l,lower_j,lower_mj,polarization,"
               "delta_{0},magnetic_delta_{0}\n",
               unit);
    for (const auto& line : all) {
      fmt::print(ctx.out, "{},{},{},{},{},{},{},{},{},{},{}\n", line.upper.n, line.upper.l,
                 half(two_j(line.upper)), half(line.upper.two_mj), line.lower.n, line.lower.l,
                 half(two_j(line.lower)), half(line.lower.two_mj), line.polarization_tag,
                 num(to_unit(line.delta_erg, unit)), num(to_unit(line.magnetic_delta_erg, unit)));
    }
    return kExitOk;
  }
  fmt::print(ctx.out, "{:<24}{:<24}{:<8}{:>18}{:>18}\n", "upper", "lower", "pol", "delta_" + unit,
             "magnetic_" + unit);
  for (const auto& line : all) {
    fmt::print(ctx.out, "{:<24}{:<24}{:<8}{:>18}{:>18}\n", state_text(line.upper),
               state_text(line.lower), line.polarization_tag, sci(to_unit(line.delta_erg, unit)),
               sci(to_unit(line.magnetic_delta_erg, unit)));
  }
  fmt::print(ctx.out, "lines {}\n", all.size());
  return kExitOk;
}

struct AlgebraFlags {
  std::string which = "all";
  std::string against = "derived";
};

int cmd_verify_algebra(Context& ctx, const AlgebraFlags& af) {
  const std::string fmt_tag = ctx.format();
  std::vector<std::string> cases;
  if (af.which == "all") {
    cases = {"nonrel-special", "rel-linear", "rel-position-position"};
  } else {
    cases = {af.which};
  }
  bool all_pass = true;
  Json reports = Json::array();
  for (size_t c = 0; c < cases.size(); ++c) {
    rgupz_report* raw = nullptr;
    check(rgupz_verify_algebra(cases[c].c_str(), af.against.c_str(), &raw));
    ReportPtr report(raw);
    const bool pass = rgupz_report_pass(report.get()) != 0;
    all_pass = all_pass && pass;
    if (fmt_tag == "json") {
      Json entries = Json::array();
      for (size_t i = 0; i < rgupz_report_entry_count(report.get()); ++i) {
        rgupz_report_entry e{};
        check(rgupz_report_entry_get(report.get(), i, &e));
        entries.push_back(Json{{"label", e.label}, {"computed", e.computed}, {"target", e.target},
                               {"residual", e.residual}, {"pass", e.pass != 0}});
      }
      Json notes = Json::array();
      for (size_t i = 0; i < rgupz_report_annotation_count(report.get()); ++i) {
        const char* note = nullptr;
        check(rgupz_report_annotation(report.get(), i, &note));
        notes.push_back(note);
      }
      reports.push_back(Json{{"case", rgupz_report_case(report.get())},
                             {"against", af.against},
                             {"order", rgupz_report_order(report.get())},
                             {"pass", pass},
                             {"annotations", notes},
                             {"entries", entries}});
    } else {
      if (c > 0) ctx.out << '\n';
      ctx.out << rgupz_report_text(report.get());
    }
  }
  if (fmt_tag == "json") {
    ctx.out << Json{{"command", "verify-algebra"}, {"pass", all_pass}, {"reports", reports}}.dump(2)
            << '\n';
  }
  return all_pass ? kExitOk : kExitVerification;
}

struct DispersionFlags {
  std::optional<std::string> mc, eps_gamma2;
  int order = 1;
};

int cmd_dispersion(Context& ctx, const DispersionFlags& df) {
  double mc_squared = 0.0;
  double eps_gamma2 = 0.0;
  std::string units;
  if (df.mc || df.eps_gamma2) {
    if (!df.mc || !df.eps_gamma2) throw UsageError("--mc and --eps-gamma2 must be given together");
    const double mc = flag_number("--mc", *df.mc);
    mc_squared = mc * mc;
    eps_gamma2 = flag_number("--eps-gamma2", *df.eps_gamma2);
    units = "test";
  } else {
    const double m = ctx.mass();
    const double eps = ctx.cfg.number("deform.epsilon");
    double gamma = ctx.gamma();
    if (ctx.gamma_planck()) gamma = 1.0 / (ctx.k.m_planck * ctx.k.c);
    mc_squared = (m * ctx.k.c) * (m * ctx.k.c);
    eps_gamma2 = eps * gamma * gamma;
    units = "cgs";
  }
  rgupz_dispersion d{};
  check(rgupz_dispersion_solve(mc_squared, eps_gamma2, df.order, &d));
  const char* statement = nullptr;
  const char* substitution = nullptr;
  rgupz_nonrel_limit_note(&statement, &substitution);

  if (ctx.format() == "json") {
    Json j{{"command", "dispersion"},
           {"units", units},
           {"mc_squared", mc_squared},
           {"eps_gamma2", eps_gamma2},
           {"scale", clean(eps_gamma2 * mc_squared)},
           {"exact_root", clean(d.exact_root)},
           {"series_root", clean(d.series_root)},
           {"series_order", d.order},
           {"residual", clean(d.residual)},
           {"relative_residual", clean(d.relative_residual)},
           {"nonrel_limit", Json{{"statement", statement}, {"substitution", substitution}}}};
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }
  fmt::print(ctx.out, "{:<19}{}\n", "units", units);
  fmt::print(ctx.out, "{:<19}{}\n", "mc_squared", num(mc_squared));
  fmt::print(ctx.out, "{:<19}{}\n", "eps_gamma2", num(eps_gamma2));
  fmt::print(ctx.out, "{:<19}{}\n", "scale", num(eps_gamma2 * mc_squared));
  fmt::print(ctx.out, "{:<19}{}\n", "exact_root", num(d.exact_root));
  fmt::print(ctx.out, "{:<19}{}\n", "series_root", num(d.series_root));
  fmt::print(ctx.out, "{:<19}{}\n", "series_order", d.order);
  fmt::print(ctx.out, "{:<19}{}\n", "residual", num(d.residual));
  fmt::print(ctx.out, "{:<19}{}\n", "relative_residual", num(d.relative_residual));
  return kExitOk;
}

int cmd_discrepancy(Context& ctx, const StateFlags& sf) {
  ctx.validate_common();
  const rgupz_state state = make_state(sf);
  const auto params = ctx.params();
  const auto opts = ctx.shift_options();
  rgupz_discrepancy* raw = nullptr;
  check(rgupz_discrepancy_create(params.get(), &state, &opts.raw, &raw));
  DiscrepancyPtr report(raw);
  std::vector<rgupz_discrepancy_entry> entries(rgupz_discrepancy_count(report.get()));
  for (size_t i = 0; i < entries.size(); ++i) check(rgupz_discrepancy_get(report.get(), i, &entries[i]));
  const int agreeing = rgupz_discrepancy_agreeing_terms(report.get());

  if (ctx.format() == "json") {
    Json arr = Json::array();
    for (const auto& e : entries) {
      arr.push_back(Json{{"regime", e.regime}, {"label", e.label}, {"class", e.class_tag},
                         {"detail", e.detail}, {"derived_erg", clean(e.derived_erg)},
                         {"published_erg", clean(e.published_erg)}, {"ratio", clean(e.ratio)}});
    }
    Json j{{"command", "discrepancy"}, {"state", state_json(state)}, {"agreeing_terms", agreeing},
           {"differences", arr}};
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }
  fmt::print(ctx.out, "{:<16}{}\n", "state", state_text(state));
  fmt::print(ctx.out, "{:<16}{}\n", "agreeing_terms", agreeing);
  fmt::print(ctx.out, "{:<16}{}\n\n", "differences", entries.size());
  fmt::print(ctx.out, "{:<7}{:<22}{:<20}{:>17}{:>18}{:>18}\n", "regime", "label", "class", "ratio",
             "derived_erg", "published_erg");
  for (const auto& e : entries) {
    fmt::print(ctx.out, "{:<7}{:<22}{:<20}{:>17}{:>18}{:>18}\n", e.regime, e.label, e.class_tag,
               sci(e.ratio), sci(e.derived_erg), sci(e.published_erg));
  }
  return kExitOk;
}

struct OracleFlags {
  int n = 1, l = 0, Z = 1;
  std::optional<int> k;
  int nodes = 0;
};

Json oracle_json(const rgupz_oracle_value& v) {
  const double rel = v.closed_form != 0.0 ? std::abs(v.quadrature - v.closed_form) / std::abs(v.closed_form)
                                          : std::abs(v.quadrature);
  return Json{{"quadrature", v.quadrature}, {"closed_form", v.closed_form}, {"relative_difference", rel}};
}

int cmd_oracle(Context& ctx, const OracleFlags& of) {
  const int nodes = of.nodes > 0 ? of.nodes : rgupz_oracle_default_nodes();
  Json j;
  j["command"] = "oracle";
  j["n"] = of.n;
  j["l"] = of.l;
  j["Z"] = of.Z;
  j["nodes"] = nodes;
  j["length_unit"] = "cm";
  Json radial = Json::array();
  std::vector<int> powers;
  if (of.k) {
    powers = {*of.k};
  } else {
    for (int k = -3; k <= 2; ++k) {
      if (!(k == -3 && of.l == 0)) powers.push_back(k);
    }
  }
  for (int k : powers) {
    rgupz_oracle_value v{};
    check(rgupz_oracle_radial(of.n, of.l, of.Z, k, nodes, &v));
    Json row{{"k", k}};
    row.update(oracle_json(v));
    radial.push_back(row);
  }
  j["r_power"] = radial;
  if (!of.k) {
    rgupz_oracle_value p2{}, p4{};
    check(rgupz_oracle_p2(of.n, of.l, of.Z, nodes, &p2));
    check(rgupz_oracle_p4(of.n, of.l, of.Z, nodes, &p4));
    Json p2j = oracle_json(p2);
    const double angular = ctx.k.hbar * ctx.k.hbar * of.l * (of.l + 1.0) / (ctx.k.r0 * ctx.k.r0);
    p2j["angular_approximation"] = angular;
    p2j["approximation_ratio"] = angular / p2.closed_form;
    j["p2"] = p2j;
    j["p4"] = oracle_json(p4);
  }
  ctx.out << j.dump(2) << '\n';
  return kExitOk;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("--config: cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Zeeman shifts of hydrogen-like atoms under deformed canonical algebras", "rgupz"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  bool banner = false;
  app.add_option("--config", config_path, "Flat key = value settings file");
  app.add_flag("--banner", banner, "Print the library version first");

  SettingFlags settings;
  StateFlags state;

  auto* constants_cmd = app.add_subcommand("constants", "List the builtin physical constants");
  add_output_flags(constants_cmd, settings, false, false);

  auto* shift_cmd = app.add_subcommand("shift", "Energy shift breakdown of one state");
  add_state_flags(shift_cmd, state, true);
  add_physics_flags(shift_cmd, settings);
  add_model_flags(shift_cmd, settings);
  add_output_flags(shift_cmd, settings, true, true);

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Shift breakdown over a parameter grid (CSV)");
  sweep_cmd->add_option("--param", sweep.param, "B | epsilon | l | mj | n")
      ->required()
      ->check(CLI::IsMember({"B", "epsilon", "l", "mj", "n"}));
  sweep_cmd->add_option("--from", sweep.from, "Grid start");
  sweep_cmd->add_option("--to", sweep.to, "Grid end (inclusive)");
  sweep_cmd->add_option("--steps", sweep.steps, "Grid point count");
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated explicit values");
  add_state_flags(sweep_cmd, state, false);
  add_physics_flags(sweep_cmd, settings);
  add_model_flags(sweep_cmd, settings);
  add_output_flags(sweep_cmd, settings, true, false);

  LinesFlags lines;
  auto* lines_cmd = app.add_subcommand("lines", "Zeeman components between two manifolds");
  lines_cmd->add_option("--n-upper", lines.n_upper)->capture_default_str();
  lines_cmd->add_option("--l-upper", lines.l_upper)->capture_default_str();
  lines_cmd->add_option("--branch-upper", lines.branch_upper)
      ->check(CLI::IsMember({"plus", "minus", "all"}))
      ->capture_default_str();
  lines_cmd->add_option("--n-lower", lines.n_lower)->capture_default_str();
  lines_cmd->add_option("--l-lower", lines.l_lower)->capture_default_str();
  lines_cmd->add_option("--branch-lower", lines.branch_lower)
      ->check(CLI::IsMember({"plus", "minus", "all"}))
      ->capture_default_str();
  add_physics_flags(lines_cmd, settings);
  add_model_flags(lines_cmd, settings);
  add_output_flags(lines_cmd, settings, true, true);

  AlgebraFlags algebra;
  auto* algebra_cmd = app.add_subcommand("verify-algebra", "Check deformed commutators exactly");
  algebra_cmd->add_option("--case", algebra.which)
      ->check(CLI::IsMember({"all", "nonrel-special", "rel-linear", "rel-position-position"}))
      ->capture_default_str();
  algebra_cmd->add_option("--against", algebra.against, "derived | printed")
      ->check(CLI::IsMember({"derived", "printed"}))
      ->capture_default_str();
  add_output_flags(algebra_cmd, settings, false, false);

  DispersionFlags dispersion;
  auto* dispersion_cmd = app.add_subcommand("dispersion", "Solve the deformed mass shell");
  dispersion_cmd->add_option("--mc", dispersion.mc, "m c in test units (with --eps-gamma2)");
  dispersion_cmd->add_option("--eps-gamma2", dispersion.eps_gamma2, "eps gamma^2 in test units");
  dispersion_cmd->add_option("--order", dispersion.order, "Series order, 1 or 2")->capture_default_str();
  dispersion_cmd->add_option("--mass", settings.mass, "'electron' or a mass in grams");
  dispersion_cmd->add_option("--epsilon", settings.epsilon, "Deformation strength");
  dispersion_cmd->add_option("--gamma", settings.gamma, "'planck' or an explicit value");
  add_output_flags(dispersion_cmd, settings, false, false);

  auto* discrepancy_cmd =
      app.add_subcommand("discrepancy", "Compare derived and as-published RGUP/GUP terms");
  add_state_flags(discrepancy_cmd, state, false);
  add_physics_flags(discrepancy_cmd, settings);
  discrepancy_cmd->add_option("--radius-cm", settings.radius, "Radius for <p^2>; 'bohr' for r0");
  add_output_flags(discrepancy_cmd, settings, false, false);

  OracleFlags oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Hydrogen radial expectation values (JSON)");
  oracle_cmd->add_option("--n", oracle.n)->capture_default_str();
  oracle_cmd->add_option("--l", oracle.l)->capture_default_str();
  oracle_cmd->add_option("--Z", oracle.Z)->capture_default_str();
  oracle_cmd->add_option("--k", oracle.k, "Only <r^k>, k in -3..2");
  oracle_cmd->add_option("--nodes", oracle.nodes, "Quadrature nodes (default 60)");
  add_output_flags(oracle_cmd, settings, false, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }

  try {
    if (banner) fmt::print(out, "rgupz {}\n", rgupz_version());
    std::optional<std::string> file_text;
    std::string file_name = "config";
    if (!config_path && env) config_path = env("RGUPZ_CONFIG");
    if (config_path && !config_path->empty()) {
      file_text = read_file(*config_path);
      file_name = *config_path;
    }
    Context ctx{out, RunConfig::resolve(settings.collect(), env, file_text, file_name), constants()};

    if (constants_cmd->parsed()) return cmd_constants(ctx);
    if (shift_cmd->parsed()) return cmd_shift(ctx, state);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx, state, sweep);
    if (lines_cmd->parsed()) return cmd_lines(ctx, lines);
    if (algebra_cmd->parsed()) return cmd_verify_algebra(ctx, algebra);
    if (dispersion_cmd->parsed()) return cmd_dispersion(ctx, dispersion);
    if (discrepancy_cmd->parsed()) return cmd_discrepancy(ctx, state);
    if (oracle_cmd->parsed()) return cmd_oracle(ctx, oracle);
    fmt::print(err, "error: no subcommand\n");
    return kExitUsage;
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const ApiError& e) {
    fmt::print(err, "error: {}\n", e.what());
    const bool physics = e.status() == RGUPZ_ERR_VALIDATION || e.status() == RGUPZ_ERR_DOMAIN;
    return physics ? kExitDomain : kExitInternal;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInternal;
  }
}

}  // namespace rgupz::cli
