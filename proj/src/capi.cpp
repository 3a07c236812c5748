#include "rgupz/rgupz.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rgupz/dispersion.hpp"
#include "rgupz/error.hpp"
#include "rgupz/fields.hpp"
#include "rgupz/opalg.hpp"
#include "rgupz/oracle.hpp"
#include "rgupz/spectrum.hpp"
#include "rgupz/units.hpp"

namespace sp = rgupz::spectrum;

struct rgupz_params {
  rgupz::PhysicalParams value;
};

struct rgupz_breakdown {
  sp::ShiftBreakdown value;
  std::string regime;
  std::string mode;
};

struct rgupz_lines {
  std::vector<sp::Line> value;
};

struct rgupz_report {
  rgupz::opalg::VerificationReport value;
  std::string text;
  std::string order;
  struct Strings {
    std::string computed, target, residual;
  };
  std::vector<Strings> strings;
};

struct rgupz_discrepancy {
  sp::DiscrepancyReport value;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

rgupz_status fail(rgupz_status status, std::string message, std::string field = {}) {
  g_error = std::move(message);
  g_field = std::move(field);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
rgupz_status guarded(F&& body) {
  try {
    g_error.clear();
    g_field.clear();
    body();
    return RGUPZ_OK;
  } catch (const rgupz::ValidationError& e) {
    return fail(RGUPZ_ERR_VALIDATION, e.what(), e.field());
  } catch (const rgupz::DomainError& e) {
    return fail(RGUPZ_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RGUPZ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RGUPZ_ERR_INTERNAL, e.what());
  }
}

#define RGUPZ_REQUIRE(ptr)                                                 \
  do {                                                                     \
    if ((ptr) == nullptr) return fail(RGUPZ_ERR_NULL, #ptr " is NULL", #ptr); \
  } while (0)

sp::QuantumState to_state(const rgupz_state& s) {
  sp::QuantumState out{s.n, s.l, s.branch == RGUPZ_BRANCH_MINUS ? sp::Branch::Minus : sp::Branch::Plus,
                       s.two_mj, std::nullopt};
  if (s.branch != RGUPZ_BRANCH_PLUS && s.branch != RGUPZ_BRANCH_MINUS) {
    throw rgupz::ValidationError("branch", "unknown branch value");
  }
  if (s.has_alt) out.alt = sp::AltBasis{s.m_l, s.two_ms};
  return out;
}

rgupz_state from_state(const sp::QuantumState& s) {
  rgupz_state out{s.n, s.l, s.branch == sp::Branch::Minus ? RGUPZ_BRANCH_MINUS : RGUPZ_BRANCH_PLUS,
                  s.two_mj, 0, 0, 0};
  if (s.alt) {
    out.has_alt = 1;
    out.m_l = s.alt->m_l;
    out.two_ms = s.alt->two_ms;
  }
  return out;
}

struct ResolvedOptions {
  sp::Regime regime = sp::Regime::Rgup;
  sp::ShiftOptions shift;
};

ResolvedOptions resolve(const rgupz_shift_options* options) {
  ResolvedOptions out;
  if (options == nullptr) return out;
  if (options->regime) out.regime = sp::parse_regime(options->regime);
  if (options->mode) out.shift.mode = sp::parse_mode(options->mode);
  if (options->has_radius) out.shift.radius = options->radius_cm;
  return out;
}

rgupz_status copy_states(const std::vector<sp::QuantumState>& states, rgupz_state* out,
                         size_t capacity, size_t* count) {
  *count = states.size();
  for (size_t i = 0; i < states.size() && i < capacity; ++i) {
    if (out == nullptr) break;
    out[i] = from_state(states[i]);
  }
  return RGUPZ_OK;
}

const std::vector<rgupz::ConstantEntry>& builtin_entries() {
  static const std::vector<rgupz::ConstantEntry> entries =
      rgupz::constant_entries(rgupz::load_constants());
  return entries;
}

// Per-regime label tables with stable storage for the returned pointers.
const std::vector<std::string>& labels_for(sp::Regime regime) {
  static const std::vector<std::string> tables[] = {
      sp::regime_term_labels(sp::Regime::Lande), sp::regime_term_labels(sp::Regime::Rel),
      sp::regime_term_labels(sp::Regime::Gup), sp::regime_term_labels(sp::Regime::Rgup)};
  return tables[static_cast<int>(regime)];
}

rgupz_status oracle_value(rgupz::oracle::MomentumExpectation m, rgupz_oracle_value* out) {
  out->quadrature = m.quadrature;
  out->closed_form = m.closed_form;
  return RGUPZ_OK;
}

int node_count(int nodes) { return nodes <= 0 ? rgupz::oracle::kDefaultNodes : nodes; }

}  // namespace

extern "C" {

const char* rgupz_version(void) { return "0.3.0"; }

const char* rgupz_status_name(rgupz_status status) {
  switch (status) {
    case RGUPZ_OK: return "ok";
    case RGUPZ_ERR_VALIDATION: return "validation";
    case RGUPZ_ERR_DOMAIN: return "domain";
    case RGUPZ_ERR_RANGE: return "range";
    case RGUPZ_ERR_NULL: return "null";
    case RGUPZ_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rgupz_last_error(void) { return g_error.c_str(); }
const char* rgupz_last_error_field(void) { return g_field.c_str(); }

// ---- constants and units

rgupz_status rgupz_constants_builtin(rgupz_constants* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    const auto k = rgupz::load_constants();
    *out = rgupz_constants{k.e, k.m_e, k.c, k.hbar, k.alpha, k.r0, k.m_planck, k.ev, k.mu_b()};
  });
}

size_t rgupz_constant_entry_count(void) { return builtin_entries().size(); }

rgupz_status rgupz_constant_entry(size_t index, const char** name, double* value,
                                  const char** unit) {
  const auto& entries = builtin_entries();
  if (index >= entries.size()) return fail(RGUPZ_ERR_RANGE, "constant index out of range");
  if (name) *name = entries[index].name.c_str();
  if (value) *value = entries[index].value;
  if (unit) *unit = entries[index].unit.c_str();
  return RGUPZ_OK;
}

rgupz_status rgupz_convert_energy(double value, const char* from, const char* to, double* out) {
  RGUPZ_REQUIRE(from);
  RGUPZ_REQUIRE(to);
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    *out = rgupz::convert_energy(value, rgupz::parse_energy_unit(from), rgupz::parse_energy_unit(to),
                                 rgupz::load_constants());
  });
}

// ---- parameters

rgupz_status rgupz_params_create(double B_gauss, double epsilon, int gamma_planck, double gamma,
                                 double m, int Z, rgupz_params** out) {
  RGUPZ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto spec =
        gamma_planck ? rgupz::GammaSpec::planck() : rgupz::GammaSpec::explicit_value(gamma);
    *out = new rgupz_params{rgupz::make_params(B_gauss, epsilon, spec, m, Z, rgupz::load_constants())};
  });
}

void rgupz_params_destroy(rgupz_params* params) { delete params; }

rgupz_status rgupz_params_info_get(const rgupz_params* params, rgupz_params_info* out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(out);
  const auto& p = params->value;
  *out = rgupz_params_info{p.B, p.epsilon, p.gamma, p.m, p.Z, p.correction_scale()};
  return RGUPZ_OK;
}

rgupz_status rgupz_field_factor_deficit(const rgupz_params* params, double* out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(out);
  *out = -rgupz::fields::rgup_factor_minus_one(params->value);
  return RGUPZ_OK;
}

// ---- states

rgupz_status rgupz_state_make(int n, int l, rgupz_branch branch, double mj, rgupz_state* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    rgupz_state probe{n, l, branch, 1, 0, 0, 0};
    const auto b = to_state(probe).branch;
    *out = from_state(sp::make_state(n, l, b, mj));
  });
}

rgupz_status rgupz_state_validate(const rgupz_state* state) {
  RGUPZ_REQUIRE(state);
  return guarded([&] { sp::validate(to_state(*state)); });
}

rgupz_status rgupz_manifold_states(int n, int l, rgupz_state* out, size_t capacity, size_t* count) {
  RGUPZ_REQUIRE(count);
  return guarded([&] { copy_states(sp::manifold_states(n, l), out, capacity, count); });
}

rgupz_status rgupz_level_states(int n, int l, rgupz_branch branch, rgupz_state* out,
                                size_t capacity, size_t* count) {
  RGUPZ_REQUIRE(count);
  return guarded([&] {
    rgupz_state probe{n, l, branch, 1, 0, 0, 0};
    copy_states(sp::level_states(n, l, to_state(probe).branch), out, capacity, count);
  });
}

// ---- energy shifts

rgupz_status rgupz_shift(const rgupz_params* params, const rgupz_state* state,
                         const rgupz_shift_options* options, rgupz_breakdown** out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(state);
  RGUPZ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto opts = resolve(options);
    auto value = sp::energy_shift_B(to_state(*state), params->value, opts.regime, opts.shift);
    std::string regime(sp::regime_tag(value.regime));
    std::string mode(sp::mode_tag(value.mode));
    *out = new rgupz_breakdown{std::move(value), std::move(regime), std::move(mode)};
  });
}

void rgupz_breakdown_destroy(rgupz_breakdown* breakdown) { delete breakdown; }

size_t rgupz_breakdown_term_count(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->value.terms.size() : 0;
}

rgupz_status rgupz_breakdown_term(const rgupz_breakdown* breakdown, size_t index, rgupz_term* out) {
  RGUPZ_REQUIRE(breakdown);
  RGUPZ_REQUIRE(out);
  if (index >= breakdown->value.terms.size()) return fail(RGUPZ_ERR_RANGE, "term index out of range");
  const auto& t = breakdown->value.terms[index];
  *out = rgupz_term{t.label.c_str(), t.ref.c_str(), sp::term_kind_tag(t.kind).data(),
                    static_cast<rgupz_term_kind>(t.kind), t.value_erg};
  return RGUPZ_OK;
}

double rgupz_breakdown_total(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->value.total : 0.0;
}

double rgupz_breakdown_magnetic_total(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->value.magnetic_total() : 0.0;
}

double rgupz_breakdown_correction_scale(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->value.correction_scale : 0.0;
}

const char* rgupz_breakdown_regime(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->regime.c_str() : "";
}

const char* rgupz_breakdown_mode(const rgupz_breakdown* breakdown) {
  return breakdown ? breakdown->mode.c_str() : "";
}

rgupz_status rgupz_regime_label_count(const char* regime, size_t* count) {
  RGUPZ_REQUIRE(regime);
  RGUPZ_REQUIRE(count);
  return guarded([&] { *count = labels_for(sp::parse_regime(regime)).size(); });
}

rgupz_status rgupz_regime_label(const char* regime, size_t index, const char** label) {
  RGUPZ_REQUIRE(regime);
  RGUPZ_REQUIRE(label);
  const std::vector<std::string>* labels = nullptr;
  const rgupz_status status = guarded([&] { labels = &labels_for(sp::parse_regime(regime)); });
  if (status != RGUPZ_OK) return status;
  if (index >= labels->size()) return fail(RGUPZ_ERR_RANGE, "label index out of range");
  *label = (*labels)[index].c_str();
  return RGUPZ_OK;
}

rgupz_status rgupz_hls_shift(const rgupz_params* params, const rgupz_state* state, double* out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(state);
  RGUPZ_REQUIRE(out);
  return guarded([&] { *out = sp::hls_shift(to_state(*state), params->value); });
}

// ---- lines

rgupz_status rgupz_lines_create(const rgupz_params* params, const rgupz_state* upper,
                                size_t upper_count, const rgupz_state* lower, size_t lower_count,
                                const rgupz_shift_options* options, rgupz_lines** out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(out);
  *out = nullptr;
  if (upper_count > 0) RGUPZ_REQUIRE(upper);
  if (lower_count > 0) RGUPZ_REQUIRE(lower);
  return guarded([&] {
    std::vector<sp::QuantumState> u, d;
    for (size_t i = 0; i < upper_count; ++i) u.push_back(to_state(upper[i]));
    for (size_t i = 0; i < lower_count; ++i) d.push_back(to_state(lower[i]));
    const auto opts = resolve(options);
    *out = new rgupz_lines{sp::zeeman_lines(u, d, params->value, opts.regime, opts.shift)};
  });
}

void rgupz_lines_destroy(rgupz_lines* lines) { delete lines; }

size_t rgupz_lines_count(const rgupz_lines* lines) { return lines ? lines->value.size() : 0; }

rgupz_status rgupz_lines_get(const rgupz_lines* lines, size_t index, rgupz_line* out) {
  RGUPZ_REQUIRE(lines);
  RGUPZ_REQUIRE(out);
  if (index >= lines->value.size()) return fail(RGUPZ_ERR_RANGE, "line index out of range");
  const auto& line = lines->value[index];
  *out = rgupz_line{from_state(line.upper), from_state(line.lower),
                    static_cast<rgupz_polarization>(line.polarization),
                    sp::polarization_tag(line.polarization).data(), line.delta_erg,
                    line.magnetic_delta_erg};
  return RGUPZ_OK;
}

// ---- algebra verification

rgupz_status rgupz_verify_algebra(const char* case_name, const char* against, rgupz_report** out) {
  RGUPZ_REQUIRE(case_name);
  RGUPZ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    namespace oa = rgupz::opalg;
    oa::TargetForm form = oa::TargetForm::Derived;
    if (against != nullptr) {
      const std::string tag(against);
      if (tag == "printed") {
        form = oa::TargetForm::Printed;
      } else if (tag != "derived") {
        throw rgupz::ValidationError("against", fmt::format("expected derived or printed, got '{}'", tag));
      }
    }
    auto report = std::make_unique<rgupz_report>();
    report->value = oa::verify_algebra(oa::parse_algebra_case(case_name), form);
    report->text = report->value.to_text();
    std::vector<std::string> caps;
    for (const auto& [param, cap] : report->value.order) {
      caps.push_back(fmt::format("{}<={}", oa::param_name(param), cap));
    }
    report->order = fmt::format("{}", fmt::join(caps, ", "));
    for (const auto& entry : report->value.entries) {
      report->strings.push_back(
          {entry.computed.to_string(), entry.target.to_string(), entry.residual.to_string()});
    }
    *out = report.release();
  });
}

void rgupz_report_destroy(rgupz_report* report) { delete report; }

int rgupz_report_pass(const rgupz_report* report) { return report && report->value.pass() ? 1 : 0; }

const char* rgupz_report_case(const rgupz_report* report) {
  return report ? report->value.case_name.c_str() : "";
}

const char* rgupz_report_order(const rgupz_report* report) {
  return report ? report->order.c_str() : "";
}

const char* rgupz_report_text(const rgupz_report* report) {
  return report ? report->text.c_str() : "";
}

size_t rgupz_report_entry_count(const rgupz_report* report) {
  return report ? report->value.entries.size() : 0;
}

rgupz_status rgupz_report_entry_get(const rgupz_report* report, size_t index,
                                    rgupz_report_entry* out) {
  RGUPZ_REQUIRE(report);
  RGUPZ_REQUIRE(out);
  if (index >= report->value.entries.size()) return fail(RGUPZ_ERR_RANGE, "entry index out of range");
  const auto& entry = report->value.entries[index];
  const auto& s = report->strings[index];
  *out = rgupz_report_entry{entry.label.c_str(), s.computed.c_str(), s.target.c_str(),
                            s.residual.c_str(), entry.pass() ? 1 : 0};
  return RGUPZ_OK;
}

size_t rgupz_report_annotation_count(const rgupz_report* report) {
  return report ? report->value.annotations.size() : 0;
}

rgupz_status rgupz_report_annotation(const rgupz_report* report, size_t index, const char** out) {
  RGUPZ_REQUIRE(report);
  RGUPZ_REQUIRE(out);
  if (index >= report->value.annotations.size()) {
    return fail(RGUPZ_ERR_RANGE, "annotation index out of range");
  }
  *out = report->value.annotations[index].c_str();
  return RGUPZ_OK;
}

// ---- dispersion

rgupz_status rgupz_dispersion_solve(double mc_squared, double eps_gamma2, int order,
                                    rgupz_dispersion* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    const auto s = rgupz::dispersion::solve(mc_squared, eps_gamma2, order);
    *out = rgupz_dispersion{s.exact_root, s.series_root, s.residual, s.relative_residual, s.order};
  });
}

void rgupz_nonrel_limit_note(const char** statement, const char** substitution) {
  const auto& note = rgupz::dispersion::nonrel_limit_note();
  if (statement) *statement = note.statement.c_str();
  if (substitution) *substitution = note.substitution.c_str();
}

// ---- discrepancy report

rgupz_status rgupz_discrepancy_create(const rgupz_params* params, const rgupz_state* state,
                                      const rgupz_shift_options* options, rgupz_discrepancy** out) {
  RGUPZ_REQUIRE(params);
  RGUPZ_REQUIRE(state);
  RGUPZ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto opts = resolve(options);
    *out = new rgupz_discrepancy{sp::discrepancy_report(to_state(*state), params->value, opts.shift)};
  });
}

void rgupz_discrepancy_destroy(rgupz_discrepancy* report) { delete report; }

size_t rgupz_discrepancy_count(const rgupz_discrepancy* report) {
  return report ? report->value.differences.size() : 0;
}

int rgupz_discrepancy_agreeing_terms(const rgupz_discrepancy* report) {
  return report ? report->value.agreeing_terms : 0;
}

rgupz_status rgupz_discrepancy_get(const rgupz_discrepancy* report, size_t index,
                                   rgupz_discrepancy_entry* out) {
  RGUPZ_REQUIRE(report);
  RGUPZ_REQUIRE(out);
  if (index >= report->value.differences.size()) {
    return fail(RGUPZ_ERR_RANGE, "discrepancy index out of range");
  }
  const auto& d = report->value.differences[index];
  *out = rgupz_discrepancy_entry{sp::regime_tag(d.regime).data(), d.label.c_str(),
                                 sp::discrepancy_class_tag(d.cls).data(), d.detail.c_str(),
                                 d.derived_erg, d.published_erg, d.ratio};
  return RGUPZ_OK;
}

// ---- oracle

rgupz_status rgupz_oracle_radial(int n, int l, int Z, int k, int nodes, rgupz_oracle_value* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    const double a = rgupz::load_constants().r0;
    out->quadrature = rgupz::oracle::radial_expectation(n, l, Z, k, a, node_count(nodes));
    out->closed_form = rgupz::oracle::radial_expectation_closed_form(n, l, Z, k, a);
  });
}

rgupz_status rgupz_oracle_p2(int n, int l, int Z, int nodes, rgupz_oracle_value* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    oracle_value(rgupz::oracle::p2_expectation_exact(n, l, Z, rgupz::load_constants(), node_count(nodes)),
                 out);
  });
}

rgupz_status rgupz_oracle_p4(int n, int l, int Z, int nodes, rgupz_oracle_value* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    oracle_value(rgupz::oracle::p4_expectation_exact(n, l, Z, rgupz::load_constants(), node_count(nodes)),
                 out);
  });
}

rgupz_status rgupz_oracle_wavefunction(int n, int l, int Z, double r_cm, double* out) {
  RGUPZ_REQUIRE(out);
  return guarded([&] {
    *out = rgupz::oracle::radial_wavefunction(n, l, Z, r_cm, rgupz::load_constants().r0);
  });
}

int rgupz_oracle_default_nodes(void) { return rgupz::oracle::kDefaultNodes; }

}  // extern "C"
