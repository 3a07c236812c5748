#ifndef RGUPZ_H
#define RGUPZ_H

/* C interface to the rgupz library. All quantities are Gaussian CGS (erg, G,
 * cm, g, s) unless a name says otherwise. Every fallible call returns an
 * rgupz_status; on failure rgupz_last_error() describes the problem for the
 * calling thread. Strings returned through out-parameters stay valid until the
 * owning handle is destroyed; strings with no owning handle are static. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RGUPZ_BUILDING)
#    define RGUPZ_API __declspec(dllexport)
#  else
#    define RGUPZ_API __declspec(dllimport)
#  endif
#else
#  define RGUPZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rgupz_status {
  RGUPZ_OK = 0,
  RGUPZ_ERR_VALIDATION = 1, /* malformed input; rgupz_last_error_field() names it */
  RGUPZ_ERR_DOMAIN = 2,     /* well-formed input outside a formula's domain */
  RGUPZ_ERR_RANGE = 3,      /* index past the end of a handle's contents */
  RGUPZ_ERR_NULL = 4,       /* required pointer argument was NULL */
  RGUPZ_ERR_INTERNAL = 5
} rgupz_status;

RGUPZ_API const char* rgupz_version(void);
RGUPZ_API const char* rgupz_status_name(rgupz_status status);
/* Message of the last failing call on this thread, "" if none. */
RGUPZ_API const char* rgupz_last_error(void);
/* Input field blamed by the last RGUPZ_ERR_VALIDATION on this thread, or "". */
RGUPZ_API const char* rgupz_last_error_field(void);

/* ---- constants and units ---------------------------------------------- */

typedef struct rgupz_constants {
  double e;        /* statC */
  double m_e;      /* g */
  double c;        /* cm/s */
  double hbar;     /* erg s */
  double alpha;
  double r0;       /* cm */
  double m_planck; /* g */
  double ev;       /* erg */
  double mu_b;     /* erg/G, derived */
} rgupz_constants;

RGUPZ_API rgupz_status rgupz_constants_builtin(rgupz_constants* out);
RGUPZ_API size_t rgupz_constant_entry_count(void);
RGUPZ_API rgupz_status rgupz_constant_entry(size_t index, const char** name, double* value,
                                            const char** unit);

/* Unit tags: "erg", "eV", "cm-1", "Hz". */
RGUPZ_API rgupz_status rgupz_convert_energy(double value, const char* from, const char* to,
                                            double* out);

#define RGUPZ_GAUSS_PER_TESLA 1.0e4

/* ---- parameters --------------------------------------------------------- */

typedef struct rgupz_params rgupz_params;

typedef struct rgupz_params_info {
  double B;       /* G */
  double epsilon;
  double gamma;   /* s/(g cm) */
  double m;       /* g */
  int Z;
  double correction_scale; /* eps gamma^2 (m c)^2 */
} rgupz_params_info;

/* gamma_planck != 0 selects gamma = 1/(M_Pl c) and ignores `gamma`.
 * m <= 0 is rejected; pass rgupz_constants.m_e for the electron. */
RGUPZ_API rgupz_status rgupz_params_create(double B_gauss, double epsilon, int gamma_planck,
                                           double gamma, double m, int Z, rgupz_params** out);
RGUPZ_API void rgupz_params_destroy(rgupz_params* params);
RGUPZ_API rgupz_status rgupz_params_info_get(const rgupz_params* params, rgupz_params_info* out);
/* 1 - f for the field rescaling f = 1 - eps gamma^2 (mc)^2, without rounding. */
RGUPZ_API rgupz_status rgupz_field_factor_deficit(const rgupz_params* params, double* out);

/* ---- states -------------------------------------------------------------- */

typedef enum rgupz_branch { RGUPZ_BRANCH_PLUS = 0, RGUPZ_BRANCH_MINUS = 1 } rgupz_branch;

typedef struct rgupz_state {
  int n;
  int l;
  rgupz_branch branch; /* j = l + 1/2 or j = l - 1/2 */
  int two_mj;          /* 2 m_j, odd */
  int has_alt;         /* nonzero when m_l, two_ms are set */
  int m_l;
  int two_ms;          /* +1 or -1 */
} rgupz_state;

/* Builds a state from m_j given as a double (e.g. 1.5) and validates it. */
RGUPZ_API rgupz_status rgupz_state_make(int n, int l, rgupz_branch branch, double mj,
                                        rgupz_state* out);
RGUPZ_API rgupz_status rgupz_state_validate(const rgupz_state* state);
/* Writes up to `capacity` states (descending m_j, plus branch first) and the
 * total count. Pass capacity 0 to query the count. */
RGUPZ_API rgupz_status rgupz_manifold_states(int n, int l, rgupz_state* out, size_t capacity,
                                             size_t* count);
RGUPZ_API rgupz_status rgupz_level_states(int n, int l, rgupz_branch branch, rgupz_state* out,
                                          size_t capacity, size_t* count);

/* ---- energy shifts ------------------------------------------------------- */

typedef struct rgupz_shift_options {
  const char* regime; /* "LANDE", "REL", "GUP", "RGUP" (or lower case); NULL means RGUP */
  const char* mode;   /* "derived" or "as-published"; NULL means derived */
  int has_radius;     /* nonzero: evaluate <p^2> at radius_cm instead of r0 */
  double radius_cm;
} rgupz_shift_options;

typedef enum rgupz_term_kind {
  RGUPZ_TERM_BASE = 0,
  RGUPZ_TERM_CORRECTION = 1,
  RGUPZ_TERM_LEVEL_SHIFT = 2
} rgupz_term_kind;

typedef struct rgupz_term {
  const char* label;
  const char* ref;      /* expression this addend evaluates */
  const char* kind_tag; /* "base", "correction", "level-shift" */
  rgupz_term_kind kind;
  double value_erg;
} rgupz_term;

typedef struct rgupz_breakdown rgupz_breakdown;

RGUPZ_API rgupz_status rgupz_shift(const rgupz_params* params, const rgupz_state* state,
                                   const rgupz_shift_options* options, rgupz_breakdown** out);
RGUPZ_API void rgupz_breakdown_destroy(rgupz_breakdown* breakdown);
RGUPZ_API size_t rgupz_breakdown_term_count(const rgupz_breakdown* breakdown);
RGUPZ_API rgupz_status rgupz_breakdown_term(const rgupz_breakdown* breakdown, size_t index,
                                            rgupz_term* out);
RGUPZ_API double rgupz_breakdown_total(const rgupz_breakdown* breakdown);
RGUPZ_API double rgupz_breakdown_magnetic_total(const rgupz_breakdown* breakdown);
RGUPZ_API double rgupz_breakdown_correction_scale(const rgupz_breakdown* breakdown);
/* Canonical regime and mode tags of the breakdown. */
RGUPZ_API const char* rgupz_breakdown_regime(const rgupz_breakdown* breakdown);
RGUPZ_API const char* rgupz_breakdown_mode(const rgupz_breakdown* breakdown);

/* Every term label a regime can produce, in output order. */
RGUPZ_API rgupz_status rgupz_regime_label_count(const char* regime, size_t* count);
RGUPZ_API rgupz_status rgupz_regime_label(const char* regime, size_t index, const char** label);

/* Spin-orbit expectation; the state must carry the (m_l, m_s) basis. */
RGUPZ_API rgupz_status rgupz_hls_shift(const rgupz_params* params, const rgupz_state* state,
                                       double* out);

/* ---- lines --------------------------------------------------------------- */

typedef enum rgupz_polarization {
  RGUPZ_POL_PI = 0,
  RGUPZ_POL_SIGMA_PLUS = 1,
  RGUPZ_POL_SIGMA_MINUS = 2
} rgupz_polarization;

typedef struct rgupz_line {
  rgupz_state upper;
  rgupz_state lower;
  rgupz_polarization polarization;
  const char* polarization_tag; /* "pi", "sigma+", "sigma-" */
  double delta_erg;
  double magnetic_delta_erg; /* excludes B-independent level shifts */
} rgupz_line;

typedef struct rgupz_lines rgupz_lines;

RGUPZ_API rgupz_status rgupz_lines_create(const rgupz_params* params, const rgupz_state* upper,
                                          size_t upper_count, const rgupz_state* lower,
                                          size_t lower_count, const rgupz_shift_options* options,
                                          rgupz_lines** out);
RGUPZ_API void rgupz_lines_destroy(rgupz_lines* lines);
RGUPZ_API size_t rgupz_lines_count(const rgupz_lines* lines);
RGUPZ_API rgupz_status rgupz_lines_get(const rgupz_lines* lines, size_t index, rgupz_line* out);

/* ---- algebra verification ------------------------------------------------ */

typedef struct rgupz_report rgupz_report;

typedef struct rgupz_report_entry {
  const char* label;
  const char* computed;
  const char* target;
  const char* residual;
  int pass;
} rgupz_report_entry;

/* case_name: "nonrel-special", "rel-linear", "rel-position-position".
 * against: "derived" (default when NULL) or "printed". */
RGUPZ_API rgupz_status rgupz_verify_algebra(const char* case_name, const char* against,
                                            rgupz_report** out);
RGUPZ_API void rgupz_report_destroy(rgupz_report* report);
RGUPZ_API int rgupz_report_pass(const rgupz_report* report);
RGUPZ_API const char* rgupz_report_case(const rgupz_report* report);
RGUPZ_API const char* rgupz_report_order(const rgupz_report* report);
RGUPZ_API const char* rgupz_report_text(const rgupz_report* report);
RGUPZ_API size_t rgupz_report_entry_count(const rgupz_report* report);
RGUPZ_API rgupz_status rgupz_report_entry_get(const rgupz_report* report, size_t index,
                                              rgupz_report_entry* out);
RGUPZ_API size_t rgupz_report_annotation_count(const rgupz_report* report);
RGUPZ_API rgupz_status rgupz_report_annotation(const rgupz_report* report, size_t index,
                                               const char** out);

/* ---- dispersion ---------------------------------------------------------- */

typedef struct rgupz_dispersion {
  double exact_root;
  double series_root;
  double residual;
  double relative_residual;
  int order;
} rgupz_dispersion;

/* mc_squared = (m c)^2 in any consistent units, eps_gamma2 = eps gamma^2 in
 * the matching inverse units. RGUPZ_ERR_DOMAIN when 8 eps gamma^2 (mc)^2 > 1. */
RGUPZ_API rgupz_status rgupz_dispersion_solve(double mc_squared, double eps_gamma2, int order,
                                              rgupz_dispersion* out);
RGUPZ_API void rgupz_nonrel_limit_note(const char** statement, const char** substitution);

/* ---- discrepancy report -------------------------------------------------- */

typedef struct rgupz_discrepancy rgupz_discrepancy;

typedef struct rgupz_discrepancy_entry {
  const char* regime;
  const char* label;
  const char* class_tag; /* e.g. "missing-hbar-power" */
  const char* detail;
  double derived_erg;
  double published_erg;
  double ratio;
} rgupz_discrepancy_entry;

RGUPZ_API rgupz_status rgupz_discrepancy_create(const rgupz_params* params,
                                                const rgupz_state* state,
                                                const rgupz_shift_options* options,
                                                rgupz_discrepancy** out);
RGUPZ_API void rgupz_discrepancy_destroy(rgupz_discrepancy* report);
RGUPZ_API size_t rgupz_discrepancy_count(const rgupz_discrepancy* report);
RGUPZ_API int rgupz_discrepancy_agreeing_terms(const rgupz_discrepancy* report);
RGUPZ_API rgupz_status rgupz_discrepancy_get(const rgupz_discrepancy* report, size_t index,
                                             rgupz_discrepancy_entry* out);

/* ---- hydrogen radial oracle ---------------------------------------------- */

typedef struct rgupz_oracle_value {
  double quadrature;
  double closed_form;
} rgupz_oracle_value;

/* nodes <= 0 selects the default rule. Lengths in cm, momenta in g cm/s. */
RGUPZ_API rgupz_status rgupz_oracle_radial(int n, int l, int Z, int k, int nodes,
                                           rgupz_oracle_value* out);
RGUPZ_API rgupz_status rgupz_oracle_p2(int n, int l, int Z, int nodes, rgupz_oracle_value* out);
RGUPZ_API rgupz_status rgupz_oracle_p4(int n, int l, int Z, int nodes, rgupz_oracle_value* out);
RGUPZ_API rgupz_status rgupz_oracle_wavefunction(int n, int l, int Z, double r_cm, double* out);
RGUPZ_API int rgupz_oracle_default_nodes(void);

#ifdef __cplusplus
}
#endif

#endif
