#pragma once

// Deformed mass-shell condition  2 eps gamma^2 u^2 + u + (mc)^2 = 0  for the
// canonical scalar u = p0.p0 (signature -+++). Everything here depends only on
// (mc)^2 and the product eps gamma^2, so callers may work in any consistent
// units, e.g. mc = 1.

#include <string>

#include "rgupz/error.hpp"

namespace rgupz::dispersion {

/// No real root: eps gamma^2 (mc)^2 exceeds 1/8.
class TransPlanckianError : public DomainError {
 public:
  explicit TransPlanckianError(double scale);
  double scale() const noexcept { return scale_; }

 private:
  double scale_;
};

struct DispersionSolution {
  double exact_root;
  double series_root;
  double residual;           // 2 s u^2 + u + (mc)^2 at the exact root
  double relative_residual;  // residual / (mc)^2
  int order;                 // order of series_root
};

/// Root of the quadratic that tends to -(mc)^2 as gamma -> 0. Throws
/// DomainError when 1 - 8 eps gamma^2 (mc)^2 < 0.
double p0sq_exact(double mc_squared, double eps_gamma2);

/// Series in s = eps gamma^2:  -(mc)^2 - 2 s (mc)^4  [ - 8 s^2 (mc)^6 for order 2 ].
double p0sq_series(double mc_squared, double eps_gamma2, int order);

DispersionSolution solve(double mc_squared, double eps_gamma2, int order = 1);

/// Convenience overloads taking mass (g), epsilon, gamma and c.
double p0sq_exact(double m, double epsilon, double gamma, double c);
double p0sq_series(double m, double epsilon, double gamma, double c, int order);

struct NonrelLimitNote {
  std::string statement;
  std::string substitution;
};

/// As c -> infinity the canonical scalar p0.p0 becomes -hbar^2 laplacian, so
/// the scale eps gamma^2 (mc)^2 is replaced by -eps gamma^2 <p^2>.
const NonrelLimitNote& nonrel_limit_note();

/// The substitution rule above, evaluated: -eps gamma^2 <p^2>.
double nonrel_correction_scale(double epsilon, double gamma, double p2);

}  // namespace rgupz::dispersion
