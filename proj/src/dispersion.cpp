#include "rgupz/dispersion.hpp"

#include <cmath>

#include <fmt/format.h>

namespace rgupz::dispersion {

TransPlanckianError::TransPlanckianError(double scale)
    : DomainError(fmt::format(
          "trans-Planckian mass: eps gamma^2 (mc)^2 = {:.6e} exceeds 1/8, no real root", scale)),
      scale_(scale) {}

namespace {

void require_inputs(double mc_squared, double eps_gamma2) {
  if (!std::isfinite(mc_squared) || mc_squared < 0.0) {
    throw ValidationError("mc_squared", "must be finite and >= 0");
  }
  if (!std::isfinite(eps_gamma2) || eps_gamma2 < 0.0) {
    throw ValidationError("eps_gamma2", "must be finite and >= 0");
  }
}

}  // namespace

double p0sq_exact(double mc_squared, double eps_gamma2) {
  require_inputs(mc_squared, eps_gamma2);
  if (eps_gamma2 == 0.0) return -mc_squared;
  const double scale = eps_gamma2 * mc_squared;
  const double disc = 1.0 - 8.0 * scale;
  if (disc < 0.0) throw TransPlanckianError(scale);
  // (-1 + sqrt(1 - 8 s M)) / (4 s), rationalised so that no cancellation
  // occurs for small s M.
  return -2.0 * mc_squared / (1.0 + std::sqrt(disc));
}

double p0sq_series(double mc_squared, double eps_gamma2, int order) {
  require_inputs(mc_squared, eps_gamma2);
  const double scale = eps_gamma2 * mc_squared;
  switch (order) {
    case 1: return -mc_squared * (1.0 + 2.0 * scale);
    // u = -M (1 + 2 sM + 8 (sM)^2 + 40 (sM)^3 + ...), the Catalan-type
    // expansion of -2M / (1 + sqrt(1 - 8 sM)).
    case 2: return -mc_squared * (1.0 + 2.0 * scale + 8.0 * scale * scale);
    default:
      throw ValidationError("order", fmt::format("unsupported series order {}", order));
  }
}

DispersionSolution solve(double mc_squared, double eps_gamma2, int order) {
  const double root = p0sq_exact(mc_squared, eps_gamma2);
  const double series = p0sq_series(mc_squared, eps_gamma2, order);
  const double residual = 2.0 * eps_gamma2 * root * root + root + mc_squared;
  const double relative = mc_squared > 0.0 ? std::abs(residual) / mc_squared : std::abs(residual);
  return DispersionSolution{root, series, residual, relative, order};
}

double p0sq_exact(double m, double epsilon, double gamma, double c) {
  const double mc = m * c;
  return p0sq_exact(mc * mc, epsilon * gamma * gamma);
}

double p0sq_series(double m, double epsilon, double gamma, double c, int order) {
  const double mc = m * c;
  return p0sq_series(mc * mc, epsilon * gamma * gamma, order);
}

const NonrelLimitNote& nonrel_limit_note() {
  static const NonrelLimitNote note{
      "In the limit c -> infinity the canonical four-momentum scalar p0.p0 = -(E/c)^2 + "
      "p0^i p0_i reduces to -hbar^2 laplacian.",
      "(mc)^2 -> -<p^2>, so eps gamma^2 (mc)^2 -> -eps gamma^2 <p^2>"};
  return note;
}

double nonrel_correction_scale(double epsilon, double gamma, double p2) {
  return -epsilon * gamma * gamma * p2;
}

}  // namespace rgupz::dispersion
