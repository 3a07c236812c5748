#include "rgupz/oracle.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "rgupz/error.hpp"

namespace rgupz::oracle {

double laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

GaussLaguerreRule build_rule(int count) {
  // Golub-Welsch on the Jacobi matrix of the Laguerre weight e^{-x}.
  Eigen::VectorXd diag(count);
  Eigen::VectorXd sub(count - 1);
  for (int k = 0; k < count; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < count; ++k) sub(k - 1) = k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  GaussLaguerreRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    double x = solver.eigenvalues()(i);
    // Polish on L_n; L_n'(x) = n (L_n - L_{n-1}) / x.
    for (int iter = 0; iter < 3; ++iter) {
      const double ln = laguerre(count, 0.0, x);
      const double ln1 = laguerre(count - 1, 0.0, x);
      const double dln = count * (ln - ln1) / x;
      if (dln == 0.0) break;
      x -= ln / dln;
    }
    const double lnext = laguerre(count + 1, 0.0, x);
    rule.nodes[i] = x;
    rule.weights[i] = x / ((count + 1.0) * (count + 1.0) * lnext * lnext);
  }
  return rule;
}

}  // namespace

const GaussLaguerreRule& gauss_laguerre(int count) {
  if (count < 2 || count > 150) {
    throw ValidationError("nodes", fmt::format("node count {} outside 2..150", count));
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLaguerreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[count];
  if (!slot) slot = std::make_unique<GaussLaguerreRule>(build_rule(count));
  return *slot;
}

RadialGrid::RadialGrid(int node_count, double scale)
    : rule_(&gauss_laguerre(node_count)), scale_(scale) {
  if (!(scale > 0.0)) throw ValidationError("scale", "must be > 0");
}

double RadialGrid::integrate(const std::function<double(double)>& F) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule_->nodes.size(); ++i) {
    sum += rule_->weights[i] * F(rule_->nodes[i] / scale_);
  }
  return sum / scale_;
}

void validate_quantum_numbers(int n, int l, int Z) {
  if (n < 1) throw ValidationError("n", "principal quantum number must be >= 1");
  if (l < 0 || l >= n) throw ValidationError("l", fmt::format("must satisfy 0 <= l < n = {}", n));
  if (Z < 1) throw ValidationError("Z", "nuclear charge must be >= 1");
}

namespace {

// R_nl(r) = kappa^{3/2} C rho^l e^{-rho/2} L_{n-l-1}^{2l+1}(rho),  rho = kappa r,
// kappa = 2Z/(n a).
struct RadialForm {
  int n;
  int l;
  double kappa;
  double norm;  // C

  RadialForm(int n_, int l_, int Z, double a) : n(n_), l(l_), kappa(2.0 * Z / (n_ * a)) {
    norm = std::exp(0.5 * (std::lgamma(n - l) - std::log(2.0 * n) - std::lgamma(n + l + 1.0)));
  }

  int degree() const { return n - l - 1; }
  double alpha() const { return 2.0 * l + 1.0; }

  double L(double rho) const { return laguerre(degree(), alpha(), rho); }
  double dL(double rho) const { return -laguerre(degree() - 1, alpha() + 1.0, rho); }
  double d2L(double rho) const { return laguerre(degree() - 2, alpha() + 2.0, rho); }

  // rho^{1-l} e^{rho/2} laplacian_rho of (C rho^l e^{-rho/2} L) divided by C.
  double Q(double rho) const {
    return rho * d2L(rho) + (2.0 * l + 2.0 - rho) * dL(rho) + (0.25 * rho - l - 1.0) * L(rho);
  }

  // Everything except the exponential, in r.
  double polynomial_part(double r) const {
    const double rho = kappa * r;
    return std::pow(kappa, 1.5) * norm * std::pow(rho, l) * L(rho);
  }
};

}  // namespace

double radial_wavefunction(int n, int l, int Z, double r, double a) {
  validate_quantum_numbers(n, l, Z);
  if (r < 0.0) throw ValidationError("r", "must be >= 0");
  const RadialForm form(n, l, Z, a);
  return form.polynomial_part(r) * std::exp(-0.5 * form.kappa * r);
}

double radial_expectation(int n, int l, int Z, int k, double a, int nodes) {
  validate_quantum_numbers(n, l, Z);
  if (k < -3 || k > 2) throw ValidationError("k", "power must be in -3..2");
  if (k == -3 && l == 0) throw DomainError("<r^-3> diverges for l = 0");
  const RadialForm form(n, l, Z, a);
  // int R^2 r^{2+k} dr = kappa^{-k} C^2 int e^{-rho} rho^{2l+2+k} L^2 drho
  const RadialGrid grid(nodes, 1.0);
  const double integral = grid.integrate([&](double rho) {
    const double L = form.L(rho);
    return std::pow(rho, 2 * l + 2 + k) * L * L;
  });
  return std::pow(form.kappa, -k) * form.norm * form.norm * integral;
}

double radial_expectation_closed_form(int n, int l, int Z, int k, double a) {
  validate_quantum_numbers(n, l, Z);
  const double nn = n;
  const double ll = l * (l + 1.0);
  const double z = Z;
  switch (k) {
    case -3:
      if (l == 0) throw DomainError("<r^-3> diverges for l = 0");
      return z * z * z / (a * a * a * nn * nn * nn * l * (l + 0.5) * (l + 1.0));
    case -2: return z * z / (a * a * nn * nn * nn * (l + 0.5));
    case -1: return z / (a * nn * nn);
    case 0: return 1.0;
    case 1: return a * (3.0 * nn * nn - ll) / (2.0 * z);
    case 2: return a * a * nn * nn * (5.0 * nn * nn + 1.0 - 3.0 * ll) / (2.0 * z * z);
    default: throw ValidationError("k", "power must be in -3..2");
  }
}

double radial_overlap(int n1, int n2, int l, int Z, int nodes) {
  validate_quantum_numbers(n1, l, Z);
  validate_quantum_numbers(n2, l, Z);
  // Dimensionless, so work in units of the Bohr radius.
  const RadialForm u1(n1, l, Z, 1.0);
  const RadialForm u2(n2, l, Z, 1.0);
  const RadialGrid grid(nodes, 0.5 * (u1.kappa + u2.kappa));
  const double integral = grid.integrate(
      [&](double s) { return u1.polynomial_part(s) * u2.polynomial_part(s) * s * s; });
  return integral;
}

MomentumExpectation p2_expectation_exact(int n, int l, int Z, const ConstantsTable& constants,
                                         int nodes) {
  validate_quantum_numbers(n, l, Z);
  const double a = constants.r0;
  const double hbar = constants.hbar;
  const RadialForm form(n, l, Z, a);
  const RadialGrid grid(nodes, 1.0);
  // <p^2> = -hbar^2 kappa^2 C^2 int e^{-rho} rho^{2l+1} L Q drho
  const double integral = grid.integrate(
      [&](double rho) { return std::pow(rho, 2 * l + 1) * form.L(rho) * form.Q(rho); });
  const double quadrature =
      -hbar * hbar * form.kappa * form.kappa * form.norm * form.norm * integral;

  const double p = Z * hbar / (n * a);
  return MomentumExpectation{quadrature, p * p};
}

MomentumExpectation p4_expectation_exact(int n, int l, int Z, const ConstantsTable& constants,
                                         int nodes) {
  validate_quantum_numbers(n, l, Z);
  const double a = constants.r0;
  const double hbar = constants.hbar;
  const RadialForm form(n, l, Z, a);
  const RadialGrid grid(nodes, 1.0);
  // <p^4> = hbar^4 kappa^4 C^2 int e^{-rho} rho^{2l} Q^2 drho
  const double integral = grid.integrate([&](double rho) {
    const double q = form.Q(rho);
    return std::pow(rho, 2 * l) * q * q;
  });
  const double kappa2 = form.kappa * form.kappa;
  const double quadrature =
      hbar * hbar * hbar * hbar * kappa2 * kappa2 * form.norm * form.norm * integral;

  // 4 m^2 <(E - V)^2> with E = -Z^2 e^2/(2 n^2 a), V = -Z e^2 / r and m e^2 = hbar^2 / a.
  // In units of (hbar/a)^4:  4 [E~^2 + 2 E~ Z <a/r> + Z^2 <a^2/r^2>],  E~ = -Z^2/(2n^2).
  const double e_tilde = -static_cast<double>(Z) * Z / (2.0 * n * n);
  const double inv_r = radial_expectation_closed_form(n, l, Z, -1, 1.0);
  const double inv_r2 = radial_expectation_closed_form(n, l, Z, -2, 1.0);
  const double bracket = e_tilde * e_tilde + 2.0 * e_tilde * Z * inv_r + 1.0 * Z * Z * inv_r2;
  const double unit = hbar / a;
  return MomentumExpectation{quadrature, 4.0 * bracket * unit * unit * unit * unit};
}

}  // namespace rgupz::oracle
