#pragma once

// Hydrogen-like radial machinery evaluated by generalized Gauss-Laguerre
// quadrature, kept independent of the closed forms it is checked against.

#include <functional>
#include <vector>

#include "rgupz/units.hpp"

namespace rgupz::oracle {

/// Nodes and weights for  int_0^inf e^{-x} f(x) dx ~ sum_i w_i f(x_i).
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule with `count` nodes (2..150). Safe for concurrent callers.
const GaussLaguerreRule& gauss_laguerre(int count);

inline constexpr int kDefaultNodes = 60;

/// Quadrature for  int_0^inf e^{-scale r} F(r) dr.
class RadialGrid {
 public:
  RadialGrid(int node_count, double scale);

  int node_count() const { return static_cast<int>(rule_->nodes.size()); }
  double scale() const { return scale_; }
  const GaussLaguerreRule& rule() const { return *rule_; }

  double integrate(const std::function<double(double)>& F) const;

 private:
  const GaussLaguerreRule* rule_;
  double scale_;
};

/// Generalized Laguerre polynomial L_n^alpha(x); zero for n < 0.
double laguerre(int n, double alpha, double x);

/// Normalized R_nl(r) for charge Z, with `a` the Bohr radius.
double radial_wavefunction(int n, int l, int Z, double r, double a);

/// <r^k>, k in -3..2, by quadrature. Throws DomainError for k = -3 with l = 0.
double radial_expectation(int n, int l, int Z, int k, double a, int nodes = kDefaultNodes);
double radial_expectation_closed_form(int n, int l, int Z, int k, double a);

/// int R_nl R_n'l r^2 dr (dimensionless)
double radial_overlap(int n1, int n2, int l, int Z, int nodes = kDefaultNodes);

struct MomentumExpectation {
  double quadrature;   // radial Laplacian with the centrifugal term
  double closed_form;  // virial (p^2) or Coulomb identity (p^4)
};

/// <p^2> = (Z hbar / (n r0))^2
MomentumExpectation p2_expectation_exact(int n, int l, int Z, const ConstantsTable& constants,
                                         int nodes = kDefaultNodes);
/// <p^4> = || p^2 psi ||^2, checked against 4 m_e^2 <(E_n - V)^2>.
MomentumExpectation p4_expectation_exact(int n, int l, int Z, const ConstantsTable& constants,
                                         int nodes = kDefaultNodes);

void validate_quantum_numbers(int n, int l, int Z);

}  // namespace rgupz::oracle
