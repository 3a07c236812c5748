#pragma once

// Exact noncommutative polynomials in canonical position/momentum symbols.
//
// An OperatorPoly is a finite sum  sum_k c_k * X_k P_k  where X_k is a product
// of position symbols x0[a] and P_k a product of momentum symbols p0[a]. All
// positions sit left of all momenta (normal order); the canonical relation
// [x0[a], p0[b]] = i hbar g(a,b) is used to restore that order after every
// product. The metric g is diagonal: delta in Euclidean D-space, diag(-1,1,1,1)
// in Minkowski space.
//
// Coefficients are polynomials in the formal symbols {i, hbar, a1, a2, eps,
// gamma^2} with exact rational coefficients; i^2 is folded into the sign.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rgupz::opalg {

using Rational = mpq_class;

enum class Param : std::uint8_t { Hbar = 0, A1, A2, Eps, Gamma2 };
inline constexpr std::size_t kParamCount = 5;

const char* param_name(Param p);

/// Power product i^{0|1} * hbar^h * a1^.. * a2^.. * eps^.. * (gamma^2)^..
struct ParamMonomial {
  std::uint8_t i = 0;
  std::array<std::uint8_t, kParamCount> exps{};

  std::uint8_t power(Param p) const { return exps[static_cast<std::size_t>(p)]; }
  auto operator<=>(const ParamMonomial&) const = default;
};

/// Commutative polynomial in the formal parameters.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long value);  // NOLINT: integers promote naturally
  Coefficient(const Rational& value);  // NOLINT

  static Coefficient i();
  static Coefficient param(Param p, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<ParamMonomial, Rational>& terms() const { return terms_; }

  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient operator-() const;
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.terms_ == b.terms_;
  }

  void add_term(const ParamMonomial& m, const Rational& c);
  std::string to_string() const;

 private:
  std::map<ParamMonomial, Rational> terms_;
};

inline constexpr int kMaxIndex = 8;

/// Normal-ordered operator word: x exponents then p exponents, per index.
struct OpMonomial {
  std::array<std::uint8_t, kMaxIndex> x{};
  std::array<std::uint8_t, kMaxIndex> p{};

  int degree() const;
  bool is_identity() const { return degree() == 0; }
  auto operator<=>(const OpMonomial&) const = default;
};

class Metric {
 public:
  static Metric euclidean(int dimension);
  static Metric minkowski();

  bool is_minkowski() const { return minkowski_; }
  int dimension() const { return dim_; }
  int first_index() const { return minkowski_ ? 0 : 1; }
  int last_index() const { return minkowski_ ? 3 : dim_; }
  /// Diagonal entry g(a,a) of the metric with upper indices.
  int diagonal(int index) const;
  bool contains(int index) const { return index >= first_index() && index <= last_index(); }
  std::string tag() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Metric(bool minkowski, int dim) : minkowski_(minkowski), dim_(dim) {}
  bool minkowski_;
  int dim_;
};

class OperatorPoly {
 public:
  explicit OperatorPoly(Metric metric) : metric_(metric) {}

  static OperatorPoly constant(Metric metric, const Coefficient& c);
  static OperatorPoly position(Metric metric, int index);
  static OperatorPoly momentum(Metric metric, int index);
  /// Metric contraction g_ab p0[a] p0[b] (already normal ordered).
  static OperatorPoly momentum_square(Metric metric);

  const Metric& metric() const { return metric_; }
  const std::map<OpMonomial, Coefficient>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of a monomial, zero if absent.
  Coefficient coefficient(const OpMonomial& m) const;
  void add_term(const OpMonomial& m, const Coefficient& c);

  OperatorPoly& operator+=(const OperatorPoly& other);
  OperatorPoly& operator-=(const OperatorPoly& other);
  OperatorPoly operator-() const;
  OperatorPoly& operator*=(const Coefficient& c);
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator*(const Coefficient& c, OperatorPoly a) { return a *= c; }
  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) {
    return a.metric_ == b.metric_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void require_same_metric(const OperatorPoly& other) const;

  Metric metric_;
  std::map<OpMonomial, Coefficient> terms_;
};

/// A * B rewritten to normal order. Throws ValidationError on metric mismatch.
OperatorPoly normal_product(const OperatorPoly& a, const OperatorPoly& b);

/// normal_product(a, b) - normal_product(b, a)
OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b);

/// Maximum retained power per formal parameter; parameters not listed are
/// unrestricted.
using TruncationOrder = std::map<Param, int>;

OperatorPoly truncate(const OperatorPoly& a, const TruncationOrder& order);
Coefficient truncate(const Coefficient& c, const TruncationOrder& order);

/// Replaces every power param^k by replacement^k.
OperatorPoly substitute(const OperatorPoly& a, Param param, const Coefficient& replacement);

/// Deformed operators indexed by component; `position[k]` is the operator for
/// index metric.first_index() + k.
struct DeformedOps {
  Metric metric;
  std::vector<OperatorPoly> position;
  std::vector<OperatorPoly> momentum;

  const OperatorPoly& x(int index) const { return position.at(index - metric.first_index()); }
  const OperatorPoly& p(int index) const { return momentum.at(index - metric.first_index()); }
};

/// First-order representation in D Euclidean dimensions:
///   x^i = x0^i + (2 a1 - a2)/4 (p0^2 x0^i + x0^i p0^2),  p^i = p0^i (1 + a2/2 p0^2)
DeformedOps deformed_ops_nonrel(int dimension);

/// Covariant representation with x^mu = x0^mu, p^mu = p0^mu (1 + eps gamma^2 p0.p0).
DeformedOps deformed_ops_rel();

/// Applies a substitution to every operator in the set.
DeformedOps substitute(const DeformedOps& ops, Param param, const Coefficient& replacement);

enum class AlgebraCase { NonrelSpecial, RelLinear, RelPositionPosition };

/// Which target the report compares against. `Derived` is the machine-checked
/// form; `Printed` keeps the coefficients as they were originally published.
enum class TargetForm { Derived, Printed };

AlgebraCase parse_algebra_case(const std::string& tag);
std::string algebra_case_tag(AlgebraCase c);

struct VerificationEntry {
  std::string label;
  OperatorPoly computed;
  OperatorPoly target;
  OperatorPoly residual;

  bool pass() const { return residual.is_zero(); }
};

struct VerificationReport {
  std::string case_name;
  TruncationOrder order;
  std::vector<VerificationEntry> entries;
  std::vector<std::string> annotations;

  bool pass() const;
  std::string to_text() const;
};

VerificationReport verify_algebra(AlgebraCase which, TargetForm form = TargetForm::Derived);

}  // namespace rgupz::opalg
