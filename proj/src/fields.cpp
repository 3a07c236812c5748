#include "rgupz/fields.hpp"

namespace rgupz::fields {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace

double rgup_factor_minus_one(const PhysicalParams& params) { return -params.correction_scale(); }

double rgup_factor(const PhysicalParams& params) { return 1.0 - params.correction_scale(); }

double gup_factor(double epsilon, double gamma, double p2) {
  return 1.0 + epsilon * gamma * gamma * p2;
}

FieldConfig make_field_config(const Vec3& B, const PhysicalParams& params) {
  return FieldConfig{B, {0.0, 0.0, 0.0}, rgup_factor(params)};
}

Vec3 b_rgup(const Vec3& B, const PhysicalParams& params) {
  const double f = rgup_factor(params);
  return {f * B[0], f * B[1], f * B[2]};
}

Vec3 a_rgup(const Vec3& B, const Vec3& x, double factor) {
  const Vec3 bx = cross(B, x);
  return {0.5 * factor * bx[0], 0.5 * factor * bx[1], 0.5 * factor * bx[2]};
}

Vec3 a_rgup(const Vec3& B, const Vec3& x, const PhysicalParams& params) {
  return a_rgup(B, x, rgup_factor(params));
}

Tensor4 field_tensor(const FieldConfig& config) {
  Tensor4 F{};
  const double f = config.deformation_factor;
  for (int i = 1; i <= 3; ++i) {
    F[i][0] = f * config.E[i - 1];
    F[0][i] = -F[i][0];
    for (int j = 1; j <= 3; ++j) {
      double value = 0.0;
      for (int k = 1; k <= 3; ++k) value -= levi_civita(i, j, k) * config.B[k - 1];
      F[i][j] = f * value;
    }
  }
  return F;
}

Vec3 magnetic_field_from_tensor(const Tensor4& F) {
  Vec3 B{};
  for (int k = 1; k <= 3; ++k) {
    double sum = 0.0;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) sum += levi_civita(i, j, k) * F[i][j];
    }
    B[k - 1] = -0.5 * sum;
  }
  return B;
}

}  // namespace rgupz::fields
