#pragma once

// Uniform magnetostatic fields under the covariant deformation. The deformed
// derivative rescales the field tensor by f = 1 - eps gamma^2 (mc)^2, kept to
// first order in gamma^2.

#include <array>

#include "rgupz/units.hpp"

namespace rgupz::fields {

using Vec3 = std::array<double, 3>;
using Tensor4 = std::array<std::array<double, 4>, 4>;

struct FieldConfig {
  Vec3 B{};
  Vec3 E{};  // always zero here
  double deformation_factor = 1.0;
};

FieldConfig make_field_config(const Vec3& B, const PhysicalParams& params);

/// f = 1 - eps gamma^2 (mc)^2
double rgup_factor(const PhysicalParams& params);
/// f - 1, exact to full precision even when the correction is ~1e-45.
double rgup_factor_minus_one(const PhysicalParams& params);
/// Non-relativistic counterpart 1 + eps gamma^2 <p^2>, with <p^2> given as a number.
double gup_factor(double epsilon, double gamma, double p2);

Vec3 b_rgup(const Vec3& B, const PhysicalParams& params);
/// f * (B x x) / 2, the symmetric-gauge potential of the deformed field.
Vec3 a_rgup(const Vec3& B, const Vec3& x, const PhysicalParams& params);
Vec3 a_rgup(const Vec3& B, const Vec3& x, double factor);

/// F_ij = -eps_ijk B^k, F_i0 = E^i, F_0i = -E^i, all scaled by the config's factor.
Tensor4 field_tensor(const FieldConfig& config);
/// B^k = -1/2 eps_ijk F_ij
Vec3 magnetic_field_from_tensor(const Tensor4& F);

}  // namespace rgupz::fields
