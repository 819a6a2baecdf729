// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "matbench/core/math.hpp"
#include "matbench/spectra/ior.hpp"

namespace matbench {

/// Unpolarized Fresnel reflectance between two dielectrics,
/// F = (r_par^2 + r_perp^2) / 2. Returns exactly 1 under total internal
/// reflection. `cos_theta_i` is clamped to [0, 1].
double fresnel_dielectric(double cos_theta_i, double eta_i, double eta_t);

/// Same as fresnel_dielectric for a signed cosine measured against the +z
/// normal of a boundary with index `eta` below and 1 above: a negative
/// cosine means the ray arrives from inside.
double fresnel_dielectric_signed(double cos_theta_i, double eta);

/// Unpolarized reflectance of an air/conductor boundary with relative complex
/// index eta + i k.
double fresnel_conductor(double cos_theta_i, const ComplexIor &ior);

/// Refracts `wi` (pointing away from the surface, wi.z > 0) into the lower
/// half space with sin(theta_t) = eta_i sin(theta_i) / eta_t. Returns nullopt
/// on total internal reflection.
std::optional<Vec3> snell_refract(const Vec3 &wi, double eta_i, double eta_t);

/// Refraction through a boundary with normal `n` and relative index
/// eta = eta_below / eta_above, for `wi` on either side. Returns nullopt on
/// total internal reflection.
std::optional<Vec3> refract(const Vec3 &wi, const Vec3 &n, double eta);

/// GGX (Trowbridge-Reitz) microfacet normal density; 0 for wh.z <= 0.
double ggx_d(const Vec3 &wh, double alpha);

/// Smith Lambda function of the GGX distribution.
double ggx_lambda(const Vec3 &w, double alpha);

/// Smith masking for one direction; 0 when `w` lies on the back of `wh`.
double smith_g1(const Vec3 &w, const Vec3 &wh, double alpha);

/// Separable Smith shadowing-masking G1(wi) G1(wo).
double smith_g(const Vec3 &wi, const Vec3 &wo, const Vec3 &wh, double alpha);

/// Samples a microfacet normal from the distribution of normals visible from
/// `w` (Heitz 2018). Directions with w.z < 0 are mirrored to the upper side.
Vec3 sample_ggx_visible_normal(const Vec3 &w, double alpha, Vec2 u);

/// Density of sample_ggx_visible_normal: G1(w) |w.wh| D(wh) / |w.z|.
double ggx_visible_normal_pdf(const Vec3 &w, const Vec3 &wh, double alpha);

/// Cosine-weighted direction on the upper hemisphere (concentric mapping).
Vec3 sample_cosine_hemisphere(Vec2 u);

/// Uniform direction on the unit sphere.
Vec3 sample_uniform_sphere(Vec2 u);

/// Cosine-weighted hemispherical average of the Fresnel reflectance seen from
/// inside a medium of index `eta` against air; used by the plastic models.
double internal_diffuse_fresnel(double eta);

}  // namespace matbench
