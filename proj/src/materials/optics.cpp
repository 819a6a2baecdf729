// SPDX-License-Identifier: Apache-2.0

#include "matbench/materials/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace matbench {

double fresnel_dielectric(double cos_theta_i, double eta_i, double eta_t) {
    if (eta_i == eta_t) return 0.0;
    const double cos_i = std::clamp(cos_theta_i, 0.0, 1.0);
    const double sin_t = eta_i / eta_t * safe_sqrt(1.0 - cos_i * cos_i);
    if (sin_t >= 1.0) return 1.0;
    const double cos_t = safe_sqrt(1.0 - sin_t * sin_t);
    const double r_par = (eta_t * cos_i - eta_i * cos_t) / (eta_t * cos_i + eta_i * cos_t);
    const double r_perp = (eta_i * cos_i - eta_t * cos_t) / (eta_i * cos_i + eta_t * cos_t);
    return 0.5 * (r_par * r_par + r_perp * r_perp);
}

double fresnel_dielectric_signed(double cos_theta_i, double eta) {
    if (cos_theta_i >= 0) return fresnel_dielectric(cos_theta_i, 1.0, eta);
    return fresnel_dielectric(-cos_theta_i, eta, 1.0);
}

double fresnel_conductor(double cos_theta_i, const ComplexIor &ior) {
    const double c = std::clamp(cos_theta_i, 0.0, 1.0);
    const double c2 = c * c;
    const double s2 = 1.0 - c2;
    const double eta2 = ior.eta * ior.eta;
    const double k2 = ior.k * ior.k;
    const double t0 = eta2 - k2 - s2;
    const double a2b2 = std::sqrt(t0 * t0 + 4.0 * eta2 * k2);
    const double a = safe_sqrt(0.5 * (a2b2 + t0));

    // The two ratios below are already squared amplitudes (reflectances).
    const double perp_den = a2b2 + 2.0 * a * c + c2;
    if (perp_den <= 0) return 1.0;
    const double r_perp = (a2b2 - 2.0 * a * c + c2) / perp_den;
    const double par_den = c2 * a2b2 + 2.0 * a * c * s2 + s2 * s2;
    if (par_den <= 0) return 1.0;
    const double r_par = r_perp * (c2 * a2b2 - 2.0 * a * c * s2 + s2 * s2) / par_den;
    return std::clamp(0.5 * (r_par + r_perp), 0.0, 1.0);
}

std::optional<Vec3> refract(const Vec3 &wi, const Vec3 &n_in, double eta) {
    double cos_i = dot(n_in, wi);
    Vec3 n = n_in;
    if (cos_i < 0) {
        eta = 1.0 / eta;
        cos_i = -cos_i;
        n = -n;
    }
    const double sin2_i = std::max(0.0, 1.0 - cos_i * cos_i);
    const double sin2_t = sin2_i / (eta * eta);
    if (sin2_t >= 1.0) return std::nullopt;
    const double cos_t = safe_sqrt(1.0 - sin2_t);
    return -wi / eta + n * (cos_i / eta - cos_t);
}

std::optional<Vec3> snell_refract(const Vec3 &wi, double eta_i, double eta_t) {
    return refract(wi, {0, 0, 1}, eta_t / eta_i);
}

double ggx_d(const Vec3 &wh, double alpha) {
    if (wh.z <= 0) return 0.0;
    const double a2 = alpha * alpha;
    const double c2 = wh.z * wh.z;
    const double d = c2 * (a2 - 1.0) + 1.0;
    return a2 / (kPi * d * d);
}

double ggx_lambda(const Vec3 &w, double alpha) {
    const double c2 = w.z * w.z;
    if (c2 <= 0) return std::numeric_limits<double>::infinity();
    const double tan2 = std::max(0.0, 1.0 - c2) / c2;
    return 0.5 * (std::sqrt(1.0 + alpha * alpha * tan2) - 1.0);
}

double smith_g1(const Vec3 &w, const Vec3 &wh, double alpha) {
    if (dot(w, wh) * w.z <= 0) return 0.0;
    return 1.0 / (1.0 + ggx_lambda(w, alpha));
}

double smith_g(const Vec3 &wi, const Vec3 &wo, const Vec3 &wh, double alpha) {
    return smith_g1(wi, wh, alpha) * smith_g1(wo, wh, alpha);
}

Vec3 sample_ggx_visible_normal(const Vec3 &w, double alpha, Vec2 u) {
    Vec3 vh = normalize(Vec3{alpha * w.x, alpha * w.y, w.z});
    if (vh.z < 0) vh = -vh;
    const double len2 = vh.x * vh.x + vh.y * vh.y;
    const Vec3 t1 = len2 > 0 ? Vec3{-vh.y, vh.x, 0} / std::sqrt(len2) : Vec3{1, 0, 0};
    const Vec3 t2 = cross(vh, t1);
    const double r = std::sqrt(u.x);
    const double phi = 2.0 * kPi * u.y;
    const double p1 = r * std::cos(phi);
    double p2 = r * std::sin(phi);
    const double s = 0.5 * (1.0 + vh.z);
    p2 = (1.0 - s) * safe_sqrt(1.0 - p1 * p1) + s * p2;
    const Vec3 nh = t1 * p1 + t2 * p2 + vh * safe_sqrt(1.0 - p1 * p1 - p2 * p2);
    return normalize(Vec3{alpha * nh.x, alpha * nh.y, std::max(1e-12, nh.z)});
}

double ggx_visible_normal_pdf(const Vec3 &w, const Vec3 &wh, double alpha) {
    const double cos_w = std::abs(w.z);
    if (cos_w == 0) return 0.0;
    const Vec3 wu = w.z < 0 ? -w : w;
    const double g1 = 1.0 / (1.0 + ggx_lambda(wu, alpha));
    return g1 * std::max(0.0, dot(wu, wh)) * ggx_d(wh, alpha) / cos_w;
}

Vec3 sample_cosine_hemisphere(Vec2 u) {
    const double ox = 2.0 * u.x - 1.0;
    const double oy = 2.0 * u.y - 1.0;
    double dx = 0, dy = 0;
    if (ox != 0 || oy != 0) {
        double r, theta;
        if (std::abs(ox) > std::abs(oy)) {
            r = ox;
            theta = 0.25 * kPi * (oy / ox);
        } else {
            r = oy;
            theta = 0.5 * kPi - 0.25 * kPi * (ox / oy);
        }
        dx = r * std::cos(theta);
        dy = r * std::sin(theta);
    }
    return {dx, dy, safe_sqrt(1.0 - dx * dx - dy * dy)};
}

Vec3 sample_uniform_sphere(Vec2 u) {
    const double z = 1.0 - 2.0 * u.x;
    const double r = safe_sqrt(1.0 - z * z);
    const double phi = 2.0 * kPi * u.y;
    return {r * std::cos(phi), r * std::sin(phi), z};
}

double internal_diffuse_fresnel(double eta) {
    // Integral of F(mu) 2 mu dmu over [0, 1] seen from inside. F is 1 below
    // the critical cosine; above it the substitution mu = mu_c + (1 - mu_c) s^2
    // removes the square-root kink so Simpson converges quickly.
    const double sin_c = eta > 1.0 ? 1.0 / eta : 1.0;
    const double mu_c = safe_sqrt(1.0 - sin_c * sin_c);
    const double span = 1.0 - mu_c;
    auto g = [&](double s) {
        const double mu = mu_c + span * s * s;
        return fresnel_dielectric(mu, eta, 1.0) * 2.0 * mu * 2.0 * span * s;
    };
    const int n = 4096;
    const double h = 1.0 / n;
    double sum = g(0.0) + g(1.0);
    for (int i = 1; i < n; ++i) sum += g(i * h) * (i % 2 ? 4.0 : 2.0);
    return mu_c * mu_c + sum * h / 3.0;
}

}  // namespace matbench
