// SPDX-License-Identifier: Apache-2.0

#include "matbench/materials/bsdf.hpp"

#include <cmath>
#include <string>

#include "matbench/core/error.hpp"
#include "matbench/materials/optics.hpp"

namespace matbench {

std::string_view to_string(MaterialFamily family) {
    switch (family) {
        case MaterialFamily::diffuse: return "diffuse";
        case MaterialFamily::conductor: return "conductor";
        case MaterialFamily::dielectric: return "dielectric";
        case MaterialFamily::plastic: return "plastic";
        case MaterialFamily::rough_conductor: return "rough_conductor";
        case MaterialFamily::rough_dielectric: return "rough_dielectric";
        case MaterialFamily::rough_plastic: return "rough_plastic";
    }
    return "unknown";
}

std::optional<MaterialFamily> material_family_from_string(std::string_view name) {
    for (MaterialFamily f : kAllFamilies)
        if (to_string(f) == name) return f;
    return std::nullopt;
}

std::optional<IorFamily> ior_family_for(MaterialFamily family) {
    switch (family) {
        case MaterialFamily::diffuse: return std::nullopt;
        case MaterialFamily::conductor:
        case MaterialFamily::rough_conductor: return IorFamily::conductor;
        case MaterialFamily::dielectric:
        case MaterialFamily::rough_dielectric: return IorFamily::dielectric;
        case MaterialFamily::plastic:
        case MaterialFamily::rough_plastic: return IorFamily::plastic;
    }
    return std::nullopt;
}

bool is_rough(MaterialFamily family) {
    return family == MaterialFamily::rough_conductor || family == MaterialFamily::rough_dielectric ||
           family == MaterialFamily::rough_plastic;
}

// ---------------------------------------------------------------------------
// MaterialSpec

MaterialSpec MaterialSpec::diffuse(double reflectance) {
    MaterialSpec m;
    m.family = MaterialFamily::diffuse;
    m.diffuse_reflectance = reflectance;
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::conductor(std::shared_ptr<const IorTable> ior) {
    MaterialSpec m;
    m.family = MaterialFamily::conductor;
    m.ior = std::move(ior);
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::rough_conductor(std::shared_ptr<const IorTable> ior, double alpha) {
    MaterialSpec m;
    m.family = MaterialFamily::rough_conductor;
    m.ior = std::move(ior);
    m.alpha = alpha;
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::dielectric(std::shared_ptr<const IorTable> ior) {
    MaterialSpec m;
    m.family = MaterialFamily::dielectric;
    m.ior = std::move(ior);
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::rough_dielectric(std::shared_ptr<const IorTable> ior, double alpha) {
    MaterialSpec m;
    m.family = MaterialFamily::rough_dielectric;
    m.ior = std::move(ior);
    m.alpha = alpha;
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::plastic(std::shared_ptr<const IorTable> ior, Rgb pigment) {
    MaterialSpec m;
    m.family = MaterialFamily::plastic;
    m.ior = std::move(ior);
    m.pigment_albedo = pigment;
    m.finalize();
    return m;
}

MaterialSpec MaterialSpec::rough_plastic(std::shared_ptr<const IorTable> ior, double alpha, Rgb pigment) {
    MaterialSpec m;
    m.family = MaterialFamily::rough_plastic;
    m.ior = std::move(ior);
    m.alpha = alpha;
    m.pigment_albedo = pigment;
    m.finalize();
    return m;
}

void MaterialSpec::finalize() {
    validate();
    if (pigment_albedo) internal_fresnel_ = internal_diffuse_fresnel(representative_ior(*ior).eta);
}

void MaterialSpec::validate() const {
    const std::string name(to_string(family));
    const bool needs_ior = family != MaterialFamily::diffuse;
    const bool needs_alpha = is_rough(family);
    const bool needs_pigment = family == MaterialFamily::plastic || family == MaterialFamily::rough_plastic;
    const bool needs_reflectance = family == MaterialFamily::diffuse;

    if (needs_ior != static_cast<bool>(ior)) throw ValidationError(name + ": ior presence mismatch");
    if (needs_alpha != alpha.has_value()) throw ValidationError(name + ": alpha presence mismatch");
    if (needs_pigment != pigment_albedo.has_value()) throw ValidationError(name + ": pigment presence mismatch");
    if (needs_reflectance != diffuse_reflectance.has_value())
        throw ValidationError(name + ": diffuse reflectance presence mismatch");

    if (alpha && !(*alpha > 0.0 && *alpha <= 1.0)) throw ValidationError(name + ": alpha must lie in (0, 1]");
    if (diffuse_reflectance &&
        !(*diffuse_reflectance >= kMinDiffuseReflectance && *diffuse_reflectance <= kMaxDiffuseReflectance))
        throw ValidationError(name + ": diffuse reflectance must lie in [0.15, 0.85]");
    if (pigment_albedo)
        for (int c = 0; c < 3; ++c)
            if (!((*pigment_albedo)[c] >= 0.0 && (*pigment_albedo)[c] <= 1.0))
                throw ValidationError(name + ": pigment albedo must lie in [0, 1]");
    if (ior) {
        const auto expected = ior_family_for(family);
        if (expected && ior->family() != *expected)
            throw ValidationError(name + ": IOR table '" + ior->material_id() + "' is a " +
                                  std::string(to_string(ior->family())) + " table");
    }
}

bool MaterialSpec::is_spectral() const {
    return family == MaterialFamily::conductor || family == MaterialFamily::rough_conductor;
}

bool MaterialSpec::has_transmission() const {
    return family == MaterialFamily::dielectric || family == MaterialFamily::rough_dielectric;
}

ComplexIor MaterialSpec::ior_at(double wavelength_nm) const {
    if (!ior) return {};
    if (is_spectral()) return matbench::ior_at(*ior, wavelength_nm);
    return representative_ior(*ior);
}

// ---------------------------------------------------------------------------
// Per-family models. `v` faces the viewer, `l` the light.

namespace {

void check_unit(const Vec3 &w, const char *what) {
    if (std::abs(length_squared(w) - 1.0) > 2e-6) throw ValidationError(std::string(what) + " is not a unit vector");
}

BsdfSample zero_sample() { return {{0, 0, 1}, Rgb(0.0), 1.0, false, false}; }

double conductor_microfacet(const Vec3 &v, const Vec3 &l, double alpha, const ComplexIor &ior) {
    if (v.z <= 0 || l.z <= 0) return 0.0;
    const Vec3 h = v + l;
    if (length_squared(h) == 0) return 0.0;
    const Vec3 wh = normalize(h);
    return ggx_d(wh, alpha) * smith_g(v, l, wh, alpha) * fresnel_conductor(dot(v, wh), ior) / (4.0 * v.z * l.z);
}

// Density of reflected visible normals over the full sphere, including the
// below-horizon directions that bsdf_sample turns into zero-weight samples.
double conductor_microfacet_pdf(const Vec3 &v, const Vec3 &l, double alpha) {
    if (v.z <= 0) return 0.0;
    const Vec3 h = v + l;
    if (length_squared(h) == 0) return 0.0;
    const Vec3 wh = normalize(h);
    const double vh = dot(v, wh);
    if (vh <= 0) return 0.0;
    return ggx_visible_normal_pdf(v, wh, alpha) / (4.0 * vh);
}

// Half vector of a transmission or reflection pair together with the ratio
// etap = eta(light side) / eta(viewer side).
struct DielectricGeometry {
    Vec3 wm;
    double etap = 1.0;
    bool reflect = true;
    bool valid = false;
};

DielectricGeometry dielectric_geometry(const Vec3 &v, const Vec3 &l, double eta) {
    DielectricGeometry g;
    if (v.z == 0 || l.z == 0) return g;
    g.reflect = v.z * l.z > 0;
    if (!g.reflect) g.etap = v.z > 0 ? eta : 1.0 / eta;
    Vec3 wm = l * g.etap + v;
    if (length_squared(wm) == 0) return g;
    wm = normalize(wm);
    if (wm.z < 0) wm = -wm;
    if (dot(wm, l) * l.z < 0 || dot(wm, v) * v.z < 0) return g;
    g.wm = wm;
    g.valid = true;
    return g;
}

double rough_dielectric_eval(const Vec3 &v, const Vec3 &l, double eta, double alpha) {
    const auto g = dielectric_geometry(v, l, eta);
    if (!g.valid) return 0.0;
    const double d = ggx_d(g.wm, alpha);
    const double shadow = smith_g(v, l, g.wm, alpha);
    const double f = fresnel_dielectric_signed(dot(v, g.wm), eta);
    if (g.reflect) return d * shadow * f / std::abs(4.0 * v.z * l.z);
    const double s = dot(l, g.wm) + dot(v, g.wm) / g.etap;
    const double denom = s * s * v.z * l.z;
    if (denom == 0) return 0.0;
    // Radiance scale (eta_viewer / eta_light)^2 for camera-side transport.
    return d * (1.0 - f) * shadow * std::abs(dot(l, g.wm) * dot(v, g.wm) / denom) / (g.etap * g.etap);
}

double rough_dielectric_pdf(const Vec3 &v, const Vec3 &l, double eta, double alpha) {
    const auto g = dielectric_geometry(v, l, eta);
    if (!g.valid) return 0.0;
    const double r = fresnel_dielectric_signed(dot(v, g.wm), eta);
    const double t = 1.0 - r;
    const double visible = ggx_visible_normal_pdf(v, g.wm, alpha);
    if (g.reflect) return visible / (4.0 * std::abs(dot(v, g.wm))) * r;
    const double s = dot(l, g.wm) + dot(v, g.wm) / g.etap;
    if (s == 0) return 0.0;
    return visible * std::abs(dot(l, g.wm)) / (s * s) * t;
}

Rgb plastic_diffuse(const MaterialSpec &m, const Vec3 &v, const Vec3 &l, double eta) {
    const double fi = fresnel_dielectric(v.z, 1.0, eta);
    const double fo = fresnel_dielectric(l.z, 1.0, eta);
    const double fdr = m.internal_reflectance();
    Rgb out;
    for (int c = 0; c < 3; ++c) {
        const double rho = (*m.pigment_albedo)[c];
        out[c] = (1.0 - fi) * (1.0 - fo) * rho / (kPi * eta * eta * (1.0 - rho * fdr));
    }
    return out;
}

double plastic_specular(const Vec3 &v, const Vec3 &l, double eta, double alpha) {
    const Vec3 wh = normalize(v + l);
    return ggx_d(wh, alpha) * smith_g(v, l, wh, alpha) * fresnel_dielectric(dot(v, wh), 1.0, eta) / (4.0 * v.z * l.z);
}

Rgb eval_impl(const MaterialSpec &m, const Vec3 &v, const Vec3 &l, double wavelength_nm) {
    switch (m.family) {
        case MaterialFamily::diffuse:
            if (v.z <= 0 || l.z <= 0) return {};
            return Rgb(*m.diffuse_reflectance * kInvPi);
        case MaterialFamily::conductor:
        case MaterialFamily::dielectric: return {};
        case MaterialFamily::rough_conductor:
            return Rgb(conductor_microfacet(v, l, *m.alpha, m.ior_at(wavelength_nm)));
        case MaterialFamily::rough_dielectric:
            return Rgb(rough_dielectric_eval(v, l, m.ior_at(wavelength_nm).eta, *m.alpha));
        case MaterialFamily::plastic:
        case MaterialFamily::rough_plastic: {
            if (v.z <= 0 || l.z <= 0) return {};
            const double eta = m.ior_at(wavelength_nm).eta;
            Rgb f = plastic_diffuse(m, v, l, eta);
            if (m.family == MaterialFamily::rough_plastic) f += Rgb(plastic_specular(v, l, eta, *m.alpha));
            return f;
        }
    }
    return {};
}

double pdf_impl(const MaterialSpec &m, const Vec3 &v, const Vec3 &l, double wavelength_nm) {
    switch (m.family) {
        case MaterialFamily::diffuse:
            if (v.z <= 0 || l.z <= 0) return 0.0;
            return l.z * kInvPi;
        case MaterialFamily::conductor:
        case MaterialFamily::dielectric: return 0.0;
        case MaterialFamily::rough_conductor: return conductor_microfacet_pdf(v, l, *m.alpha);
        case MaterialFamily::rough_dielectric:
            return rough_dielectric_pdf(v, l, m.ior_at(wavelength_nm).eta, *m.alpha);
        case MaterialFamily::plastic:
        case MaterialFamily::rough_plastic: {
            if (v.z <= 0 || l.z <= 0) return 0.0;
            const double eta = m.ior_at(wavelength_nm).eta;
            const double p_spec = fresnel_dielectric(v.z, 1.0, eta);
            double pdf = (1.0 - p_spec) * l.z * kInvPi;
            if (m.family == MaterialFamily::rough_plastic)
                pdf += p_spec * conductor_microfacet_pdf(v, l, *m.alpha);
            return pdf;
        }
    }
    return 0.0;
}

BsdfSample from_eval(const MaterialSpec &m, const Vec3 &v, const Vec3 &l, double wavelength_nm) {
    const double pdf = pdf_impl(m, v, l, wavelength_nm);
    if (!(pdf > 0)) return zero_sample();
    const Rgb f = eval_impl(m, v, l, wavelength_nm);
    BsdfSample s;
    s.wo = l;
    s.pdf = pdf;
    s.weight = f * (std::abs(l.z) / pdf);
    s.is_transmission = v.z * l.z < 0;
    if (!s.weight.is_finite()) return zero_sample();
    return s;
}

}  // namespace

Rgb bsdf_eval(const MaterialSpec &mat, const Vec3 &wi, const Vec3 &wo, double wavelength_nm) {
    check_unit(wi, "wi");
    check_unit(wo, "wo");
    return eval_impl(mat, wi, wo, wavelength_nm);
}

double bsdf_pdf(const MaterialSpec &mat, const Vec3 &wi, const Vec3 &wo, double wavelength_nm) {
    return pdf_impl(mat, wi, wo, wavelength_nm);
}

BsdfSample bsdf_sample(const MaterialSpec &m, const Vec3 &v, double u_lobe, Vec2 u, double wavelength_nm) {
    if (v.z == 0) return zero_sample();
    switch (m.family) {
        case MaterialFamily::diffuse: {
            if (v.z < 0) return zero_sample();
            const Vec3 l = sample_cosine_hemisphere(u);
            if (l.z <= 0) return zero_sample();
            return {l, Rgb(*m.diffuse_reflectance), l.z * kInvPi, false, false};
        }
        case MaterialFamily::conductor: {
            if (v.z < 0) return zero_sample();
            return {reflect_z(v), Rgb(fresnel_conductor(v.z, m.ior_at(wavelength_nm))), 1.0, true, false};
        }
        case MaterialFamily::rough_conductor: {
            if (v.z < 0) return zero_sample();
            const Vec3 wh = sample_ggx_visible_normal(v, *m.alpha, u);
            const Vec3 l = reflect(v, wh);
            if (l.z <= 0) return zero_sample();
            return from_eval(m, v, l, wavelength_nm);
        }
        case MaterialFamily::dielectric: {
            const double eta = m.ior_at(wavelength_nm).eta;
            const double f = fresnel_dielectric_signed(v.z, eta);
            if (u_lobe < f) return {reflect_z(v), Rgb(1.0), 1.0, true, false};
            const auto l = refract(v, {0, 0, 1}, eta);
            if (!l || l->z * v.z >= 0) return zero_sample();
            const double eta_v = v.z > 0 ? 1.0 : eta;
            const double eta_l = v.z > 0 ? eta : 1.0;
            const double scale = (eta_v * eta_v) / (eta_l * eta_l);
            return {normalize(*l), Rgb(scale), 1.0, true, true};
        }
        case MaterialFamily::rough_dielectric: {
            const double eta = m.ior_at(wavelength_nm).eta;
            const Vec3 wm = sample_ggx_visible_normal(v, *m.alpha, u);
            const double r = fresnel_dielectric_signed(dot(v, wm), eta);
            std::optional<Vec3> l;
            if (u_lobe < r) {
                l = reflect(v, wm);
                if (l->z * v.z <= 0) return zero_sample();
            } else {
                l = refract(v, wm, eta);
                if (!l || l->z * v.z >= 0) return zero_sample();
                l = normalize(*l);
            }
            return from_eval(m, v, *l, wavelength_nm);
        }
        case MaterialFamily::plastic:
        case MaterialFamily::rough_plastic: {
            if (v.z < 0) return zero_sample();
            const double eta = m.ior_at(wavelength_nm).eta;
            const double p_spec = fresnel_dielectric(v.z, 1.0, eta);
            if (m.family == MaterialFamily::plastic && u_lobe < p_spec)
                return {reflect_z(v), Rgb(1.0), 1.0, true, false};
            Vec3 l;
            if (u_lobe < p_spec)
                l = reflect(v, sample_ggx_visible_normal(v, *m.alpha, u));
            else
                l = sample_cosine_hemisphere(u);
            if (l.z <= 0) return zero_sample();
            return from_eval(m, v, l, wavelength_nm);
        }
    }
    return zero_sample();
}

BsdfSample bsdf_sample(const MaterialSpec &mat, const Vec3 &wi, Rng &rng, double wavelength_nm) {
    const double u_lobe = rng.uniform();
    const Vec2 u = rng.uniform2();
    return bsdf_sample(mat, wi, u_lobe, u, wavelength_nm);
}

}  // namespace matbench
