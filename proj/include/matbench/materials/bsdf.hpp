// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string_view>

#include "matbench/core/math.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/spectra/ior.hpp"

namespace matbench {

enum class MaterialFamily { diffuse, conductor, dielectric, plastic, rough_conductor, rough_dielectric, rough_plastic };

inline constexpr std::array<MaterialFamily, 7> kAllFamilies = {
    MaterialFamily::diffuse,         MaterialFamily::conductor,        MaterialFamily::dielectric,
    MaterialFamily::plastic,         MaterialFamily::rough_conductor, MaterialFamily::rough_dielectric,
    MaterialFamily::rough_plastic};

std::string_view to_string(MaterialFamily family);
std::optional<MaterialFamily> material_family_from_string(std::string_view name);

/// Which IOR database family a material family draws from; nullopt for diffuse.
std::optional<IorFamily> ior_family_for(MaterialFamily family);
bool is_rough(MaterialFamily family);

inline constexpr double kMinDiffuseReflectance = 0.15;
inline constexpr double kMaxDiffuseReflectance = 0.85;

/// One homogeneous material. Only the fields used by `family` are set; use
/// the named constructors, which validate.
struct MaterialSpec {
    MaterialFamily family = MaterialFamily::diffuse;
    std::shared_ptr<const IorTable> ior;
    std::optional<double> alpha;
    std::optional<double> diffuse_reflectance;
    std::optional<Rgb> pigment_albedo;

    static MaterialSpec diffuse(double reflectance);
    static MaterialSpec conductor(std::shared_ptr<const IorTable> ior);
    static MaterialSpec rough_conductor(std::shared_ptr<const IorTable> ior, double alpha);
    static MaterialSpec dielectric(std::shared_ptr<const IorTable> ior);
    static MaterialSpec rough_dielectric(std::shared_ptr<const IorTable> ior, double alpha);
    static MaterialSpec plastic(std::shared_ptr<const IorTable> ior, Rgb pigment);
    static MaterialSpec rough_plastic(std::shared_ptr<const IorTable> ior, double alpha, Rgb pigment);

    /// Throws ValidationError unless exactly the family's fields are present
    /// and in range.
    void validate() const;

    /// True when the response depends on wavelength (conductor families).
    bool is_spectral() const;
    bool has_transmission() const;

    /// Index at `wavelength_nm`: interpolated for conductors, the 589.29 nm
    /// value for dielectrics and plastics.
    ComplexIor ior_at(double wavelength_nm) const;

    /// Hemispherical internal Fresnel reflectance (plastics only, else 0).
    double internal_reflectance() const { return internal_fresnel_; }

  private:
    void finalize();
    double internal_fresnel_ = 0;
};

/// A sampled scattering event. `weight` is f |cos| / pdf per RGB channel;
/// channels differ only for pigmented plastics.
struct BsdfSample {
    Vec3 wo;
    Rgb weight;
    double pdf = 1.0;
    bool is_delta = false;
    bool is_transmission = false;
};

/// Directions live in the local shading frame (normal = +z) and point away
/// from the surface; `wi` faces the viewer, `wo` the light. For transmissive
/// families a negative z means the inside of the object.
Rgb bsdf_eval(const MaterialSpec &mat, const Vec3 &wi, const Vec3 &wo, double wavelength_nm);
double bsdf_pdf(const MaterialSpec &mat, const Vec3 &wi, const Vec3 &wo, double wavelength_nm = kRepresentativeWavelength);

/// Samples with explicit uniforms: `u_lobe` picks a lobe, `u_dir` the direction.
BsdfSample bsdf_sample(const MaterialSpec &mat, const Vec3 &wi, double u_lobe, Vec2 u_dir, double wavelength_nm);
BsdfSample bsdf_sample(const MaterialSpec &mat, const Vec3 &wi, Rng &rng, double wavelength_nm);

}  // namespace matbench
