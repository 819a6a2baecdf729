// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "matbench/core/math.hpp"
#include "matbench/core/rng.hpp"

namespace matbench {

struct SpectralSample {
    double wavelength_nm;
    double power;
};

/// Sampled spectral power distribution; wavelengths in [380, 780] nm.
struct SpectralPower {
    std::vector<SpectralSample> values;
};

/// CIE 1931 2-degree color matching functions (x̄, ȳ, z̄) at `wavelength_nm`,
/// linearly interpolated from the bundled 5 nm table. Zero outside 380-780.
Vec3 cie_cmf(double wavelength_nm);

/// Trapezoid integral of the SPD against the color matching functions,
/// divided by the ȳ integral of the equal-energy illuminant.
Vec3 spectrum_to_xyz(const SpectralPower &spd);

/// XYZ (equal-energy white) to linear sRGB. Includes a Bradford adaptation
/// from illuminant E to D65 so that an equal-energy spectrum maps to white.
Rgb xyz_to_linear_srgb(const Vec3 &xyz);

/// Linear sRGB of a spectrum; negative channels are clamped to zero.
Rgb spectrum_to_rgb(const SpectralPower &spd);

/// RGB response of a unit delta at `wavelength_nm`, scaled so that its mean
/// over wavelengths uniform in [380, 780] is exactly (1, 1, 1). Multiplying a
/// reflectance sampled at a uniform wavelength by this weight gives an unbiased
/// estimate of the reflectance's color under white light. Not clamped.
Rgb wavelength_rgb_weight(double wavelength_nm);

/// `n` stratified wavelengths: sample i is uniform in
/// [380 + 400 i / n, 380 + 400 (i + 1) / n).
std::vector<double> sample_wavelengths(Rng &rng, int n);

}  // namespace matbench
