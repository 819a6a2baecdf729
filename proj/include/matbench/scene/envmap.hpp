// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "matbench/core/image.hpp"
#include "matbench/core/math.hpp"
#include "matbench/core/rng.hpp"

namespace matbench {

struct EnvSample {
    Vec3 direction;
    Rgb radiance;
    double pdf = 0;  // solid-angle density
};

/// Equirectangular radiance map with world +z up. Row 0 is the zenith,
/// column u covers azimuth atan2(y, x) in [2 pi u / W, 2 pi (u + 1) / W).
/// Pixels are importance sampled by luminance times their solid angle.
class EnvMap {
  public:
    /// Takes a linear RGB (or single channel) image with width = 2 * height.
    explicit EnvMap(const Image &radiance);
    static EnvMap constant(const Rgb &radiance, int height = 8);

    int width() const { return width_; }
    int height() const { return height_; }
    Rgb pixel(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

    /// Bilinear lookup; exact at pixel centers.
    Rgb eval(const Vec3 &dir) const;
    /// Value of the pixel containing `dir`.
    Rgb eval_point(const Vec3 &dir) const;

    EnvSample sample(Vec2 u) const;
    EnvSample sample(Rng &rng) const { return sample(rng.uniform2()); }
    double pdf(const Vec3 &dir) const;

    bool is_black() const { return total_ <= 0; }
    /// Integral of luminance over the sphere.
    double luminance_integral() const { return total_; }
    /// Solid angle of a pixel in row y.
    double pixel_solid_angle(int y) const;
    const std::vector<double> &marginal_cdf() const { return marginal_cdf_; }
    const std::vector<double> &conditional_cdf() const { return conditional_cdf_; }

    /// Continuous pixel coordinates of a direction.
    Vec2 to_pixel(const Vec3 &dir) const;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
    std::vector<double> marginal_cdf_;     // height + 1 entries
    std::vector<double> conditional_cdf_;  // height rows of width + 1 entries
    std::vector<double> row_cos_;          // cos(theta) at the height + 1 row edges
    double total_ = 0;
};

/// Reads a Radiance .hdr or OpenEXR map. LDR formats and width != 2 * height
/// are rejected.
EnvMap load_envmap(const std::filesystem::path &path);

}  // namespace matbench
