// SPDX-License-Identifier: Apache-2.0

#include "matbench/scene/envmap.hpp"

#include <algorithm>
#include <cmath>

#include "matbench/core/error.hpp"
#include "matbench/materials/optics.hpp"

namespace matbench {

namespace {

// Keeps sampled positions strictly inside the chosen pixel.
constexpr double kEdgeMargin = 1e-7;

int find_interval(const double *cdf, int n, double u) {
    const auto it = std::upper_bound(cdf, cdf + n + 1, u);
    return std::clamp(static_cast<int>(it - cdf) - 1, 0, n - 1);
}

}  // namespace

EnvMap::EnvMap(const Image &img) : width_(img.width), height_(img.height) {
    if (img.channels != 1 && img.channels != 3 && img.channels != 4)
        throw ValidationError("environment map must have 1, 3 or 4 channels");
    if (height_ < 1 || width_ != 2 * height_) throw ValidationError("environment map width must be 2 x height");
    pixels_.resize(static_cast<std::size_t>(width_) * height_);
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
            const Rgb c = img.channels == 1 ? Rgb(img.at(x, y)) : Rgb(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
            if (!c.is_finite() || c.r < 0 || c.g < 0 || c.b < 0)
                throw ValidationError("environment map values must be finite and non-negative");
            pixels_[static_cast<std::size_t>(y) * width_ + x] = c;
        }

    row_cos_.resize(height_ + 1);
    for (int y = 0; y <= height_; ++y) row_cos_[y] = std::cos(kPi * y / height_);
    row_cos_[0] = 1.0;
    row_cos_[height_] = -1.0;

    conditional_cdf_.assign(static_cast<std::size_t>(height_) * (width_ + 1), 0.0);
    marginal_cdf_.assign(height_ + 1, 0.0);
    std::vector<double> row_sum(height_, 0.0);
    for (int y = 0; y < height_; ++y) {
        double *cdf = &conditional_cdf_[static_cast<std::size_t>(y) * (width_ + 1)];
        double acc = 0;
        for (int x = 0; x < width_; ++x) {
            acc += pixel(x, y).luminance();
            cdf[x + 1] = acc;
        }
        for (int x = 1; x <= width_; ++x) cdf[x] = acc > 0 ? cdf[x] / acc : static_cast<double>(x) / width_;
        cdf[width_] = 1.0;
        row_sum[y] = acc * pixel_solid_angle(y);
    }
    double acc = 0;
    for (int y = 0; y < height_; ++y) {
        acc += row_sum[y];
        marginal_cdf_[y + 1] = acc;
    }
    total_ = acc;
    for (int y = 1; y <= height_; ++y)
        marginal_cdf_[y] = acc > 0 ? marginal_cdf_[y] / acc : static_cast<double>(y) / height_;
    marginal_cdf_[height_] = 1.0;
}

EnvMap EnvMap::constant(const Rgb &radiance, int height) {
    Image img(2 * height, height, 3);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < 2 * height; ++x) img.set_rgb(x, y, radiance);
    return EnvMap(img);
}

double EnvMap::pixel_solid_angle(int y) const {
    return (row_cos_[y] - row_cos_[y + 1]) * 2.0 * kPi / width_;
}

Vec2 EnvMap::to_pixel(const Vec3 &dir) const {
    double phi = std::atan2(dir.y, dir.x);
    if (phi < 0) phi += 2.0 * kPi;
    const double theta = std::acos(std::clamp(dir.z, -1.0, 1.0));
    return {phi / (2.0 * kPi) * width_, theta / kPi * height_};
}

Rgb EnvMap::eval_point(const Vec3 &dir) const {
    const Vec2 p = to_pixel(dir);
    const int x = std::clamp(static_cast<int>(p.x), 0, width_ - 1);
    const int y = std::clamp(static_cast<int>(p.y), 0, height_ - 1);
    return pixel(x, y);
}

Rgb EnvMap::eval(const Vec3 &dir) const {
    const Vec2 p = to_pixel(dir);
    const double fx = p.x - 0.5, fy = std::clamp(p.y - 0.5, 0.0, height_ - 1.0);
    const double x0f = std::floor(fx), y0f = std::floor(fy);
    const double tx = fx - x0f, ty = fy - y0f;
    const int x0 = ((static_cast<int>(x0f) % width_) + width_) % width_;
    const int x1 = (x0 + 1) % width_;
    const int y0 = static_cast<int>(y0f);
    const int y1 = std::min(y0 + 1, height_ - 1);
    auto blend = [](const Rgb &a, const Rgb &b, double t) { return t == 0 ? a : a * (1.0 - t) + b * t; };
    return blend(blend(pixel(x0, y0), pixel(x1, y0), tx), blend(pixel(x0, y1), pixel(x1, y1), tx), ty);
}

EnvSample EnvMap::sample(Vec2 u) const {
    if (is_black()) {
        const Vec3 d = sample_uniform_sphere(u);
        return {d, Rgb(0.0), 1.0 / (4.0 * kPi)};
    }
    const int y = find_interval(marginal_cdf_.data(), height_, u.y);
    const double *cdf = &conditional_cdf_[static_cast<std::size_t>(y) * (width_ + 1)];
    const int x = find_interval(cdf, width_, u.x);
    // Reuse the remainders of u for the position inside the pixel.
    auto remap = [](double u_, double lo, double hi) {
        const double t = hi > lo ? (u_ - lo) / (hi - lo) : 0.5;
        return std::clamp(t, kEdgeMargin, 1.0 - kEdgeMargin);
    };
    const double sx = remap(u.x, cdf[x], cdf[x + 1]);
    const double sy = remap(u.y, marginal_cdf_[y], marginal_cdf_[y + 1]);
    const double phi = 2.0 * kPi * (x + sx) / width_;
    const double cos_theta = row_cos_[y] - sy * (row_cos_[y] - row_cos_[y + 1]);
    const double sin_theta = safe_sqrt(1.0 - cos_theta * cos_theta);
    const Vec3 d{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
    const Rgb L = pixel(x, y);
    return {d, L, L.luminance() / total_};
}

double EnvMap::pdf(const Vec3 &dir) const {
    if (is_black()) return 1.0 / (4.0 * kPi);
    return eval_point(dir).luminance() / total_;
}

EnvMap load_envmap(const std::filesystem::path &path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".hdr" && ext != ".exr")
        throw ValidationError("environment map must be HDR (.hdr or .exr), got " + path.string());
    return EnvMap(read_image(path));
}

}  // namespace matbench
