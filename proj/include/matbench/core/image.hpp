// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "matbench/core/math.hpp"

namespace matbench {

/// Interleaved float image, row 0 at the top.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> pixels;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c), pixels(static_cast<std::size_t>(w) * h * c, fill) {}

    float &at(int x, int y, int c = 0) { return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c]; }
    float at(int x, int y, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    Rgb rgb(int x, int y) const {
        if (channels == 1) return Rgb(at(x, y));
        return {at(x, y, 0), at(x, y, 1), at(x, y, 2)};
    }
    void set_rgb(int x, int y, const Rgb &v) {
        at(x, y, 0) = static_cast<float>(v.r);
        at(x, y, 1) = static_cast<float>(v.g);
        at(x, y, 2) = static_cast<float>(v.b);
    }
    bool empty() const { return pixels.empty(); }
    bool same_shape(const Image &o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    friend bool operator==(const Image &, const Image &) = default;
};

/// 16-bit RGB PNG after clamping to [0,1] and a fixed 1/2.2 gamma.
void write_png16_gamma(const std::filesystem::path &path, const Image &linear_rgb);
/// 8-bit single-channel PNG; values are clamped to [0,1] and scaled to 255.
void write_png8(const std::filesystem::path &path, const Image &gray);
/// Reads an 8- or 16-bit PNG into [0,1] floats (no gamma removal).
Image read_png(const std::filesystem::path &path);

/// Uncompressed-float OpenEXR with channels "Y" (1) or "R","G","B" (3).
void write_exr(const std::filesystem::path &path, const Image &image);
/// Reads an OpenEXR file; "Y"/"Z"/"R" single channel or RGB.
Image read_exr(const std::filesystem::path &path);

/// Radiance RGBE (.hdr), flat and run-length encoded scanlines.
Image read_hdr(const std::filesystem::path &path);
void write_hdr(const std::filesystem::path &path, const Image &rgb);

/// Dispatches on file extension (.png, .exr, .hdr).
Image read_image(const std::filesystem::path &path);

}  // namespace matbench
