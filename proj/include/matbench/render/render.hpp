// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>

#include "matbench/core/config.hpp"
#include "matbench/core/image.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/scene/camera.hpp"
#include "matbench/scene/scene.hpp"

namespace matbench {

struct RenderSettings {
    int spp = 64;
    int max_depth = 12;  // scattering events; 0 renders the background only
    int rr_start_depth = 4;
    int wavelengths_per_path = 1;
    uint64_t seed = 0;
    int threads = 0;  // 0 = default_thread_count()

    void validate() const;
};

/// Reads the optional [render] section (spp, max_depth, rr_start_depth,
/// wavelengths_per_path) over `base`.
RenderSettings parse_render_settings(const Config &cfg, RenderSettings base = {});
void write_render_settings(Config &cfg, const RenderSettings &s);

struct RenderOutput {
    Image radiance;  // linear RGB
    Image depth;     // ray length to the first hit, 0 on background
    Image mask;      // 1 where depth > 0
    uint64_t nonfinite_samples = 0;
};

struct PathStats {
    uint64_t nonfinite = 0;
};

/// Radiance along `ray` for one wavelength, expressed in linear RGB: the
/// spectral estimate is mapped through wavelength_rgb_weight when the path
/// touched a wavelength-dependent material. Uses `sampler` dimensions in a
/// fixed order.
Rgb trace_path(const Scene &scene, const Ray &ray, StratifiedSampler &sampler, const RenderSettings &settings,
               double wavelength_nm);

RenderOutput render_image(const Scene &scene, const Camera &camera, const RenderSettings &settings);

/// Writes `<dir>/<stem>.png` (16-bit, gamma 2.2), optionally `<stem>.exr`
/// (linear), plus depth and mask files at the given paths.
void write_radiance(const std::filesystem::path &png_path, const RenderOutput &out, bool linear_exr);
void write_depth(const std::filesystem::path &exr_path, const RenderOutput &out);
void write_mask(const std::filesystem::path &png_path, const RenderOutput &out);

}  // namespace matbench
