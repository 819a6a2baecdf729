// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matbench/core/image.hpp"
#include "matbench/geometry/mesh.hpp"
#include "matbench/scene/camera.hpp"

namespace matbench {

inline constexpr double kOutlierThreshold = 0.15;
inline constexpr double kVisibleFacetTau = 0.01;
inline constexpr int kDefaultStride = 4;
inline constexpr int kDefaultSampleCount = 1'000'000;
inline constexpr double kPsnrCap = 99.0;

struct PointCloud {
    std::vector<Vec3> points;
};

struct ChamferReport {
    double mean_a_to_b = 0;
    double mean_b_to_a = 0;
    double chamfer = 0;
    std::size_t excluded_count = 0;
    std::size_t excluded_a_to_b = 0;
    std::size_t excluded_b_to_a = 0;
};

/// Unprojects every `stride`-th pixel (in x and y) with depth > 0 along its
/// pixel-center ray; depth is ray length. Union over all views.
PointCloud extract_visible_points(const std::vector<Image> &depth_maps, const std::vector<Camera> &cameras,
                                  int stride = kDefaultStride);

/// Keeps faces whose three vertices each lie closer than `tau` to some
/// visible point. Unreferenced vertices are dropped.
TriangleMesh filter_visible_facets(const TriangleMesh &mesh, const PointCloud &visible, double tau = kVisibleFacetTau);

/// Area-uniform surface samples, deterministic per seed.
PointCloud sample_points(const TriangleMesh &mesh, std::size_t n, uint64_t seed);

/// Outlier-filtered Chamfer distance (unsquared Euclidean). Per-point
/// nearest distances above `outlier_threshold` are excluded from the
/// directional means. Throws ValidationError when a direction keeps no
/// points.
ChamferReport chamfer(const PointCloud &a, const PointCloud &b, double outlier_threshold = kOutlierThreshold);

/// O(n m) reference implementation of chamfer().
ChamferReport chamfer_brute_force(const PointCloud &a, const PointCloud &b, double outlier_threshold = kOutlierThreshold);

/// Per-point nearest distances from a to b.
std::vector<double> nearest_distances(const PointCloud &a, const PointCloud &b);

double psnr(const Image &a, const Image &b);
double ssim(const Image &a, const Image &b);

}  // namespace matbench
