// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "matbench/evaluate/evaluate.hpp"

namespace matbench {

struct MeshEvalParams {
    int stride = kDefaultStride;
    double tau = kVisibleFacetTau;
    std::size_t samples = kDefaultSampleCount;
    double outlier_threshold = kOutlierThreshold;
    uint64_t seed = 0;
    bool filter_prediction = true;
};

struct MeshEvalResult {
    ChamferReport chamfer;
    std::size_t views = 0;
    std::size_t visible_points = 0;
    std::size_t gt_faces = 0;
    std::size_t gt_visible_faces = 0;
    std::size_t pred_faces = 0;
    std::size_t pred_visible_faces = 0;
};

/// Cameras and depth maps of a scene directory (both transforms files).
void load_scene_views(const std::filesystem::path &scene_dir, std::vector<Camera> &cameras,
                      std::vector<Image> &depth_maps);

/// Visible-mesh Chamfer protocol: visible points from the scene's depth maps,
/// visible-facet filtering of the ground truth (and of the prediction when
/// enabled), area-uniform sampling of both, outlier-filtered Chamfer.
MeshEvalResult evaluate_mesh(const TriangleMesh &gt, const std::vector<Camera> &cameras,
                             const std::vector<Image> &depth_maps, const TriangleMesh &pred,
                             const MeshEvalParams &params);

std::string mesh_report_json(const MeshEvalResult &result, const MeshEvalParams &params);

struct ViewScore {
    std::string name;
    double psnr = 0;
    double ssim = 0;
};

/// PSNR/SSIM for every PNG name present in both directories.
std::vector<ViewScore> evaluate_views(const std::filesystem::path &dir_a, const std::filesystem::path &dir_b);
std::string views_report_json(const std::vector<ViewScore> &scores);

}  // namespace matbench
