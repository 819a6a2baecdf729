// SPDX-License-Identifier: Apache-2.0

#include "matbench/evaluate/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "matbench/core/error.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/dataset/transforms.hpp"

namespace matbench {

using nlohmann::json;

void load_scene_views(const std::filesystem::path &scene_dir, std::vector<Camera> &cameras,
                      std::vector<Image> &depth_maps) {
    for (const char *split : {"train", "test"}) {
        const auto path = scene_dir / (std::string("transforms_") + split + ".json");
        if (!std::filesystem::exists(path)) throw ValidationError("missing " + path.string());
        const auto file = read_transforms(path);
        for (const auto &f : file.frames) {
            if (f.depth_file_path.empty()) throw ValidationError("frame " + f.file_path + " has no depth_file_path");
            std::string rel = f.depth_file_path;
            if (rel.rfind("./", 0) == 0) rel = rel.substr(2);
            Image depth = read_exr(scene_dir / (rel + ".exr"));
            Camera c;
            c.pose = f.transform;
            c.fov_x = file.camera_angle_x;
            c.width = depth.width;
            c.height = depth.height;
            c.tag = std::string(split) == "train" ? CameraTag::train : CameraTag::test;
            c.index = static_cast<int>(cameras.size());
            cameras.push_back(c);
            depth_maps.push_back(std::move(depth));
        }
    }
}

MeshEvalResult evaluate_mesh(const TriangleMesh &gt, const std::vector<Camera> &cameras,
                             const std::vector<Image> &depth_maps, const TriangleMesh &pred,
                             const MeshEvalParams &p) {
    MeshEvalResult r;
    const PointCloud visible = extract_visible_points(depth_maps, cameras, p.stride);
    r.views = cameras.size();
    r.visible_points = visible.points.size();
    if (visible.points.empty()) throw ValidationError("no visible points in the depth maps");
    const TriangleMesh gt_vis = filter_visible_facets(gt, visible, p.tau);
    const TriangleMesh pred_vis = p.filter_prediction ? filter_visible_facets(pred, visible, p.tau) : pred;
    r.gt_faces = gt.faces.size();
    r.gt_visible_faces = gt_vis.faces.size();
    r.pred_faces = pred.faces.size();
    r.pred_visible_faces = pred_vis.faces.size();
    if (gt_vis.faces.empty()) throw ValidationError("no ground-truth facets are visible");
    if (pred_vis.faces.empty()) throw ValidationError("no predicted facets are visible");
    // One sampling seed for both meshes: identical meshes give identical clouds.
    const uint64_t seed = derive_seed(p.seed, "eval-samples");
    const auto a = sample_points(pred_vis, p.samples, seed);
    const auto b = sample_points(gt_vis, p.samples, seed);
    r.chamfer = chamfer(a, b, p.outlier_threshold);
    return r;
}

std::string mesh_report_json(const MeshEvalResult &r, const MeshEvalParams &p) {
    json j;
    j["chamfer"] = r.chamfer.chamfer;
    j["mean_pred_to_gt"] = r.chamfer.mean_a_to_b;
    j["mean_gt_to_pred"] = r.chamfer.mean_b_to_a;
    j["excluded_count"] = r.chamfer.excluded_count;
    j["excluded_pred_to_gt"] = r.chamfer.excluded_a_to_b;
    j["excluded_gt_to_pred"] = r.chamfer.excluded_b_to_a;
    j["views"] = r.views;
    j["visible_points"] = r.visible_points;
    j["gt_faces"] = r.gt_faces;
    j["gt_visible_faces"] = r.gt_visible_faces;
    j["pred_faces"] = r.pred_faces;
    j["pred_visible_faces"] = r.pred_visible_faces;
    j["protocol"] = {{"stride", p.stride},
                     {"tau", p.tau},
                     {"samples", p.samples},
                     {"outlier_threshold", p.outlier_threshold},
                     {"seed", std::to_string(p.seed)},
                     {"filter_prediction", p.filter_prediction},
                     {"distance", "unsquared euclidean"},
                     {"facet_rule", "all three vertices within tau of a visible point"}};
    return j.dump(2) + "\n";
}

std::vector<ViewScore> evaluate_views(const std::filesystem::path &dir_a, const std::filesystem::path &dir_b) {
    for (const auto &d : {dir_a, dir_b})
        if (!std::filesystem::is_directory(d)) throw ValidationError("not a directory: " + d.string());
    std::vector<std::string> names;
    for (const auto &e : std::filesystem::directory_iterator(dir_a))
        if (e.is_regular_file() && e.path().extension() == ".png" && std::filesystem::exists(dir_b / e.path().filename()))
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw ValidationError("no matching PNG files in the two directories");
    std::vector<ViewScore> scores;
    for (const auto &n : names) {
        const Image a = read_png(dir_a / n), b = read_png(dir_b / n);
        scores.push_back({n, psnr(a, b), ssim(a, b)});
    }
    return scores;
}

std::string views_report_json(const std::vector<ViewScore> &scores) {
    json j;
    json per = json::array();
    double sp = 0, ss = 0;
    for (const auto &s : scores) {
        per.push_back({{"name", s.name}, {"psnr", s.psnr}, {"ssim", s.ssim}});
        sp += s.psnr;
        ss += s.ssim;
    }
    j["images"] = per;
    j["mean_psnr"] = scores.empty() ? 0.0 : sp / scores.size();
    j["mean_ssim"] = scores.empty() ? 0.0 : ss / scores.size();
    j["count"] = scores.size();
    return j.dump(2) + "\n";
}

}  // namespace matbench
