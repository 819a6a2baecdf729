// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "matbench/core/config.hpp"
#include "matbench/dataset/manifest.hpp"
#include "matbench/render/render.hpp"
#include "matbench/scene/scene.hpp"

namespace matbench {

/// Generation config (same key-value format as scene files):
///
///   shapes = "shapes/"       # directory of .obj/.ply files, or "builtin"
///   ior = "data/ior"         # material database root
///   envmaps = "maps/"        # directory of .hdr/.exr files, or "constant"
///   total = 1001
///   seed = 0
///   linear_exr = false
///   [cameras] ...            # as in scene files
///   [render] ...             # spp, max_depth, rr_start_depth, wavelengths_per_path
struct DatasetConfig {
    std::string shapes = "builtin";
    std::string ior = MATBENCH_DATA_DIR "/ior";
    std::string envmaps = "constant";
    int total = 7;
    uint64_t seed = 0;
    bool linear_exr = false;
    CameraConfig cameras;
    RenderSettings render{.spp = 512};
    std::filesystem::path base_dir;  // relative paths resolve here
};

DatasetConfig parse_dataset_config(const Config &cfg, const std::filesystem::path &base_dir);
Config to_config(const DatasetConfig &cfg);

/// Sorted shape and environment lists named by a config.
std::vector<std::string> list_shapes(const DatasetConfig &cfg);
std::vector<std::string> list_envmaps(const DatasetConfig &cfg);

/// Canonical JSON text of a manifest (sorted keys, fixed precision), which
/// also records the protocol conventions.
std::string manifest_json(const DatasetManifest &manifest, const DatasetConfig &cfg);

/// Renders one scene into `scene_dir`: mesh.obj, material.json, scene.toml,
/// transforms, {train,test}/r_k.png, depth/r_k.exr, mask/r_k.png.
void render_scene(const SceneAssignment &scene, const MaterialDatabase &db, const DatasetConfig &cfg,
                  const std::filesystem::path &scene_dir);

/// Full pipeline. With `dry_run` only manifest.json is written.
DatasetManifest generate_dataset(const DatasetConfig &cfg, const std::filesystem::path &out_dir, bool dry_run);

}  // namespace matbench
