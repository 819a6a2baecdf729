// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "matbench/core/config.hpp"
#include "matbench/geometry/bvh.hpp"
#include "matbench/geometry/mesh.hpp"
#include "matbench/materials/bsdf.hpp"
#include "matbench/scene/camera.hpp"
#include "matbench/scene/envmap.hpp"

namespace matbench {

struct CameraConfig {
    int n_train = 50;
    int n_test = 40;
    double radius = kDefaultCameraRadius;
    double fov_x = kDefaultFovX;
    int width = 1600;
    int height = 1200;

    CameraSet build() const { return make_cameras(n_train, n_test, radius, fov_x, width, height); }
};

/// Serializable scene description: one shape, one material, one environment.
///
///   seed = 7
///   mesh = "shapes/bunny.obj"        # or "builtin:sphere", "builtin:cube"
///   envmap = "maps/studio.hdr"       # or "constant"
///   envmap_radiance = [1, 1, 1]      # constant maps only
///   [material]
///   family = "rough_conductor"
///   ior = "ior/conductor/gold.csv"   # absent for diffuse
///   alpha = 0.3                      # rough families
///   reflectance = 0.5                # diffuse
///   pigment = [0.8, 0.2, 0.2]        # plastic families
///   [cameras]
///   train = 50
///   test = 40
///   radius = 2.5
///   fov_x = 0.6911
///   width = 1600
///   height = 1200
///
/// Relative paths resolve against the directory of the scene file.
struct SceneDesc {
    std::string mesh = "builtin:sphere";
    MaterialSpec material = MaterialSpec::diffuse(0.5);
    std::string ior_path;  // as written in the file
    std::string envmap = "constant";
    Rgb envmap_radiance{1.0};
    CameraConfig cameras;
    uint64_t seed = 0;
};

SceneDesc parse_scene_desc(const Config &cfg, const std::filesystem::path &base_dir);
SceneDesc load_scene_desc(const std::filesystem::path &path);
Config to_config(const SceneDesc &desc);

/// Resolves `path` against `base_dir` unless absolute or builtin.
std::filesystem::path resolve_path(const std::string &path, const std::filesystem::path &base_dir);

/// Reads an IOR table and relabels non-conductor tables to the family the
/// material needs (dielectric and plastic files share one format).
std::shared_ptr<const IorTable> load_ior_for(MaterialFamily family, const std::filesystem::path &path);

/// Render-ready scene: normalized mesh, BVH, environment, material.
struct Scene {
    std::shared_ptr<const TriangleMesh> mesh;
    Similarity normalization;
    std::shared_ptr<const Bvh> bvh;
    std::shared_ptr<const EnvMap> env;
    MaterialSpec material;
};

/// Builds a scene from an already-positioned mesh (no normalization).
Scene make_scene(TriangleMesh mesh, MaterialSpec material, EnvMap env);

/// Loads, normalizes to the unit sphere and builds acceleration data.
Scene load_scene(const SceneDesc &desc, const std::filesystem::path &base_dir);

/// Shape loader shared by scene and dataset code ("builtin:<name>" or a file).
TriangleMesh load_shape(const std::string &mesh, const std::filesystem::path &base_dir);

}  // namespace matbench
