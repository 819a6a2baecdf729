// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "matbench/core/math.hpp"
#include "matbench/scene/camera.hpp"

namespace matbench {

/// One frame of a NeRF-synthetic transforms file.
struct TransformFrame {
    std::string file_path;  // "./train/r_3" (no extension)
    Mat4 transform;         // camera-to-world, Blender convention
    std::string depth_file_path;
    std::string mask_file_path;
};

struct TransformsFile {
    double camera_angle_x = 0;
    std::vector<TransformFrame> frames;
};

/// Frame paths for global camera index k under a split ("train"/"test").
TransformFrame make_frame(const Camera &camera);

/// Writes transforms_train.json and transforms_test.json under `scene_dir`.
void write_transforms(const CameraSet &cameras, const std::filesystem::path &scene_dir);
void write_transforms_file(const std::filesystem::path &path, const TransformsFile &file);
TransformsFile read_transforms(const std::filesystem::path &path);

/// Blender camera-to-world to COLMAP world-to-camera (and back). COLMAP
/// cameras look along +z with +y down.
Mat4 blender_to_colmap_w2c(const Mat4 &c2w);
Mat4 colmap_w2c_to_blender(const Mat4 &w2c);

struct ColmapImage {
    int id = 0;
    Quat rotation;  // world-to-camera
    Vec3 translation;
    std::string name;  // "train/r_3.png"
};

struct ColmapModel {
    int width = 0;
    int height = 0;
    double fx = 0, fy = 0, cx = 0, cy = 0;
    std::vector<ColmapImage> images;
};

/// Builds the COLMAP model of a scene directory from its transforms files.
/// Image size comes from the first frame's PNG unless width/height > 0.
ColmapModel transforms_to_colmap(const std::filesystem::path &scene_dir, int width = 0, int height = 0);

/// Writes cameras.txt, images.txt and an empty points3D.txt into `out_dir`.
void write_colmap(const ColmapModel &model, const std::filesystem::path &out_dir);
ColmapModel read_colmap(const std::filesystem::path &dir);

/// Recovers train/test transforms from a COLMAP model (split by name prefix).
TransformsFile colmap_to_transforms(const ColmapModel &model, std::string_view split);

/// scene_dir/colmap/sparse/0 after writing the model.
std::filesystem::path convert_to_colmap(const std::filesystem::path &scene_dir, int width = 0, int height = 0);

}  // namespace matbench
