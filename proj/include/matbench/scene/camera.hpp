// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "matbench/core/math.hpp"
#include "matbench/geometry/bvh.hpp"

namespace matbench {

enum class CameraTag { train, test };
std::string_view to_string(CameraTag tag);

inline constexpr double kDefaultCameraRadius = 2.5;
inline constexpr double kDefaultFovX = 0.6911;

/// Pinhole camera. `pose` is camera-to-world with columns (right, up, back,
/// position): the camera looks along its local -z with +y up.
struct Camera {
    Mat4 pose;
    double fov_x = kDefaultFovX;
    int width = 0;
    int height = 0;
    CameraTag tag = CameraTag::train;
    int index = 0;

    Vec3 position() const { return pose.column(3); }
    Vec3 forward() const { return -pose.column(2); }
    /// Focal length in pixels.
    double focal() const;
    /// Unit world direction through continuous pixel coordinates (x right,
    /// y down; pixel (i, j) spans [i, i+1) x [j, j+1)).
    Vec3 direction(double px, double py) const;
    Ray ray(double px, double py) const { return {position(), direction(px, py), 0.0}; }
    /// Ray through the center of pixel (i, j).
    Ray center_ray(int i, int j) const { return ray(i + 0.5, j + 0.5); }
};

struct CameraSet {
    std::vector<Camera> cameras;

    std::vector<Camera> with_tag(CameraTag tag) const;
    std::size_t size() const { return cameras.size(); }
};

/// Camera-to-world pose at `position` looking at `target` with world +z up,
/// falling back to +x when the view direction is parallel to z.
Mat4 look_at(const Vec3 &position, const Vec3 &target = {});

/// Fibonacci lattice on the upper hemisphere: z_i = 1 - (i + 0.5)/n,
/// azimuth 2 pi i (1 - 1/golden).
std::vector<Vec3> fibonacci_hemisphere(int n);

/// Whether lattice index i is a test view for an (n_train, n_test) split.
bool is_test_index(int i, int n_train, int n_test);

CameraSet make_cameras(int n_train, int n_test, double radius, double fov_x, int width, int height);

}  // namespace matbench
