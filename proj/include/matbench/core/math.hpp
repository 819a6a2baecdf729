// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace matbench {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInvPi = 1.0 / std::numbers::pi;

struct Vec2 {
    double x = 0, y = 0;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double &operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 &operator+=(const Vec3 &o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3 &operator-=(const Vec3 &o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3 &operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3 &v) { return std::sqrt(dot(v, v)); }
constexpr double length_squared(const Vec3 &v) { return dot(v, v); }
inline Vec3 normalize(const Vec3 &v) { return v / length(v); }
inline Vec3 vmin(const Vec3 &a, const Vec3 &b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 vmax(const Vec3 &a, const Vec3 &b) {
    return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}
inline double distance(const Vec3 &a, const Vec3 &b) { return length(a - b); }

/// Mirror of `w` about the +z axis of a local shading frame.
constexpr Vec3 reflect_z(const Vec3 &w) { return {-w.x, -w.y, w.z}; }

/// Reflects `w` about the unit vector `n` (both pointing away from the surface).
constexpr Vec3 reflect(const Vec3 &w, const Vec3 &n) { return -w + n * (2.0 * dot(w, n)); }

/// Linear RGB triple; also used as a three-channel throughput.
struct Rgb {
    double r = 0, g = 0, b = 0;

    constexpr Rgb() = default;
    constexpr Rgb(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
    constexpr explicit Rgb(double v) : r(v), g(v), b(v) {}

    constexpr double operator[](int i) const { return i == 0 ? r : (i == 1 ? g : b); }
    constexpr double &operator[](int i) { return i == 0 ? r : (i == 1 ? g : b); }

    constexpr Rgb &operator+=(const Rgb &o) {
        r += o.r;
        g += o.g;
        b += o.b;
        return *this;
    }
    constexpr Rgb &operator*=(const Rgb &o) {
        r *= o.r;
        g *= o.g;
        b *= o.b;
        return *this;
    }
    constexpr Rgb &operator*=(double s) {
        r *= s;
        g *= s;
        b *= s;
        return *this;
    }
    constexpr bool is_black() const { return r == 0 && g == 0 && b == 0; }
    constexpr double max_component() const { return std::max(r, std::max(g, b)); }
    constexpr double average() const { return (r + g + b) / 3.0; }
    constexpr double luminance() const { return 0.2126 * r + 0.7152 * g + 0.0722 * b; }
    bool is_finite() const { return std::isfinite(r) && std::isfinite(g) && std::isfinite(b); }
    friend constexpr bool operator==(const Rgb &, const Rgb &) = default;
};

constexpr Rgb operator+(Rgb a, const Rgb &b) { return a += b; }
constexpr Rgb operator*(Rgb a, const Rgb &b) { return a *= b; }
constexpr Rgb operator*(Rgb a, double s) { return a *= s; }
constexpr Rgb operator*(double s, Rgb a) { return a *= s; }
constexpr Rgb operator/(Rgb a, double s) { return a *= (1.0 / s); }

/// Orthonormal basis with `n` as the local +z axis.
struct Frame {
    Vec3 s, t, n;

    /// Builds a frame around a unit normal (Duff et al. 2017).
    static Frame from_normal(const Vec3 &n) {
        const double sign = std::copysign(1.0, n.z);
        const double a = -1.0 / (sign + n.z);
        const double b = n.x * n.y * a;
        return {{1.0 + sign * n.x * n.x * a, sign * b, -sign * n.x}, {b, sign + n.y * n.y * a, -n.y}, n};
    }

    Vec3 to_local(const Vec3 &v) const { return {dot(v, s), dot(v, t), dot(v, n)}; }
    Vec3 to_world(const Vec3 &v) const { return s * v.x + t * v.y + n * v.z; }
};

/// Row-major 4x4 matrix acting on column vectors.
struct Mat4 {
    std::array<double, 16> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

    static Mat4 identity() { return {}; }

    constexpr double operator()(int r, int c) const { return m[r * 4 + c]; }
    constexpr double &operator()(int r, int c) { return m[r * 4 + c]; }

    friend Mat4 operator*(const Mat4 &a, const Mat4 &b) {
        Mat4 out;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
                out(r, c) = s;
            }
        return out;
    }

    Vec3 transform_point(const Vec3 &p) const {
        return {m[0] * p.x + m[1] * p.y + m[2] * p.z + m[3], m[4] * p.x + m[5] * p.y + m[6] * p.z + m[7],
                m[8] * p.x + m[9] * p.y + m[10] * p.z + m[11]};
    }
    Vec3 transform_vector(const Vec3 &v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[4] * v.x + m[5] * v.y + m[6] * v.z,
                m[8] * v.x + m[9] * v.y + m[10] * v.z};
    }
    Vec3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
    void set_column(int c, const Vec3 &v) {
        (*this)(0, c) = v.x;
        (*this)(1, c) = v.y;
        (*this)(2, c) = v.z;
    }

    /// Inverse of a rigid transform (orthonormal rotation block plus translation).
    Mat4 rigid_inverse() const {
        Mat4 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out(r, c) = (*this)(c, r);
        const Vec3 t = column(3);
        out.set_column(3, -out.transform_vector(t));
        return out;
    }
};

/// Unit quaternion (w, x, y, z).
struct Quat {
    double w = 1, x = 0, y = 0, z = 0;
};

/// Rotation block of `m` to a unit quaternion with non-negative w.
Quat quat_from_rotation(const Mat4 &m);
/// Rotation matrix (upper 3x3, zero translation) from a unit quaternion.
Mat4 rotation_from_quat(const Quat &q);

inline double radians(double deg) { return deg * kPi / 180.0; }
inline double degrees(double rad) { return rad * 180.0 / kPi; }

inline double safe_sqrt(double v) { return std::sqrt(std::max(0.0, v)); }

inline double lerp(double t, double a, double b) { return (1.0 - t) * a + t * b; }

}  // namespace matbench
