// SPDX-License-Identifier: Apache-2.0

#include "matbench/geometry/primitives.hpp"

#include <map>
#include <string>

#include "matbench/core/error.hpp"

namespace matbench {

TriangleMesh make_icosphere(int subdivisions, double radius) {
    if (subdivisions < 0 || subdivisions > 8) throw ValidationError("icosphere subdivisions must be in [0, 8]");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto &p : v) p = normalize(p);
    std::vector<Face> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                           {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                           {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<uint32_t, uint32_t>, uint32_t> midpoint;
        auto mid = [&](uint32_t a, uint32_t b) {
            const auto key = std::minmax(a, b);
            auto [it, inserted] = midpoint.try_emplace({key.first, key.second}, 0);
            if (inserted) {
                it->second = static_cast<uint32_t>(v.size());
                v.push_back(normalize(v[a] + v[b]));
            }
            return it->second;
        };
        std::vector<Face> next;
        next.reserve(f.size() * 4);
        for (const auto &[a, b, c] : f) {
            const uint32_t ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        f = std::move(next);
    }
    TriangleMesh mesh;
    mesh.normals = v;
    mesh.vertices.reserve(v.size());
    for (const auto &p : v) mesh.vertices.push_back(p * radius);
    mesh.faces = std::move(f);
    return mesh;
}

TriangleMesh make_box(const Vec3 &lo, const Vec3 &hi) {
    TriangleMesh mesh;
    for (int axis = 0; axis < 3; ++axis) {
        for (int side = 0; side < 2; ++side) {
            const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
            Vec3 n;
            n[axis] = side ? 1.0 : -1.0;
            const auto base = static_cast<uint32_t>(mesh.vertices.size());
            for (int k = 0; k < 4; ++k) {
                Vec3 p;
                p[axis] = side ? hi[axis] : lo[axis];
                p[a1] = (k == 1 || k == 2) ? hi[a1] : lo[a1];
                p[a2] = (k >= 2) ? hi[a2] : lo[a2];
                mesh.vertices.push_back(p);
                mesh.normals.push_back(n);
            }
            // (a1, a2) is right-handed around +axis, so wind counter-clockwise for side 1.
            if (side)
                mesh.faces.insert(mesh.faces.end(), {Face{base, base + 1, base + 2}, Face{base, base + 2, base + 3}});
            else
                mesh.faces.insert(mesh.faces.end(), {Face{base, base + 2, base + 1}, Face{base, base + 3, base + 2}});
        }
    }
    return mesh;
}

TriangleMesh make_builtin_shape(std::string_view name) {
    if (name == "sphere") return make_icosphere(5);
    if (name == "cube") return make_box({-1, -1, -1}, {1, 1, 1});
    throw ValidationError("unknown builtin shape '" + std::string(name) + "'");
}

}  // namespace matbench
