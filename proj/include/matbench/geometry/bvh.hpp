// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "matbench/geometry/mesh.hpp"

namespace matbench {

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();

    Vec3 at(double t) const { return origin + direction * t; }
};

struct Hit {
    double t = 0;
    uint32_t face_index = 0;
    double u = 0, v = 0;  // p = (1 - u - v) p0 + u p1 + v p2
    Vec3 geometric_normal;
    Vec3 shading_normal;
};

struct Bounds {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void extend(const Vec3 &p) {
        lo = vmin(lo, p);
        hi = vmax(hi, p);
    }
    void extend(const Bounds &b) {
        lo = vmin(lo, b.lo);
        hi = vmax(hi, b.hi);
    }
    bool contains(const Bounds &b) const {
        return lo.x <= b.lo.x && lo.y <= b.lo.y && lo.z <= b.lo.z && hi.x >= b.hi.x && hi.y >= b.hi.y &&
               hi.z >= b.hi.z;
    }
    double surface_area() const;
};

/// Watertight ray/triangle test (Woop, Benthin, Wald 2013). Returns
/// (t, u, v) on a hit with t in (t_min, t_max).
struct TriangleHit {
    double t, u, v;
};
std::optional<TriangleHit> intersect_triangle(const Ray &ray, const Vec3 &p0, const Vec3 &p1, const Vec3 &p2);

/// Completes a triangle hit with normals from the mesh.
Hit make_hit(const TriangleMesh &mesh, uint32_t face, const TriangleHit &th);

struct BvhNode {
    Bounds bounds;
    uint32_t first = 0;  // leaf: first primitive; interior: right child
    uint32_t count = 0;  // 0 for interior nodes
};

/// Binary SAH BVH over a shared immutable mesh. Leaves hold at most
/// kMaxLeafSize triangles.
class Bvh {
  public:
    static constexpr uint32_t kMaxLeafSize = 4;

    explicit Bvh(std::shared_ptr<const TriangleMesh> mesh);

    std::optional<Hit> intersect(const Ray &ray) const;
    bool occluded(const Ray &ray) const;

    const TriangleMesh &mesh() const { return *mesh_; }
    const std::shared_ptr<const TriangleMesh> &mesh_ptr() const { return mesh_; }
    const std::vector<BvhNode> &nodes() const { return nodes_; }
    /// Face indices in leaf order.
    const std::vector<uint32_t> &primitives() const { return prims_; }
    Bounds face_bounds(uint32_t face) const;

  private:
    uint32_t build(uint32_t begin, uint32_t end, int depth, std::vector<Bounds> &boxes,
                   std::vector<Vec3> &centroids);
    template <bool AnyHit>
    std::optional<Hit> traverse(const Ray &ray) const;

    std::shared_ptr<const TriangleMesh> mesh_;
    std::vector<BvhNode> nodes_;
    std::vector<uint32_t> prims_;
};

Bvh build_bvh(const TriangleMesh &mesh);
inline std::optional<Hit> intersect(const Bvh &bvh, const Ray &ray) { return bvh.intersect(ray); }

}  // namespace matbench
