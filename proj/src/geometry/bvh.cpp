// SPDX-License-Identifier: Apache-2.0

#include "matbench/geometry/bvh.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "matbench/core/error.hpp"

namespace matbench {

double Bounds::surface_area() const {
    if (lo.x > hi.x) return 0.0;
    const Vec3 d = hi - lo;
    return 2.0 * (d.x * d.y + d.y * d.z + d.z * d.x);
}

std::optional<TriangleHit> intersect_triangle(const Ray &ray, const Vec3 &p0, const Vec3 &p1, const Vec3 &p2) {
    // Permute so the dominant direction axis becomes z, then shear.
    const Vec3 ad{std::abs(ray.direction.x), std::abs(ray.direction.y), std::abs(ray.direction.z)};
    const int kz = ad.x > ad.y ? (ad.x > ad.z ? 0 : 2) : (ad.y > ad.z ? 1 : 2);
    int kx = (kz + 1) % 3;
    int ky = (kx + 1) % 3;
    if (ray.direction[kz] < 0) std::swap(kx, ky);
    const Vec3 d{ray.direction[kx], ray.direction[ky], ray.direction[kz]};
    const double sx = -d.x / d.z, sy = -d.y / d.z, sz = 1.0 / d.z;

    const Vec3 a = p0 - ray.origin, b = p1 - ray.origin, c = p2 - ray.origin;
    const double az = a[kz], bz = b[kz], cz = c[kz];
    const double ax = a[kx] + sx * az, ay = a[ky] + sy * az;
    const double bx = b[kx] + sx * bz, by = b[ky] + sy * bz;
    const double cx = c[kx] + sx * cz, cy = c[ky] + sy * cz;

    const double e0 = bx * cy - by * cx;
    const double e1 = cx * ay - cy * ax;
    const double e2 = ax * by - ay * bx;
    if ((e0 < 0 || e1 < 0 || e2 < 0) && (e0 > 0 || e1 > 0 || e2 > 0)) return std::nullopt;
    const double det = e0 + e1 + e2;
    if (det == 0) return std::nullopt;

    const double t_scaled = (e0 * az + e1 * bz + e2 * cz) * sz;
    const double inv_det = 1.0 / det;
    const double t = t_scaled * inv_det;
    if (!(t > ray.t_min && t < ray.t_max)) return std::nullopt;
    return TriangleHit{t, e1 * inv_det, e2 * inv_det};
}

Hit make_hit(const TriangleMesh &mesh, uint32_t face, const TriangleHit &th) {
    const auto &[i0, i1, i2] = mesh.faces[face];
    Hit h;
    h.t = th.t;
    h.face_index = face;
    h.u = th.u;
    h.v = th.v;
    h.geometric_normal =
        normalize(cross(mesh.vertices[i1] - mesh.vertices[i0], mesh.vertices[i2] - mesh.vertices[i0]));
    if (!mesh.normals.empty()) {
        const Vec3 n = mesh.normals[i0] * (1.0 - th.u - th.v) + mesh.normals[i1] * th.u + mesh.normals[i2] * th.v;
        const double len = length(n);
        h.shading_normal = len > 0 ? n / len : h.geometric_normal;
    } else {
        h.shading_normal = h.geometric_normal;
    }
    return h;
}

Bounds Bvh::face_bounds(uint32_t face) const {
    Bounds b;
    for (uint32_t i : mesh_->faces[face]) b.extend(mesh_->vertices[i]);
    return b;
}

Bvh::Bvh(std::shared_ptr<const TriangleMesh> mesh) : mesh_(std::move(mesh)) {
    if (!mesh_ || mesh_->faces.empty()) throw ValidationError("cannot build a BVH over an empty mesh");
    const auto n = static_cast<uint32_t>(mesh_->faces.size());
    prims_.resize(n);
    std::vector<Bounds> boxes(n);
    std::vector<Vec3> centroids(n);
    for (uint32_t f = 0; f < n; ++f) {
        prims_[f] = f;
        boxes[f] = face_bounds(f);
        centroids[f] = (boxes[f].lo + boxes[f].hi) * 0.5;
    }
    nodes_.reserve(2 * n);
    build(0, n, 0, boxes, centroids);
}

uint32_t Bvh::build(uint32_t begin, uint32_t end, int depth, std::vector<Bounds> &boxes,
                    std::vector<Vec3> &centroids) {
    const auto index = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back({});
    Bounds bounds, centroid_bounds;
    for (uint32_t i = begin; i < end; ++i) {
        bounds.extend(boxes[prims_[i]]);
        centroid_bounds.extend(centroids[prims_[i]]);
    }
    nodes_[index].bounds = bounds;
    const uint32_t count = end - begin;
    if (count <= kMaxLeafSize) {
        nodes_[index].first = begin;
        nodes_[index].count = count;
        return index;
    }

    constexpr int kBins = 16;
    constexpr int kMaxDepth = 64;
    uint32_t mid = begin + count / 2;
    const Vec3 extent = centroid_bounds.hi - centroid_bounds.lo;
    int axis = extent.x > extent.y ? (extent.x > extent.z ? 0 : 2) : (extent.y > extent.z ? 1 : 2);
    bool split_found = false;

    if (depth < kMaxDepth && extent[axis] > 0) {
        std::array<Bounds, kBins> bin_bounds;
        std::array<uint32_t, kBins> bin_count{};
        const double lo = centroid_bounds.lo[axis];
        const double scale = kBins / extent[axis];
        auto bin_of = [&](uint32_t p) {
            return std::min(kBins - 1, static_cast<int>((centroids[p][axis] - lo) * scale));
        };
        for (uint32_t i = begin; i < end; ++i) {
            const int b = bin_of(prims_[i]);
            ++bin_count[b];
            bin_bounds[b].extend(boxes[prims_[i]]);
        }
        std::array<double, kBins - 1> cost{};
        Bounds left;
        uint32_t left_count = 0;
        for (int b = 0; b < kBins - 1; ++b) {
            left.extend(bin_bounds[b]);
            left_count += bin_count[b];
            cost[b] = left_count * left.surface_area();
        }
        Bounds right;
        uint32_t right_count = 0;
        for (int b = kBins - 1; b > 0; --b) {
            right.extend(bin_bounds[b]);
            right_count += bin_count[b];
            cost[b - 1] += right_count * right.surface_area();
        }
        int best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (int b = 0; b < kBins - 1; ++b)
            if (cost[b] < best_cost) {
                best_cost = cost[b];
                best = b;
            }
        if (best >= 0) {
            const auto it = std::partition(prims_.begin() + begin, prims_.begin() + end,
                                           [&](uint32_t p) { return bin_of(p) <= best; });
            const auto m = static_cast<uint32_t>(it - prims_.begin());
            if (m != begin && m != end) {
                mid = m;
                split_found = true;
            }
        }
    }
    if (!split_found) {
        // Degenerate centroids or depth limit: split by count so leaves stay capped.
        std::nth_element(prims_.begin() + begin, prims_.begin() + mid, prims_.begin() + end,
                         [&](uint32_t a, uint32_t b) {
                             return centroids[a][axis] < centroids[b][axis] ||
                                    (centroids[a][axis] == centroids[b][axis] && a < b);
                         });
    }

    build(begin, mid, depth + 1, boxes, centroids);
    const uint32_t right_child = build(mid, end, depth + 1, boxes, centroids);
    nodes_[index].first = right_child;
    nodes_[index].count = 0;
    return index;
}

namespace {

inline bool hit_box(const Bounds &b, const Ray &ray, const Vec3 &inv_dir, double t_max) {
    double t0 = ray.t_min, t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        double tn = (b.lo[a] - ray.origin[a]) * inv_dir[a];
        double tf = (b.hi[a] - ray.origin[a]) * inv_dir[a];
        if (std::isnan(tn) || std::isnan(tf)) continue;  // origin on the slab plane with zero direction
        if (tn > tf) std::swap(tn, tf);
        // Conservative widening keeps the test watertight against rounding.
        tf *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
        t0 = tn > t0 ? tn : t0;
        t1 = tf < t1 ? tf : t1;
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

template <bool AnyHit>
std::optional<Hit> Bvh::traverse(const Ray &ray) const {
    const Vec3 inv_dir{1.0 / ray.direction.x, 1.0 / ray.direction.y, 1.0 / ray.direction.z};
    const bool neg[3] = {inv_dir.x < 0, inv_dir.y < 0, inv_dir.z < 0};
    std::array<uint32_t, 128> stack;
    int sp = 0;
    stack[sp++] = 0;
    double closest = ray.t_max;
    std::optional<TriangleHit> best;
    uint32_t best_face = 0;

    while (sp > 0) {
        const uint32_t ni = stack[--sp];
        const BvhNode &node = nodes_[ni];
        if (!hit_box(node.bounds, ray, inv_dir, closest)) continue;
        if (node.count > 0) {
            for (uint32_t i = node.first; i < node.first + node.count; ++i) {
                const uint32_t f = prims_[i];
                const auto &[a, b, c] = mesh_->faces[f];
                Ray r = ray;
                r.t_max = best ? std::nextafter(closest, std::numeric_limits<double>::infinity()) : closest;
                const auto th = intersect_triangle(r, mesh_->vertices[a], mesh_->vertices[b], mesh_->vertices[c]);
                if (!th) continue;
                if constexpr (AnyHit) return Hit{};
                // Ties at equal t resolve to the lowest face index.
                if (th->t < closest || (best && th->t == closest && f < best_face)) {
                    closest = th->t;
                    best = th;
                    best_face = f;
                }
            }
        } else {
            const uint32_t left = ni + 1;
            const uint32_t right = node.first;
            // Visit the child nearer along the split axis first.
            const Vec3 lc = nodes_[left].bounds.lo + nodes_[left].bounds.hi;
            const Vec3 rc = nodes_[right].bounds.lo + nodes_[right].bounds.hi;
            const Vec3 diff = rc - lc;
            const int axis = std::abs(diff.x) > std::abs(diff.y) ? (std::abs(diff.x) > std::abs(diff.z) ? 0 : 2)
                                                                  : (std::abs(diff.y) > std::abs(diff.z) ? 1 : 2);
            const bool right_first = neg[axis] ? diff[axis] > 0 : diff[axis] < 0;
            stack[sp++] = right_first ? left : right;
            stack[sp++] = right_first ? right : left;
        }
    }
    if (!best) return std::nullopt;
    return make_hit(*mesh_, best_face, *best);
}

std::optional<Hit> Bvh::intersect(const Ray &ray) const { return traverse<false>(ray); }
bool Bvh::occluded(const Ray &ray) const { return traverse<true>(ray).has_value(); }

Bvh build_bvh(const TriangleMesh &mesh) { return Bvh(std::make_shared<const TriangleMesh>(mesh)); }

}  // namespace matbench
