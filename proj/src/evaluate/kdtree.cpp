// SPDX-License-Identifier: Apache-2.0

#include "matbench/evaluate/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matbench/core/error.hpp"

namespace matbench {

namespace {
constexpr uint32_t kLeafSize = 8;
}

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("cannot index an empty point set");
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, static_cast<uint32_t>(points_.size()), 0);
}

uint32_t KdTree::build(uint32_t begin, uint32_t end, int depth) {
    const auto index = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back({begin, end, 0, 0, 0, 0.0});
    if (end - begin <= kLeafSize || depth > 60) return index;

    Vec3 lo = points_[order_[begin]], hi = lo;
    for (uint32_t i = begin; i < end; ++i) {
        lo = vmin(lo, points_[order_[i]]);
        hi = vmax(hi, points_[order_[i]]);
    }
    const Vec3 ext = hi - lo;
    const int axis = ext.x >= ext.y ? (ext.x >= ext.z ? 0 : 2) : (ext.y >= ext.z ? 1 : 2);
    if (ext[axis] == 0) return index;
    const uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](uint32_t a, uint32_t b) { return points_[a][axis] < points_[b][axis]; });
    const double split = points_[order_[mid]][axis];
    const uint32_t left = build(begin, mid, depth + 1);
    const uint32_t right = build(mid, end, depth + 1);
    nodes_[index].left = left;
    nodes_[index].right = right;
    nodes_[index].axis = axis;
    nodes_[index].split = split;
    return index;
}

void KdTree::search(uint32_t ni, const Vec3 &q, Neighbor &best, double &best_d2) const {
    const Node &n = nodes_[ni];
    if (n.left == 0) {
        for (uint32_t i = n.begin; i < n.end; ++i) {
            const uint32_t p = order_[i];
            const double d2 = length_squared(points_[p] - q);
            if (d2 < best_d2 || (d2 == best_d2 && p < best.index)) {
                best_d2 = d2;
                best.index = p;
            }
        }
        return;
    }
    // Left holds coordinates <= split, right holds >= split.
    const double diff = q[n.axis] - n.split;
    const uint32_t near = diff < 0 ? n.left : n.right;
    const uint32_t far = diff < 0 ? n.right : n.left;
    search(near, q, best, best_d2);
    if (diff * diff <= best_d2) search(far, q, best, best_d2);
}

Neighbor KdTree::nearest(const Vec3 &q) const {
    Neighbor best{std::numeric_limits<uint32_t>::max(), 0.0};
    double best_d2 = std::numeric_limits<double>::infinity();
    search(0, q, best, best_d2);
    best.distance = std::sqrt(best_d2);
    return best;
}

}  // namespace matbench
