// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "matbench/core/math.hpp"

namespace matbench {

struct Neighbor {
    uint32_t index = 0;
    double distance = 0;
};

/// Exact nearest-neighbor index over a fixed point set. Ties in distance
/// resolve to the lowest point index, so results match a brute-force scan.
class KdTree {
  public:
    explicit KdTree(std::vector<Vec3> points);

    Neighbor nearest(const Vec3 &q) const;
    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3> &points() const { return points_; }

  private:
    struct Node {
        uint32_t begin, end;   // range in order_
        uint32_t left, right;  // child node indices, 0 for leaves
        int axis;
        double split;
    };
    uint32_t build(uint32_t begin, uint32_t end, int depth);
    void search(uint32_t node, const Vec3 &q, Neighbor &best, double &best_d2) const;

    std::vector<Vec3> points_;
    std::vector<uint32_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace matbench
