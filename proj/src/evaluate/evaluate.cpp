// SPDX-License-Identifier: Apache-2.0

#include "matbench/evaluate/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "matbench/core/error.hpp"
#include "matbench/core/log.hpp"
#include "matbench/core/parallel.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/evaluate/kdtree.hpp"

namespace matbench {

PointCloud extract_visible_points(const std::vector<Image> &depth_maps, const std::vector<Camera> &cameras,
                                  int stride) {
    if (depth_maps.size() != cameras.size()) throw ValidationError("depth map and camera counts differ");
    if (stride < 1) throw ValidationError("stride must be >= 1");
    PointCloud cloud;
    for (std::size_t v = 0; v < cameras.size(); ++v) {
        const Image &d = depth_maps[v];
        const Camera &c = cameras[v];
        if (d.width != c.width || d.height != c.height) throw ValidationError("depth map resolution mismatch");
        if (d.channels < 1) throw ValidationError("depth map has no channels");
        for (int y = 0; y < d.height; y += stride)
            for (int x = 0; x < d.width; x += stride) {
                const double t = d.at(x, y, 0);
                if (!(t > 0) || !std::isfinite(t)) continue;
                cloud.points.push_back(c.center_ray(x, y).at(t));
            }
    }
    return cloud;
}

TriangleMesh filter_visible_facets(const TriangleMesh &mesh, const PointCloud &visible, double tau) {
    TriangleMesh out;
    if (visible.points.empty()) {
        log::warn("no visible points; every facet is discarded");
        return out;
    }
    const KdTree tree(visible.points);
    std::vector<char> near(mesh.vertices.size());
    parallel_for(mesh.vertices.size(), default_thread_count(),
                 [&](std::size_t i) { near[i] = tree.nearest(mesh.vertices[i]).distance < tau; });
    std::vector<uint32_t> remap(mesh.vertices.size(), std::numeric_limits<uint32_t>::max());
    for (const auto &f : mesh.faces) {
        if (!(near[f[0]] && near[f[1]] && near[f[2]])) continue;
        Face nf;
        for (int k = 0; k < 3; ++k) {
            if (remap[f[k]] == std::numeric_limits<uint32_t>::max()) {
                remap[f[k]] = static_cast<uint32_t>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[f[k]]);
                if (!mesh.normals.empty()) out.normals.push_back(mesh.normals[f[k]]);
            }
            nf[k] = remap[f[k]];
        }
        out.faces.push_back(nf);
    }
    return out;
}

PointCloud sample_points(const TriangleMesh &mesh, std::size_t n, uint64_t seed) {
    if (mesh.faces.empty()) throw ValidationError("cannot sample an empty mesh");
    std::vector<double> cdf(mesh.faces.size() + 1, 0.0);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) cdf[f + 1] = cdf[f] + mesh.face_area(f);
    const double total = cdf.back();
    if (!(total > 0)) throw ValidationError("cannot sample a zero-area mesh");
    PointCloud cloud;
    cloud.points.resize(n);
    constexpr std::size_t kChunk = 4096;
    parallel_for((n + kChunk - 1) / kChunk, default_thread_count(), [&](std::size_t chunk) {
        Rng rng(seed, "sample-points", chunk);
        for (std::size_t i = chunk * kChunk; i < std::min(n, (chunk + 1) * kChunk); ++i) {
            const double u = rng.uniform() * total;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const std::size_t f = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()) - 1, mesh.faces.size() - 1);
            double b1 = rng.uniform(), b2 = rng.uniform();
            if (b1 + b2 > 1) {
                b1 = 1 - b1;
                b2 = 1 - b2;
            }
            const auto &[a, b, c] = mesh.faces[f];
            cloud.points[i] = mesh.vertices[a] + (mesh.vertices[b] - mesh.vertices[a]) * b1 +
                              (mesh.vertices[c] - mesh.vertices[a]) * b2;
        }
    });
    return cloud;
}

std::vector<double> nearest_distances(const PointCloud &a, const PointCloud &b) {
    const KdTree tree(b.points);
    std::vector<double> d(a.points.size());
    parallel_for(a.points.size(), default_thread_count(),
                 [&](std::size_t i) { d[i] = tree.nearest(a.points[i]).distance; });
    return d;
}

namespace {

struct Directional {
    double mean;
    std::size_t excluded;
};

// Sums in index order so the result does not depend on scheduling.
Directional reduce(const std::vector<double> &d, double threshold, const char *direction) {
    double sum = 0;
    std::size_t kept = 0, excluded = 0;
    for (double v : d) {
        if (v > threshold) {
            ++excluded;
        } else {
            sum += v;
            ++kept;
        }
    }
    if (kept == 0) throw ValidationError(std::string("chamfer undefined: every ") + direction + " distance is an outlier");
    return {sum / static_cast<double>(kept), excluded};
}

ChamferReport combine(const Directional &ab, const Directional &ba) {
    ChamferReport r;
    r.mean_a_to_b = ab.mean;
    r.mean_b_to_a = ba.mean;
    r.chamfer = (ab.mean + ba.mean) / 2.0;
    r.excluded_a_to_b = ab.excluded;
    r.excluded_b_to_a = ba.excluded;
    r.excluded_count = ab.excluded + ba.excluded;
    return r;
}

void check_clouds(const PointCloud &a, const PointCloud &b) {
    if (a.points.empty() || b.points.empty()) throw ValidationError("chamfer needs two non-empty clouds");
}

}  // namespace

ChamferReport chamfer(const PointCloud &a, const PointCloud &b, double outlier_threshold) {
    check_clouds(a, b);
    return combine(reduce(nearest_distances(a, b), outlier_threshold, "a->b"),
                   reduce(nearest_distances(b, a), outlier_threshold, "b->a"));
}

ChamferReport chamfer_brute_force(const PointCloud &a, const PointCloud &b, double outlier_threshold) {
    check_clouds(a, b);
    auto scan = [](const PointCloud &from, const PointCloud &to) {
        std::vector<double> d(from.points.size());
        for (std::size_t i = 0; i < from.points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto &p : to.points) best = std::min(best, length_squared(p - from.points[i]));
            d[i] = std::sqrt(best);
        }
        return d;
    };
    return combine(reduce(scan(a, b), outlier_threshold, "a->b"), reduce(scan(b, a), outlier_threshold, "b->a"));
}

namespace {

void check_same(const Image &a, const Image &b) {
    if (!a.same_shape(b)) throw ValidationError("image dimensions differ");
    if (a.empty()) throw ValidationError("empty image");
}

// Rec. 709 luminance for RGB(A), the single channel otherwise.
std::vector<double> gray(const Image &img) {
    std::vector<double> g(static_cast<std::size_t>(img.width) * img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            g[static_cast<std::size_t>(y) * img.width + x] = img.channels >= 3 ? img.rgb(x, y).luminance() : img.at(x, y);
    return g;
}

}  // namespace

double psnr(const Image &a, const Image &b) {
    check_same(a, b);
    double se = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        se += d * d;
    }
    const double mse = se / static_cast<double>(a.pixels.size());
    if (mse == 0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

double ssim(const Image &a, const Image &b) {
    check_same(a, b);
    constexpr int kWin = 11;
    constexpr int kHalf = kWin / 2;
    constexpr double kSigma = 1.5;
    constexpr double C1 = 0.01 * 0.01, C2 = 0.03 * 0.03;
    if (a.width < kWin || a.height < kWin) throw ValidationError("images are smaller than the 11x11 SSIM window");

    std::array<double, kWin> w{};
    double wsum = 0;
    for (int i = 0; i < kWin; ++i) {
        w[i] = std::exp(-0.5 * (i - kHalf) * (i - kHalf) / (kSigma * kSigma));
        wsum += w[i];
    }
    for (double &v : w) v /= wsum;

    const auto ga = gray(a), gb = gray(b);
    const int W = a.width, H = a.height;
    // Separable filtering of x, y, x^2, y^2, xy over the valid region.
    const int VW = W - kWin + 1, VH = H - kWin + 1;
    std::vector<std::array<double, 5>> rows(static_cast<std::size_t>(H) * VW);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < VW; ++x) {
            std::array<double, 5> acc{};
            for (int k = 0; k < kWin; ++k) {
                const std::size_t idx = static_cast<std::size_t>(y) * W + x + k;
                const double p = ga[idx], q = gb[idx];
                acc[0] += w[k] * p;
                acc[1] += w[k] * q;
                acc[2] += w[k] * p * p;
                acc[3] += w[k] * q * q;
                acc[4] += w[k] * p * q;
            }
            rows[static_cast<std::size_t>(y) * VW + x] = acc;
        }
    double total = 0;
    for (int y = 0; y < VH; ++y)
        for (int x = 0; x < VW; ++x) {
            std::array<double, 5> m{};
            for (int k = 0; k < kWin; ++k) {
                const auto &r = rows[static_cast<std::size_t>(y + k) * VW + x];
                for (int c = 0; c < 5; ++c) m[c] += w[k] * r[c];
            }
            const double va = m[2] - m[0] * m[0], vb = m[3] - m[1] * m[1], cov = m[4] - m[0] * m[1];
            total += ((2 * m[0] * m[1] + C1) * (2 * cov + C2)) /
                     ((m[0] * m[0] + m[1] * m[1] + C1) * (va + vb + C2));
        }
    return total / (static_cast<double>(VW) * VH);
}

}  // namespace matbench
