// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "matbench/core/error.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/evaluate/evaluate.hpp"
#include "matbench/evaluate/kdtree.hpp"
#include "matbench/evaluate/protocol.hpp"
#include "matbench/geometry/bvh.hpp"
#include "matbench/geometry/primitives.hpp"
#include "matbench/materials/optics.hpp"

namespace matbench {
namespace {

PointCloud random_cloud(std::size_t n, uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    PointCloud c;
    for (std::size_t i = 0; i < n; ++i) c.points.push_back(Vec3{rng.uniform(), rng.uniform(), rng.uniform()} * scale);
    return c;
}

Camera make_camera(const Vec3 &pos, int w, int h) {
    Camera c;
    c.pose = look_at(pos);
    c.width = w;
    c.height = h;
    c.fov_x = 0.6911;
    return c;
}

Image depth_map(const Bvh &bvh, const Camera &cam) {
    Image d(cam.width, cam.height, 1);
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x)
            if (const auto hit = bvh.intersect(cam.center_ray(x, y))) d.at(x, y) = static_cast<float>(hit->t);
    return d;
}

std::set<std::vector<double>> facet_set(const TriangleMesh &m) {
    std::set<std::vector<double>> s;
    for (const Face &f : m.faces) {
        std::vector<double> key;
        for (uint32_t v : f) key.insert(key.end(), {m.vertices[v].x, m.vertices[v].y, m.vertices[v].z});
        s.insert(key);
    }
    return s;
}

TEST(KdTree, MatchesBruteForce) {
    for (std::size_t n : {1u, 2u, 17u, 500u, 2000u}) {
        const PointCloud cloud = random_cloud(n, n);
        const KdTree tree(cloud.points);
        const PointCloud queries = random_cloud(300, n + 1000, 1.2);
        for (const Vec3 &q : queries.points) {
            uint32_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (uint32_t i = 0; i < n; ++i) {
                const double d = distance(q, cloud.points[i]);
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            const Neighbor nb = tree.nearest(q);
            ASSERT_EQ(nb.index, best);
            ASSERT_EQ(nb.distance, best_d);
        }
    }
}

TEST(KdTree, DuplicatePointsResolveToLowestIndex) {
    const KdTree tree({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    EXPECT_EQ(tree.nearest({0.1, 0, 0}).index, 1u);
}

TEST(Chamfer, Examples) {
    const ChamferReport single = chamfer({{{0, 0, 0}}}, {{{0.1, 0, 0}}});
    EXPECT_NEAR(single.chamfer, 0.1, 1e-15);
    EXPECT_EQ(single.excluded_count, 0u);

    const ChamferReport ex = chamfer({{{0, 0, 0}, {0.2, 0, 0}}}, {{{0, 0, 0}}});
    EXPECT_EQ(ex.mean_a_to_b, 0.0);
    EXPECT_EQ(ex.excluded_count, 1u);
    EXPECT_EQ(ex.excluded_a_to_b, 1u);
    EXPECT_EQ(ex.mean_b_to_a, 0.0);
}

TEST(Chamfer, SelfAndSymmetry) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const PointCloud a = random_cloud(800, seed), b = random_cloud(600, seed + 50);
        const ChamferReport self = chamfer(a, a);
        EXPECT_EQ(self.chamfer, 0.0);
        EXPECT_EQ(self.excluded_count, 0u);
        const ChamferReport ab = chamfer(a, b), ba = chamfer(b, a);
        EXPECT_EQ(ab.chamfer, ba.chamfer);
        EXPECT_NEAR(ab.chamfer, (ab.mean_a_to_b + ab.mean_b_to_a) / 2, 1e-12);
        const ChamferReport brute = chamfer_brute_force(a, b);
        EXPECT_EQ(brute.chamfer, ab.chamfer);
        EXPECT_EQ(brute.excluded_count, ab.excluded_count);
    }
}

TEST(Chamfer, Errors) {
    EXPECT_THROW(chamfer({}, {{{0, 0, 0}}}), ValidationError);
    EXPECT_THROW(chamfer({{{0, 0, 0}}}, {}), ValidationError);
    EXPECT_THROW(chamfer({{{0, 0, 0}}}, {{{1, 0, 0}}}), ValidationError);
}

TEST(ExtractVisiblePoints, PlaneReconstruction) {
    const Camera cam = make_camera({0, 0, 2.5}, 40, 30);
    Image depth(40, 30, 1);
    for (int y = 0; y < 30; ++y)
        for (int x = 0; x < 40; ++x) depth.at(x, y) = static_cast<float>(2.5 / -cam.direction(x + 0.5, y + 0.5).z);
    const PointCloud pc = extract_visible_points({depth}, {cam}, 1);
    ASSERT_EQ(pc.points.size(), 1200u);
    for (const Vec3 &p : pc.points) EXPECT_LT(std::abs(p.z), 1e-6);
    EXPECT_EQ(extract_visible_points({depth}, {cam}, 2).points.size(), 300u);
}

TEST(ExtractVisiblePoints, CountsForegroundOnly) {
    const Camera cam = make_camera({0, 0, 2.5}, 10, 10);
    Image depth(10, 10, 1);
    EXPECT_TRUE(extract_visible_points({depth}, {cam}, 1).points.empty());
    depth.at(3, 4) = 1.0f;
    depth.at(4, 4) = 2.0f;
    depth.at(5, 5) = 1.5f;
    EXPECT_EQ(extract_visible_points({depth}, {cam}, 1).points.size(), 3u);
    EXPECT_EQ(extract_visible_points({depth, depth}, {cam, cam}, 1).points.size(), 6u);
    EXPECT_THROW(extract_visible_points({Image(8, 10, 1)}, {cam}, 1), ValidationError);
    EXPECT_THROW(extract_visible_points({depth}, {cam, cam}, 1), ValidationError);
}

TEST(FilterVisibleFacets, SphereFromAllSides) {
    const TriangleMesh sphere = make_icosphere(3);
    const Bvh bvh = build_bvh(sphere);
    std::vector<Camera> cams;
    std::vector<Image> depths;
    // Fibonacci lattice over the whole sphere.
    const int n = 90;
    for (int i = 0; i < n; ++i) {
        const double z = 1 - (2.0 * i + 1) / n;
        const double r = std::sqrt(1 - z * z), phi = 2 * kPi * i * 0.6180339887498949;
        cams.push_back(make_camera(Vec3{r * std::cos(phi), r * std::sin(phi), z} * 2.5, 120, 90));
        depths.push_back(depth_map(bvh, cams.back()));
    }
    const PointCloud visible = extract_visible_points(depths, cams, 1);
    const TriangleMesh kept = filter_visible_facets(sphere, visible);
    EXPECT_GE(static_cast<double>(kept.faces.size()), 0.99 * sphere.faces.size());
}

TEST(FilterVisibleFacets, HiddenCubeFacesRemoved) {
    const TriangleMesh cube = make_box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5});
    const Camera cam = make_camera({0, 0, 2.5}, 400, 400);
    const PointCloud visible = extract_visible_points({depth_map(build_bvh(cube), cam)}, {cam}, 1);
    ASSERT_FALSE(visible.points.empty());
    const TriangleMesh kept = filter_visible_facets(cube, visible);
    int top = 0;
    for (const Face &f : kept.faces)
        for (uint32_t v : f) EXPECT_NEAR(kept.vertices[v].z, 0.5, 1e-12);
    for (std::size_t f = 0; f < cube.faces.size(); ++f) top += cube.face_normal(f).z > 0.5;
    EXPECT_EQ(static_cast<int>(kept.faces.size()), top);

    EXPECT_EQ(filter_visible_facets(cube, visible, std::numeric_limits<double>::infinity()).faces.size(),
              cube.faces.size());
    EXPECT_TRUE(filter_visible_facets(cube, {}).empty());
}

TEST(FilterVisibleFacets, MonotoneSubset) {
    const TriangleMesh sphere = make_icosphere(2);
    const PointCloud visible = random_cloud(3000, 4, 2.0);
    const auto all = facet_set(sphere);
    std::size_t prev = 0;
    for (double tau : {0.01, 0.05, 0.1, 0.2, 0.5, 1.0}) {
        const TriangleMesh kept = filter_visible_facets(sphere, visible, tau);
        const auto s = facet_set(kept);
        for (const auto &f : s) EXPECT_TRUE(all.count(f));
        EXPECT_GE(s.size(), prev);
        prev = s.size();
    }
}

TEST(SamplePoints, CountPlaneAndDeterminism) {
    const TriangleMesh sphere = make_icosphere(2);
    const PointCloud pc = sample_points(sphere, 1'000'000, 3);
    EXPECT_EQ(pc.points.size(), 1'000'000u);
    const PointCloud again = sample_points(sphere, 1'000'000, 3);
    EXPECT_EQ(pc.points, again.points);

    TriangleMesh tri;
    tri.vertices = {{0, 0, 1}, {1, 0, 2}, {0, 1, 3}};
    tri.faces = {{0, 1, 2}};
    const Vec3 n = tri.face_normal(0);
    for (const Vec3 &p : sample_points(tri, 10000, 1).points) EXPECT_NEAR(dot(p - tri.vertices[0], n), 0, 1e-9);
}

TEST(SamplePoints, AreaProportional) {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {3, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    m.faces = {{0, 1, 2}, {0, 3, 4}};  // areas 1.5 and 0.5
    const std::size_t n = 100000;
    std::size_t big = 0;
    for (const Vec3 &p : sample_points(m, n, 7).points) big += p.x > 0 || (p.x == 0 && p.y > 0);
    const double sigma = std::sqrt(n * 0.75 * 0.25);
    EXPECT_NEAR(static_cast<double>(big), 0.75 * n, 3 * sigma);
    TriangleMesh flat;
    flat.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    flat.faces = {{0, 1, 2}};
    EXPECT_THROW(sample_points(flat, 10, 1), ValidationError);
}

Image constant_image(int w, int h, float v) { return Image(w, h, 3, v); }

TEST(Psnr, Examples) {
    EXPECT_EQ(psnr(constant_image(8, 8, 0.3f), constant_image(8, 8, 0.3f)), kPsnrCap);
    EXPECT_NEAR(psnr(constant_image(8, 8, 0.3f), constant_image(8, 8, 0.4f)), 20.0, 1e-5);
    EXPECT_NEAR(psnr(constant_image(8, 8, 0.0f), constant_image(8, 8, 0.5f)), 6.020599913279624, 1e-9);
    EXPECT_THROW(psnr(constant_image(8, 8, 0), constant_image(8, 7, 0)), ValidationError);
}

TEST(Psnr, DecreasesWithNoise) {
    const Image ref = constant_image(32, 32, 0.5f);
    Rng rng(5);
    std::vector<float> noise(ref.pixels.size());
    for (float &v : noise) v = static_cast<float>(rng.uniform() - 0.5);
    double prev = kPsnrCap + 1;
    for (double amp : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        Image img = ref;
        for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] += static_cast<float>(amp * noise[i]);
        const double p = psnr(ref, img);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Ssim, Examples) {
    Rng rng(9);
    Image a(32, 32, 3);
    for (float &v : a.pixels) v = static_cast<float>(rng.uniform());
    EXPECT_NEAR(ssim(a, a), 1.0, 1e-9);
    const Image half = constant_image(16, 16, 0.5f);
    Image neg = half;
    for (float &v : neg.pixels) v = 1.0f - v;
    EXPECT_NEAR(ssim(half, neg), 1.0, 1e-9);
    EXPECT_THROW(ssim(constant_image(8, 8, 0), constant_image(8, 8, 0)), ValidationError);
    EXPECT_THROW(ssim(constant_image(16, 16, 0), constant_image(16, 17, 0)), ValidationError);
}

TEST(Ssim, IndependentNoiseIsDissimilar) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        Image a(64, 64, 1), b(64, 64, 1);
        for (float &v : a.pixels) v = static_cast<float>(rng.uniform());
        for (float &v : b.pixels) v = static_cast<float>(rng.uniform());
        EXPECT_LT(ssim(a, b), 0.1);
    }
}

TEST(EvaluateMesh, IdenticalMeshesScoreZero) {
    const TriangleMesh sphere = make_icosphere(3);
    const Bvh bvh = build_bvh(sphere);
    std::vector<Camera> cams;
    std::vector<Image> depths;
    for (const Vec3 &p : fibonacci_hemisphere(9)) {
        cams.push_back(make_camera(p * 2.5, 64, 48));
        depths.push_back(depth_map(bvh, cams.back()));
    }
    MeshEvalParams params;
    params.samples = 20000;
    params.stride = 1;
    const MeshEvalResult same = evaluate_mesh(sphere, cams, depths, sphere, params);
    EXPECT_EQ(same.chamfer.chamfer, 0.0);
    EXPECT_EQ(same.views, 9u);
    EXPECT_GT(same.gt_visible_faces, 0u);
    EXPECT_LE(same.gt_visible_faces, same.gt_faces);

    TriangleMesh shifted = sphere;
    for (Vec3 &v : shifted.vertices) v.x += 0.01;
    const MeshEvalResult moved = evaluate_mesh(sphere, cams, depths, shifted, params);
    EXPECT_GT(moved.chamfer.chamfer, 0.0);
    EXPECT_LT(moved.chamfer.chamfer, 0.1);
    EXPECT_NE(mesh_report_json(moved, params).find("\"chamfer\""), std::string::npos);
}

}  // namespace
}  // namespace matbench
