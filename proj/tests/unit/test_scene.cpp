// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "matbench/core/config.hpp"
#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/materials/optics.hpp"
#include "matbench/scene/camera.hpp"
#include "matbench/scene/envmap.hpp"
#include "matbench/scene/scene.hpp"
#include "testing.hpp"

namespace matbench {
namespace {

// Brute-force minimum pairwise angle of the 90-point lattice
// (tests/oracles/derive_oracles.py).
constexpr double kFib90MinSeparationDeg = 13.230136451270866;

Image random_map(int h, uint64_t seed) {
    Rng rng(seed);
    Image img(2 * h, h, 3);
    for (float &v : img.pixels) v = static_cast<float>(rng.uniform() * rng.uniform() * 4);
    return img;
}

TEST(Fibonacci, SinglePoint) {
    const auto p = fibonacci_hemisphere(1);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_DOUBLE_EQ(p[0].z, 0.5);
    EXPECT_THROW(fibonacci_hemisphere(0), ValidationError);
}

TEST(Fibonacci, NinetyPoints) {
    const auto p = fibonacci_hemisphere(90);
    ASSERT_EQ(p.size(), 90u);
    double min_angle = 180;
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(length(p[i]), 1.0, 1e-9);
        EXPECT_GT(p[i].z, 0.0);
        EXPECT_LT(p[i].z, 1.0);
        for (std::size_t j = 0; j < i; ++j)
            min_angle = std::min(min_angle, degrees(std::acos(std::clamp(dot(p[i], p[j]), -1.0, 1.0))));
    }
    EXPECT_GE(min_angle, 10.0);
    EXPECT_NEAR(min_angle, kFib90MinSeparationDeg, 1e-9);
}

TEST(Cameras, DefaultSplit) {
    const CameraSet set = make_cameras(50, 40, 2.5, 0.69, 1600, 1200);
    ASSERT_EQ(set.size(), 90u);
    EXPECT_EQ(set.with_tag(CameraTag::train).size(), 50u);
    EXPECT_EQ(set.with_tag(CameraTag::test).size(), 40u);
    std::set<int> indices;
    for (const Camera &c : set.cameras) {
        indices.insert(c.index);
        EXPECT_EQ(c.tag == CameraTag::test, c.index % 9 < 4) << c.index;
        EXPECT_EQ(c.width, 1600);
        EXPECT_EQ(c.height, 1200);
    }
    EXPECT_EQ(indices.size(), 90u);
    EXPECT_EQ(*indices.rbegin(), 89);
}

TEST(Cameras, PoseInvariants) {
    const CameraSet set = make_cameras(50, 40, 2.5, kDefaultFovX, 64, 48);
    for (const Camera &c : set.cameras) {
        EXPECT_NEAR(length(c.position()), 2.5, 1e-9);
        EXPECT_NEAR(distance(c.forward(), -c.position() / length(c.position())), 0, 1e-9);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                EXPECT_NEAR(dot(c.pose.column(a), c.pose.column(b)), a == b ? 1.0 : 0.0, 1e-9);
        EXPECT_NEAR(dot(cross(c.pose.column(0), c.pose.column(1)), c.pose.column(2)), 1.0, 1e-9);
        EXPECT_GE(c.pose.column(1).z, -1e-12);  // world +z up
    }
}

TEST(Cameras, GeneralSplitIsExactAndDisjoint) {
    for (auto [n_train, n_test] : {std::pair{10, 3}, {1, 1}, {7, 0}, {0, 5}, {30, 60}}) {
        const CameraSet set = make_cameras(n_train, n_test, 3.0, 0.8, 8, 8);
        EXPECT_EQ(set.with_tag(CameraTag::train).size(), static_cast<std::size_t>(n_train));
        EXPECT_EQ(set.with_tag(CameraTag::test).size(), static_cast<std::size_t>(n_test));
    }
}

TEST(Cameras, Errors) {
    EXPECT_THROW(make_cameras(50, 40, 1.0, 0.69, 16, 16), ValidationError);
    EXPECT_THROW(make_cameras(0, 0, 2.5, 0.69, 16, 16), ValidationError);
    EXPECT_THROW(make_cameras(5, 5, 2.5, 0.69, 0, 16), ValidationError);
    EXPECT_THROW(make_cameras(5, 5, 2.5, 4.0, 16, 16), ValidationError);
}

TEST(Cameras, RayGeometry) {
    Camera c;
    c.pose = look_at({0, 0, 2.5});
    c.width = 100;
    c.height = 80;
    c.fov_x = 0.6911;
    EXPECT_NEAR(c.focal(), 50.0 / std::tan(0.6911 / 2), 1e-9);
    EXPECT_NEAR(distance(c.direction(50, 40), {0, 0, -1}), 0, 1e-12);
    const Vec3 left = c.direction(0, 40), right = c.direction(100, 40);
    EXPECT_NEAR(std::acos(dot(left, right)), 0.6911, 1e-9);
    // Image y grows downward.
    EXPECT_GT(dot(c.direction(50, 0), c.pose.column(1)), 0.0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) EXPECT_NEAR(dot(c.pose.column(a), c.pose.column(b)), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(EnvMap, ConstantTwoByOne) {
    Image img(2, 1, 3, 1.0f);
    const EnvMap env(img);
    EXPECT_EQ(env.marginal_cdf(), (std::vector<double>{0.0, 1.0}));
    ASSERT_EQ(env.conditional_cdf().size(), 3u);
    EXPECT_DOUBLE_EQ(env.conditional_cdf()[1], 0.5);
    EXPECT_NEAR(env.luminance_integral(), 4 * kPi, 1e-12);
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(env.sample(rng).pdf, 1.0 / (4 * kPi), 1e-12);
}

TEST(EnvMap, ConstantMapEverywhere) {
    const EnvMap env = EnvMap::constant({0.2, 0.5, 1.5});
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 d = sample_uniform_sphere(rng.uniform2());
        const Rgb v = env.eval(d);
        EXPECT_NEAR(v.r, 0.2, 1e-6);
        EXPECT_NEAR(v.b, 1.5, 1e-6);
        const EnvSample s = env.sample(rng);
        EXPECT_NEAR(s.pdf, 1.0 / (4 * kPi), 1e-6);
        EXPECT_NEAR(env.pdf(d), 1.0 / (4 * kPi), 1e-6);
    }
}

Vec3 pixel_center_dir(const EnvMap &env, int x, int y) {
    const double theta = kPi * (y + 0.5) / env.height();
    const double phi = 2 * kPi * (x + 0.5) / env.width();
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

TEST(EnvMap, PixelCenterLookup) {
    const EnvMap env(random_map(8, 3));
    for (int y = 0; y < env.height(); ++y)
        for (int x = 0; x < env.width(); ++x) {
            const Vec3 d = pixel_center_dir(env, x, y);
            const Rgb want = env.pixel(x, y);
            EXPECT_NEAR(env.eval(d).g, want.g, 1e-6);
            EXPECT_NEAR(env.eval_point(d).g, want.g, 1e-12);
        }
}

TEST(EnvMap, SingleHotPixel) {
    Image img(16, 8, 3, 0.0f);
    img.set_rgb(5, 3, Rgb(10.0));
    const EnvMap env(img);
    Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
        const EnvSample s = env.sample(rng);
        const Vec2 p = env.to_pixel(s.direction);
        ASSERT_EQ(static_cast<int>(p.x), 5);
        ASSERT_EQ(static_cast<int>(p.y), 3);
        ASSERT_GT(s.pdf, 0.0);
        ASSERT_NEAR(s.pdf, 1.0 / env.pixel_solid_angle(3), 1e-9 * s.pdf);
    }
}

TEST(EnvMap, CdfsAreNormalized) {
    const EnvMap env(random_map(16, 5));
    EXPECT_NEAR(env.marginal_cdf().back(), 1.0, 1e-9);
    EXPECT_EQ(env.marginal_cdf().front(), 0.0);
    const std::size_t row = env.width() + 1;
    for (int y = 0; y < env.height(); ++y) {
        EXPECT_NEAR(env.conditional_cdf()[y * row + env.width()], 1.0, 1e-9);
        for (int x = 0; x < env.width(); ++x)
            EXPECT_LE(env.conditional_cdf()[y * row + x], env.conditional_cdf()[y * row + x + 1]);
    }
    double omega = 0;
    for (int y = 0; y < env.height(); ++y) omega += env.pixel_solid_angle(y) * env.width();
    EXPECT_NEAR(omega, 4 * kPi, 1e-12);
}

TEST(EnvMap, SampleEvalConsistency) {
    const EnvMap env(random_map(16, 6));
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const EnvSample s = env.sample(rng);
        ASSERT_NEAR(length(s.direction), 1.0, 1e-9);
        const Rgb v = env.eval_point(s.direction);
        ASSERT_NEAR(v.r, s.radiance.r, 1e-6);
        ASSERT_NEAR(v.g, s.radiance.g, 1e-6);
        ASSERT_NEAR(env.pdf(s.direction), s.pdf, 1e-9 * s.pdf);
    }
}

TEST(EnvMap, UnbiasedIntegral) {
    const EnvMap env(random_map(16, 8));
    Rgb exact;
    for (int y = 0; y < env.height(); ++y)
        for (int x = 0; x < env.width(); ++x) exact += env.pixel(x, y) * env.pixel_solid_angle(y);
    Rng rng(9);
    const int n = 1000000;
    Rgb est;
    for (int i = 0; i < n; ++i) {
        const EnvSample s = env.sample(rng);
        est += s.radiance / s.pdf;
    }
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(est[c] / n, exact[c], 0.01 * exact[c]);
}

TEST(EnvMap, BlackMapFallsBackToUniform) {
    const EnvMap env(Image(8, 4, 3, 0.0f));
    EXPECT_TRUE(env.is_black());
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const EnvSample s = env.sample(rng);
        EXPECT_NEAR(s.pdf, 1.0 / (4 * kPi), 1e-12);
        EXPECT_TRUE(s.radiance.is_black());
    }
}

TEST(EnvMap, Validation) {
    EXPECT_THROW(EnvMap(Image(3, 2, 3)), ValidationError);
    EXPECT_THROW(EnvMap(Image(4, 2, 2)), ValidationError);
    Image bad(4, 2, 3, 1.0f);
    bad.at(0, 0, 0) = -1.0f;
    EXPECT_THROW(EnvMap{bad}, ValidationError);
    bad.at(0, 0, 0) = std::numeric_limits<float>::infinity();
    EXPECT_THROW(EnvMap{bad}, ValidationError);
}

TEST(EnvMap, LoadFromFiles) {
    const auto dir = testing::scratch_dir();
    const Image img = random_map(8, 11);
    write_exr(dir / "m.exr", img);
    write_hdr(dir / "m.hdr", img);
    EXPECT_EQ(load_envmap(dir / "m.exr").pixel(3, 2).r, img.at(3, 2, 0));
    EXPECT_NEAR(load_envmap(dir / "m.hdr").pixel(3, 2).r, img.at(3, 2, 0), 0.02 * img.at(3, 2, 0) + 1e-3);
    write_png8(dir / "m.png", Image(16, 8, 1, 0.5f));
    EXPECT_THROW(load_envmap(dir / "m.png"), ValidationError);
    write_exr(dir / "square.exr", Image(8, 8, 3, 1.0f));
    EXPECT_THROW(load_envmap(dir / "square.exr"), ValidationError);
}

TEST(SceneDesc, ParseAndRoundTrip) {
    const auto dir = testing::scratch_dir();
    const auto ior = (testing::data_dir() / "ior/conductor/gold.csv").string();
    testing::write_text(dir / "s.toml", "seed = 7\nmesh = \"builtin:cube\"\n[material]\nfamily = \"rough_conductor\"\n"
                                        "ior = \"" + ior + "\"\nalpha = 0.3\n[cameras]\ntrain = 5\ntest = 4\nwidth = 32\nheight = 24\n");
    const SceneDesc d = load_scene_desc(dir / "s.toml");
    EXPECT_EQ(d.seed, 7u);
    EXPECT_EQ(d.mesh, "builtin:cube");
    EXPECT_EQ(d.material.family, MaterialFamily::rough_conductor);
    EXPECT_EQ(*d.material.alpha, 0.3);
    EXPECT_EQ(d.material.ior->material_id(), "gold");
    EXPECT_EQ(d.cameras.n_train, 5);
    EXPECT_EQ(d.cameras.width, 32);
    EXPECT_EQ(d.envmap, "constant");

    const Config cfg = to_config(d);
    const SceneDesc back = parse_scene_desc(parse_config(cfg.to_string()), dir);
    EXPECT_EQ(to_config(back).to_string(), cfg.to_string());
}

TEST(SceneDesc, PlasticAcceptsDielectricTables) {
    Config cfg = parse_config("[material]\nfamily = \"plastic\"\npigment = [0.8, 0.2, 0.2]\n");
    cfg.set_string("material.ior", (testing::data_dir() / "ior/dielectric/bk7_glass.csv").string());
    const SceneDesc d = parse_scene_desc(cfg, {});
    EXPECT_EQ(d.material.ior->family(), IorFamily::plastic);
}

TEST(SceneDesc, Errors) {
    EXPECT_THROW(parse_scene_desc(parse_config("[material]\nfamily = \"metal\"\n"), {}), ValidationError);
    EXPECT_THROW(parse_scene_desc(parse_config("[material]\nfamily = \"diffuse\"\n"), {}), ValidationError);
    EXPECT_THROW(parse_scene_desc(parse_config("[material]\nfamily = \"conductor\"\n"), {}), ValidationError);
    EXPECT_THROW(parse_scene_desc(parse_config("colour = 1\n[material]\nfamily = \"diffuse\"\nreflectance = 0.5\n"), {}),
                 ValidationError);
    EXPECT_THROW(
        parse_scene_desc(parse_config("[material]\nfamily = \"diffuse\"\nreflectance = 0.5\n[cameras]\nradius = 0.5\n"), {}),
        ValidationError);
    EXPECT_NO_THROW(parse_scene_desc(parse_config("[material]\nfamily = \"diffuse\"\nreflectance = 0.5\n"), {}));
}

TEST(Scene, LoadNormalizesMesh) {
    SceneDesc d;
    d.mesh = "builtin:cube";
    const Scene s = load_scene(d, {});
    double max_r = 0;
    for (const Vec3 &v : s.mesh->vertices) max_r = std::max(max_r, length(v));
    EXPECT_NEAR(max_r, 1.0, 1e-12);
    EXPECT_NEAR(s.normalization.scale, 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_EQ(s.bvh->mesh_ptr(), s.mesh);
}

}  // namespace
}  // namespace matbench
