// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "matbench/core/config.hpp"
#include "matbench/core/error.hpp"
#include "matbench/geometry/primitives.hpp"
#include "matbench/render/render.hpp"
#include "matbench/spectra/ior.hpp"
#include "testing.hpp"

namespace matbench {
namespace {

Scene sphere_scene(MaterialSpec mat, Rgb env = Rgb(1.0)) {
    return make_scene(make_icosphere(4), std::move(mat), EnvMap::constant(env));
}

Camera front_camera(int w, int h, double dist = 2.5) {
    Camera c;
    c.pose = look_at({0, 0, dist});
    c.width = w;
    c.height = h;
    c.fov_x = 0.6911;
    return c;
}

RenderSettings quick(int spp, uint64_t seed = 1) {
    RenderSettings s;
    s.spp = spp;
    s.seed = seed;
    s.threads = 1;
    return s;
}

Rgb mean_path(const Scene &scene, const Ray &ray, const RenderSettings &s, int n, double lambda = 550) {
    StratifiedSampler sampler(17, static_cast<uint32_t>(n));
    Rgb sum;
    for (int i = 0; i < n; ++i) {
        sampler.start_sample(static_cast<uint32_t>(i));
        sum += trace_path(scene, ray, sampler, s, lambda);
    }
    return sum / n;
}

TEST(TracePath, EscapingRayReturnsEnvironment) {
    const Scene scene = sphere_scene(MaterialSpec::diffuse(0.5), {0.3, 0.6, 0.9});
    const Rgb v = mean_path(scene, {{0, 0, 3}, {0, 0, 1}, 0}, quick(4), 4);
    EXPECT_NEAR(v.r, 0.3, 1e-6);
    EXPECT_NEAR(v.g, 0.6, 1e-6);
    EXPECT_NEAR(v.b, 0.9, 1e-6);
}

TEST(TracePath, DiffuseConvexUnderConstantLight) {
    const Scene scene = sphere_scene(MaterialSpec::diffuse(0.5), Rgb(2.0));
    const Rgb v = mean_path(scene, {{0.1, 0.2, 3}, {0, 0, -1}, 0}, quick(1), 20000);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(v[c], 1.0, 0.01);
}

TEST(TracePath, MaxDepthZeroIsBackgroundOnly) {
    const Scene scene = sphere_scene(MaterialSpec::diffuse(0.5), Rgb(2.0));
    RenderSettings s = quick(1);
    s.max_depth = 0;
    EXPECT_TRUE(mean_path(scene, {{0, 0, 3}, {0, 0, -1}, 0}, s, 16).is_black());
    EXPECT_NEAR(mean_path(scene, {{0, 0, 3}, {0, 0, 1}, 0}, s, 16).g, 2.0, 1e-6);
}

TEST(RenderSettings, ParseAndValidate) {
    const RenderSettings s = parse_render_settings(parse_config("[render]\nspp = 16\nmax_depth = 3\n"));
    EXPECT_EQ(s.spp, 16);
    EXPECT_EQ(s.max_depth, 3);
    EXPECT_EQ(s.rr_start_depth, 4);
    EXPECT_THROW(parse_render_settings(parse_config("[render]\nspp = 0\n")), ValidationError);
    EXPECT_THROW(parse_render_settings(parse_config("[render]\nsamples = 4\n")), ValidationError);
    EXPECT_THROW(parse_render_settings(parse_config("[render]\nmax_depth = -1\n")), ValidationError);
    Config cfg;
    write_render_settings(cfg, s);
    EXPECT_EQ(parse_render_settings(cfg).max_depth, 3);
}

TEST(RenderImage, DepthAndMask) {
    const Scene scene = sphere_scene(MaterialSpec::diffuse(0.5));
    // Odd resolution puts the center pixel ray on the axis.
    EXPECT_NEAR(render_image(scene, front_camera(33, 25), quick(1)).depth.at(16, 12), 1.5, 1e-3);
    const RenderOutput out = render_image(scene, front_camera(33, 25, 4.0), quick(1));
    EXPECT_NEAR(out.depth.at(16, 12), 3.0, 1e-3);
    EXPECT_EQ(out.mask.at(16, 12), 1.0f);
    EXPECT_EQ(out.mask.at(0, 0), 0.0f);
    EXPECT_EQ(out.depth.at(0, 0), 0.0f);
    for (int y = 0; y < 25; ++y)
        for (int x = 0; x < 33; ++x) EXPECT_EQ(out.mask.at(x, y) > 0, out.depth.at(x, y) > 0);
}

TEST(RenderImage, FiniteAndNonNegative) {
    const auto db = load_material_database(testing::data_dir() / "ior");
    for (const MaterialSpec &mat :
         {MaterialSpec::rough_dielectric(db.find("bk7_glass"), 0.3), MaterialSpec::dielectric(db.find("bk7_glass")),
          MaterialSpec::rough_conductor(db.find("gold"), 0.2),
          MaterialSpec::plastic(db.find("pmma"), {0.8, 0.2, 0.2})}) {
        const RenderOutput out = render_image(sphere_scene(mat), front_camera(16, 12), quick(8));
        EXPECT_EQ(out.nonfinite_samples, 0u);
        for (float v : out.radiance.pixels) {
            ASSERT_TRUE(std::isfinite(v));
            ASSERT_GE(v, 0.0f);
        }
    }
}

TEST(RenderImage, SeedDeterminismAndThreadIndependence) {
    const auto db = load_material_database(testing::data_dir() / "ior");
    const Scene scene = sphere_scene(MaterialSpec::rough_conductor(db.find("gold"), 0.3));
    RenderSettings s = quick(4, 42);
    const RenderOutput a = render_image(scene, front_camera(40, 30), s);
    const RenderOutput b = render_image(scene, front_camera(40, 30), s);
    EXPECT_EQ(a.radiance.pixels, b.radiance.pixels);
    s.threads = 3;
    EXPECT_EQ(render_image(scene, front_camera(40, 30), s).radiance.pixels, a.radiance.pixels);
    s.seed = 43;
    EXPECT_NE(render_image(scene, front_camera(40, 30), s).radiance.pixels, a.radiance.pixels);
}

TEST(RenderImage, VarianceDropsWithSamples) {
    const auto db = load_material_database(testing::data_dir() / "ior");
    const Scene scene = sphere_scene(MaterialSpec::rough_conductor(db.find("gold"), 0.3), Rgb(1.0));
    auto spread = [&](int spp) {
        double var = 0;
        int n = 0;
        std::vector<std::vector<float>> runs;
        for (uint64_t seed = 1; seed <= 4; ++seed) runs.push_back(render_image(scene, front_camera(16, 12), quick(spp, seed)).radiance.pixels);
        for (std::size_t i = 0; i < runs[0].size(); ++i) {
            double m = 0;
            for (const auto &r : runs) m += r[i];
            m /= runs.size();
            for (const auto &r : runs) var += (r[i] - m) * (r[i] - m);
            ++n;
        }
        return var / n;
    };
    EXPECT_LT(spread(256), spread(16));
}

TEST(RenderImage, WritesOutputs) {
    const auto dir = testing::scratch_dir();
    const RenderOutput out = render_image(sphere_scene(MaterialSpec::diffuse(0.5)), front_camera(8, 6), quick(1));
    write_radiance(dir / "r.png", out, true);
    write_depth(dir / "d.exr", out);
    write_mask(dir / "m.png", out);
    EXPECT_TRUE(std::filesystem::exists(dir / "r.png"));
    EXPECT_TRUE(std::filesystem::exists(dir / "r.exr"));
    EXPECT_EQ(read_exr(dir / "d.exr").at(4, 3), out.depth.at(4, 3));
    EXPECT_EQ(read_png(dir / "m.png").width, 8);
}

}  // namespace
}  // namespace matbench
