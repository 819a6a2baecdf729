// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "matbench/core/config.hpp"
#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"
#include "matbench/core/math.hpp"
#include "matbench/core/rng.hpp"
#include "testing.hpp"

namespace matbench {
namespace {

Mat4 random_rigid(Rng &rng) {
    const Vec3 f = normalize(Vec3{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5});
    const Frame fr = Frame::from_normal(f);
    Mat4 m;
    m.set_column(0, fr.s);
    m.set_column(1, fr.t);
    m.set_column(2, fr.n);
    m.set_column(3, {rng.uniform() * 4 - 2, rng.uniform() * 4 - 2, rng.uniform() * 4 - 2});
    return m;
}

TEST(Math, FrameIsOrthonormal) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 n = normalize(Vec3{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5});
        const Frame f = Frame::from_normal(n);
        EXPECT_NEAR(dot(f.s, f.t), 0, 1e-12);
        EXPECT_NEAR(dot(f.s, f.n), 0, 1e-12);
        EXPECT_NEAR(length(f.s), 1, 1e-12);
        EXPECT_NEAR(length(f.t), 1, 1e-12);
        const Vec3 v{0.3, -0.2, 0.7};
        const Vec3 back = f.to_world(f.to_local(v));
        EXPECT_NEAR(distance(v, back), 0, 1e-12);
    }
}

TEST(Math, RigidInverse) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Mat4 m = random_rigid(rng);
        const Mat4 id = m * m.rigid_inverse();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) EXPECT_NEAR(id(r, c), r == c ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Math, QuaternionRoundTrip) {
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        const Mat4 m = random_rigid(rng);
        const Quat q = quat_from_rotation(m);
        EXPECT_GE(q.w, 0.0);
        EXPECT_NEAR(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z, 1.0, 1e-12);
        const Mat4 r = rotation_from_quat(q);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) EXPECT_NEAR(r(a, b), m(a, b), 1e-12);
    }
}

TEST(Rng, DeterministicAndKeyed) {
    Rng a(42, "role", 3), b(42, "role", 3), c(42, "role", 4), d(42, "other", 3);
    for (int i = 0; i < 100; ++i) {
        const uint64_t va = a.next_u64();
        EXPECT_EQ(va, b.next_u64());
        EXPECT_NE(va, c.next_u64());
        EXPECT_NE(va, d.next_u64());
    }
    EXPECT_NE(derive_seed(1, "x", 0), derive_seed(2, "x", 0));
}

TEST(Rng, UniformRangeAndMean) {
    Rng rng(11);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Rng, PermuteIndexIsBijection) {
    for (uint32_t len : {1u, 2u, 7u, 16u, 100u, 257u}) {
        std::set<uint32_t> seen;
        for (uint32_t i = 0; i < len; ++i) seen.insert(permute_index(i, len, 0x1234567u));
        EXPECT_EQ(seen.size(), len);
        EXPECT_LT(*seen.rbegin(), len);
    }
}

TEST(StratifiedSampler, OneSamplePerStratum) {
    for (uint32_t n : {1u, 5u, 16u, 64u, 100u}) {
        StratifiedSampler s(77, n);
        std::set<int> strata1;
        std::set<int> strata_x, strata_y;
        for (uint32_t i = 0; i < n; ++i) {
            s.start_sample(i);
            const double u = s.get_1d();
            ASSERT_GE(u, 0.0);
            ASSERT_LT(u, 1.0);
            strata1.insert(static_cast<int>(u * n));
            const Vec2 v = s.get_2d();
            ASSERT_GE(v.x, 0.0);
            ASSERT_LT(v.x, 1.0);
            ASSERT_GE(v.y, 0.0);
            ASSERT_LT(v.y, 1.0);
            strata_x.insert(static_cast<int>(v.x * n));
            strata_y.insert(static_cast<int>(v.y * n));
        }
        EXPECT_EQ(strata1.size(), n);
        const auto root = static_cast<uint32_t>(std::sqrt(double(n)));
        if (root * root == n) {
            EXPECT_EQ(strata_x.size(), n);
            EXPECT_EQ(strata_y.size(), n);
        }
    }
}

TEST(StratifiedSampler, DependsOnlyOnKeyIndexDimension) {
    StratifiedSampler a(5, 16), b(5, 16);
    a.start_sample(3);
    b.start_sample(0);
    b.get_1d();
    b.start_sample(3);
    EXPECT_EQ(a.get_1d(), b.get_1d());
    EXPECT_EQ(a.get_2d().x, b.get_2d().x);
}

TEST(Config, ParsesAllValueKinds) {
    const Config cfg = parse_config(R"(# comment
seed = 18446744073709551615
name = "hello"   # trailing
flag = true
ratio = -2.5e-1
[section]
list = [1, 2.5, -3]
count = 4
)");
    EXPECT_EQ(cfg.get_uint64("seed", 0), 18446744073709551615ULL);
    EXPECT_EQ(cfg.get_string("name"), "hello");
    EXPECT_TRUE(cfg.get_bool("flag", false));
    EXPECT_DOUBLE_EQ(cfg.get_double("ratio"), -0.25);
    EXPECT_EQ(cfg.get_array("section.list"), (std::vector<double>{1, 2.5, -3}));
    EXPECT_EQ(cfg.get_int("section.count"), 4);
    EXPECT_EQ(cfg.get_int("section.missing", 9), 9);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("novalue\n"), ValidationError);
    EXPECT_THROW(parse_config("x = \"open\n"), ValidationError);
    const Config cfg = parse_config("x = 1.5\ns = \"a\"\n");
    EXPECT_THROW(cfg.get_int("x"), ValidationError);
    EXPECT_THROW(cfg.get_double("s"), ValidationError);
    EXPECT_THROW(cfg.get_string("missing"), ValidationError);
    EXPECT_THROW(cfg.check_keys("", {"x"}), ValidationError);
    EXPECT_NO_THROW(cfg.check_keys("", {"x", "s"}));
    EXPECT_THROW(load_config("/nonexistent/file.toml"), RuntimeError);
}

TEST(Config, RoundTripsThroughText) {
    Config cfg;
    cfg.set_int("seed", 7);
    cfg.set_string("mesh", "builtin:sphere");
    cfg.set_number("render.scale", 0.1);
    cfg.set_bool("render.exr", false);
    cfg.set_array("material.pigment", {0.8, 0.2, 1.0 / 3.0});
    const Config back = parse_config(cfg.to_string());
    EXPECT_EQ(back.to_string(), cfg.to_string());
    EXPECT_EQ(back.get_array("material.pigment")[2], 1.0 / 3.0);
    EXPECT_EQ(back.get_double("render.scale"), 0.1);
}

TEST(Config, FormatDoubleRoundTrips) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.uniform() * 20) - 10);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(2.0), "2.0");
}

TEST(Image, PngRoundTrip) {
    const auto dir = testing::scratch_dir();
    Image gray(5, 3, 1);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 5; ++x) gray.at(x, y) = static_cast<float>((x + y) % 2);
    write_png8(dir / "m.png", gray);
    const Image back = read_png(dir / "m.png");
    ASSERT_EQ(back.width, 5);
    ASSERT_EQ(back.height, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 5; ++x) EXPECT_EQ(back.at(x, y), gray.at(x, y));

    Image rgb(4, 2, 3, 0.25f);
    write_png16_gamma(dir / "c.png", rgb);
    const Image c = read_png(dir / "c.png");
    ASSERT_EQ(c.channels, 3);
    EXPECT_NEAR(c.at(1, 1, 2), std::pow(0.25, 1 / 2.2), 1.0 / 65535);
}

TEST(Image, ExrAndHdrRoundTrip) {
    const auto dir = testing::scratch_dir();
    Image img(6, 3, 3);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = 0.1f * static_cast<float>(i);
    write_exr(dir / "a.exr", img);
    EXPECT_EQ(read_exr(dir / "a.exr"), img);

    Image depth(4, 4, 1, 1.5f);
    write_exr(dir / "d.exr", depth);
    EXPECT_EQ(read_image(dir / "d.exr"), depth);

    write_hdr(dir / "a.hdr", img);
    const Image h = read_hdr(dir / "a.hdr");
    ASSERT_TRUE(h.same_shape(img));
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        EXPECT_NEAR(h.pixels[i], img.pixels[i], 0.01 * img.pixels[i] + 0.005);
}

TEST(Image, MissingFileIsRuntimeError) {
    EXPECT_THROW(read_png("/nonexistent/x.png"), RuntimeError);
    EXPECT_THROW(read_exr("/nonexistent/x.exr"), RuntimeError);
}

}  // namespace
}  // namespace matbench
