// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "matbench/core/error.hpp"
#include "matbench/core/rng.hpp"
#include "matbench/spectra/ior.hpp"
#include "matbench/spectra/spectrum.hpp"
#include "testing.hpp"

namespace matbench {
namespace {

// Reference values from tests/oracles/derive_oracles.py (independent CIE
// tables; agreement to about 1e-7).
constexpr double kEqualEnergyXyz[3] = {0.999977524001, 1.0, 0.999860299261};
constexpr double kSpike550Rgb[3] = {-0.01395859, 0.07087548, -0.00822828};
constexpr double kGoldNormalRgb[3] = {1.04453292904, 0.735173556746, 0.363662102451};

SpectralPower equal_energy() {
    SpectralPower spd;
    for (int l = 380; l <= 780; l += 5) spd.values.push_back({double(l), 1.0});
    return spd;
}

IorTable two_sample_table() {
    return IorTable("t", IorFamily::conductor, {{500, {1.0, 2.0}}, {600, {2.0, 4.0}}});
}

TEST(IorTable, LoadsTwoRowDielectric) {
    const auto dir = testing::scratch_dir();
    testing::write_text(dir / "glass.csv", "# wavelength_nm, eta, k\n500, 1.5, 0\n600, 1.5, 0\n");
    const IorTable t = load_ior_table(dir / "glass.csv");
    EXPECT_EQ(t.samples().size(), 2u);
    EXPECT_EQ(t.family(), IorFamily::dielectric);
    EXPECT_EQ(t.material_id(), "glass");
}

TEST(IorTable, SingleRowAccepted) {
    const IorTable t = parse_ior_csv("589.29, 1.46, 0\n", "silica");
    ASSERT_EQ(t.samples().size(), 1u);
    for (double l : {380.0, 500.0, 589.29, 780.0}) EXPECT_EQ(ior_at(t, l).eta, 1.46);
}

TEST(IorTable, RejectsBadInput) {
    EXPECT_THROW(parse_ior_csv("600, 1.5, 0\n500, 1.5, 0\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("300, 1.5, 0\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("500, -1.5, 0\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("500, 1.5, -0.1\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("500, abc, 0\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("500, 1.5\n", "x"), ValidationError);
    EXPECT_THROW(parse_ior_csv("# only comments\n", "x"), ValidationError);
    EXPECT_THROW(load_ior_table("/nonexistent/ior.csv"), RuntimeError);
    try {
        parse_ior_csv("600, 1.5, 0\n500, 1.5, 0\n", "x");
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("unsorted wavelengths"), std::string::npos);
    }
}

TEST(IorTable, InfersConductorFromK) {
    EXPECT_EQ(parse_ior_csv("500, 0.2, 3\n600, 0.3, 3.1\n", "m").family(), IorFamily::conductor);
}

TEST(IorAt, InterpolatesLinearly) {
    const IorTable t = two_sample_table();
    const ComplexIor mid = ior_at(t, 550);
    EXPECT_DOUBLE_EQ(mid.eta, 1.5);
    EXPECT_DOUBLE_EQ(mid.k, 3.0);
    EXPECT_EQ(ior_at(t, 500), (ComplexIor{1.0, 2.0}));
    EXPECT_THROW(ior_at(t, 900), ValidationError);
    EXPECT_THROW(ior_at(t, 379.9), ValidationError);
}

TEST(IorAt, ExactAtSamplesForBundledData) {
    const MaterialDatabase db = load_material_database(testing::data_dir() / "ior");
    for (const auto &[family, tables] : db.tables)
        for (const auto &t : tables)
            for (const auto &s : t->samples()) EXPECT_EQ(ior_at(*t, s.wavelength_nm), s.ior) << t->material_id();
}

TEST(IorAt, StaysWithinBracketingValues) {
    const MaterialDatabase db = load_material_database(testing::data_dir() / "ior");
    for (const auto &t : db.family(IorFamily::conductor)) {
        const auto &s = t->samples();
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            for (double f : {0.1, 0.37, 0.5, 0.93}) {
                const double l = lerp(f, s[i].wavelength_nm, s[i + 1].wavelength_nm);
                const double eta = ior_at(*t, l).eta;
                EXPECT_GE(eta, std::min(s[i].ior.eta, s[i + 1].ior.eta));
                EXPECT_LE(eta, std::max(s[i].ior.eta, s[i + 1].ior.eta));
            }
    }
}

TEST(MaterialDatabase, BundledFamilies) {
    const MaterialDatabase db = load_material_database(testing::data_dir() / "ior");
    EXPECT_EQ(db.family(IorFamily::conductor).size(), 3u);
    EXPECT_EQ(db.family(IorFamily::dielectric).size(), 5u);
    EXPECT_EQ(db.family(IorFamily::plastic).size(), 3u);
    ASSERT_NE(db.find("gold"), nullptr);
    EXPECT_EQ(db.find("gold")->family(), IorFamily::conductor);
    EXPECT_EQ(db.find("nope"), nullptr);
}

TEST(SampleWavelengths, Stratified) {
    Rng rng(1);
    const auto one = sample_wavelengths(rng, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_GE(one[0], 380.0);
    EXPECT_LT(one[0], 780.0);
    for (int n = 1; n <= 100; ++n) {
        const auto w = sample_wavelengths(rng, n);
        ASSERT_EQ(w.size(), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            EXPECT_GE(w[i], 380.0 + 400.0 * i / n);
            EXPECT_LT(w[i], 380.0 + 400.0 * (i + 1) / n);
        }
    }
    EXPECT_THROW(sample_wavelengths(rng, 0), ValidationError);
}

TEST(SampleWavelengths, Deterministic) {
    Rng a(99), b(99);
    EXPECT_EQ(sample_wavelengths(a, 80), sample_wavelengths(b, 80));
}

TEST(SpectrumToRgb, ZeroAndEmpty) {
    SpectralPower zero = equal_energy();
    for (auto &s : zero.values) s.power = 0;
    EXPECT_EQ(spectrum_to_rgb(zero), Rgb(0.0));
    EXPECT_EQ(spectrum_to_rgb({}), Rgb(0.0));
}

TEST(SpectrumToRgb, EqualEnergyIsWhite) {
    const Vec3 xyz = spectrum_to_xyz(equal_energy());
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(xyz[c], kEqualEnergyXyz[c], 1e-7);
    const Rgb rgb = spectrum_to_rgb(equal_energy());
    EXPECT_LT(rgb.max_component() - std::min({rgb.r, rgb.g, rgb.b}), 0.05);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(rgb[c], 1.0, 1e-9);
}

TEST(SpectrumToRgb, Spike550IsGreen) {
    const SpectralPower spd{{{545, 0}, {550, 1}, {555, 0}}};
    const Rgb raw = xyz_to_linear_srgb(spectrum_to_xyz(spd));
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(raw[c], kSpike550Rgb[c], 1e-7);
    const Rgb rgb = spectrum_to_rgb(spd);
    EXPECT_GT(rgb.g, rgb.r);
    EXPECT_GT(rgb.g, rgb.b);
    EXPECT_EQ(rgb.r, 0.0);
}

TEST(SpectrumToRgb, GoldNormalIncidence) {
    const IorTable gold = load_ior_table(testing::data_dir() / "ior/conductor/gold.csv");
    SpectralPower spd;
    for (const auto &s : gold.samples()) {
        const double n = s.ior.eta, k = s.ior.k;
        spd.values.push_back({s.wavelength_nm, ((n - 1) * (n - 1) + k * k) / ((n + 1) * (n + 1) + k * k)});
    }
    const Rgb rgb = xyz_to_linear_srgb(spectrum_to_xyz(spd));
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(rgb[c], kGoldNormalRgb[c], 1e-7);
    EXPECT_GT(rgb.r, rgb.g);
    EXPECT_GT(rgb.g, rgb.b);
}

TEST(SpectrumToRgb, Linear) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        SpectralPower s1 = equal_energy(), s2 = equal_energy(), mix = equal_energy();
        const double a = rng.uniform() * 3, b = rng.uniform() * 3;
        for (std::size_t i = 0; i < s1.values.size(); ++i) {
            s1.values[i].power = rng.uniform();
            s2.values[i].power = rng.uniform();
            mix.values[i].power = a * s1.values[i].power + b * s2.values[i].power;
        }
        const Vec3 x1 = spectrum_to_xyz(s1), x2 = spectrum_to_xyz(s2), xm = spectrum_to_xyz(mix);
        const Rgb r1 = xyz_to_linear_srgb(x1), r2 = xyz_to_linear_srgb(x2), rm = xyz_to_linear_srgb(xm);
        for (int c = 0; c < 3; ++c) {
            const double expect = a * r1[c] + b * r2[c];
            EXPECT_NEAR(rm[c], expect, 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST(WavelengthWeight, MeanIsWhite) {
    const int n = 400000;
    Rgb sum;
    for (int i = 0; i < n; ++i) sum += wavelength_rgb_weight(380.0 + 400.0 * (i + 0.5) / n);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(sum[c] / n, 1.0, 1e-4);
}

}  // namespace
}  // namespace matbench
