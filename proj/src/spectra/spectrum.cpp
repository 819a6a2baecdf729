// SPDX-License-Identifier: Apache-2.0

#include "matbench/spectra/spectrum.hpp"

#include <array>
#include <cmath>

#include "matbench/core/error.hpp"
#include "matbench/spectra/ior.hpp"

namespace matbench {

namespace {

// CIE 1931 2-degree standard observer, 380-780 nm in 5 nm steps.
constexpr std::array<std::array<double, 3>, 81> kCmf = {{
    {0.001368, 3.9e-05, 0.00645},  // 380
    {0.002236, 6.4e-05, 0.01055},  // 385
    {0.004243, 0.00012, 0.02005},  // 390
    {0.00765, 0.000217, 0.03621},  // 395
    {0.01431, 0.000396, 0.06785},  // 400
    {0.02319, 0.00064, 0.1102},  // 405
    {0.04351, 0.00121, 0.2074},  // 410
    {0.07763, 0.00218, 0.3713},  // 415
    {0.13438, 0.004, 0.6456},  // 420
    {0.21477, 0.0073, 1.03905},  // 425
    {0.2839, 0.0116, 1.3856},  // 430
    {0.3285, 0.01684, 1.62296},  // 435
    {0.34828, 0.023, 1.74706},  // 440
    {0.34806, 0.0298, 1.7826},  // 445
    {0.3362, 0.038, 1.77211},  // 450
    {0.3187, 0.048, 1.7441},  // 455
    {0.2908, 0.06, 1.6692},  // 460
    {0.2511, 0.0739, 1.5281},  // 465
    {0.19536, 0.09098, 1.28764},  // 470
    {0.1421, 0.1126, 1.0419},  // 475
    {0.09564, 0.13902, 0.81295},  // 480
    {0.05795, 0.1693, 0.6162},  // 485
    {0.03201, 0.20802, 0.46518},  // 490
    {0.0147, 0.2586, 0.3533},  // 495
    {0.0049, 0.323, 0.272},  // 500
    {0.0024, 0.4073, 0.2123},  // 505
    {0.0093, 0.503, 0.1582},  // 510
    {0.0291, 0.6082, 0.1117},  // 515
    {0.06327, 0.71, 0.07825},  // 520
    {0.1096, 0.7932, 0.05725},  // 525
    {0.1655, 0.862, 0.04216},  // 530
    {0.22575, 0.91485, 0.02984},  // 535
    {0.2904, 0.954, 0.0203},  // 540
    {0.3597, 0.9803, 0.0134},  // 545
    {0.43345, 0.99495, 0.00875},  // 550
    {0.51205, 1, 0.00575},  // 555
    {0.5945, 0.995, 0.0039},  // 560
    {0.6784, 0.9786, 0.00275},  // 565
    {0.7621, 0.952, 0.0021},  // 570
    {0.8425, 0.9154, 0.0018},  // 575
    {0.9163, 0.87, 0.00165},  // 580
    {0.9786, 0.8163, 0.0014},  // 585
    {1.0263, 0.757, 0.0011},  // 590
    {1.0567, 0.6949, 0.001},  // 595
    {1.0622, 0.631, 0.0008},  // 600
    {1.0456, 0.5668, 0.0006},  // 605
    {1.0026, 0.503, 0.00034},  // 610
    {0.9384, 0.4412, 0.00024},  // 615
    {0.85445, 0.381, 0.00019},  // 620
    {0.7514, 0.321, 0.0001},  // 625
    {0.6424, 0.265, 5e-05},  // 630
    {0.5419, 0.217, 3e-05},  // 635
    {0.4479, 0.175, 2e-05},  // 640
    {0.3608, 0.1382, 1e-05},  // 645
    {0.2835, 0.107, -1.90582e-21},  // 650
    {0.2187, 0.0816, 0},  // 655
    {0.1649, 0.061, 0},  // 660
    {0.1212, 0.04458, 0},  // 665
    {0.0874, 0.032, 0},  // 670
    {0.0636, 0.0232, 0},  // 675
    {0.04677, 0.017, 0},  // 680
    {0.0329, 0.01192, 0},  // 685
    {0.0227, 0.00821, 0},  // 690
    {0.01584, 0.005723, 0},  // 695
    {0.0113592, 0.004102, 0},  // 700
    {0.00811092, 0.002929, 0},  // 705
    {0.00579035, 0.002091, 0},  // 710
    {0.00410946, 0.001484, 0},  // 715
    {0.00289933, 0.001047, 0},  // 720
    {0.00204919, 0.00074, 0},  // 725
    {0.00143997, 0.00052, 0},  // 730
    {0.000999949, 0.0003611, 0},  // 735
    {0.000690079, 0.0002492, 0},  // 740
    {0.000476021, 0.0001719, 0},  // 745
    {0.000332301, 0.00012, 0},  // 750
    {0.000234826, 8.48e-05, 0},  // 755
    {0.00016615, 6e-05, 0},  // 760
    {0.000117413, 4.24e-05, 0},  // 765
    {8.30753e-05, 3e-05, 0},  // 770
    {5.87065e-05, 2.12e-05, 0},  // 775
    {4.15099e-05, 1.499e-05, 0},  // 780
}};

constexpr double kCmfStep = 5.0;

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 mul(const Mat3 &m, const Vec3 &v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 mul(const Mat3 &a, const Mat3 &b) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int k = 0; k < 3; ++k) out[r][c] += a[r][k] * b[k][c];
    return out;
}

Mat3 inverse(const Mat3 &m) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    Mat3 out;
    out[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    out[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    out[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    out[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    out[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    out[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    out[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    out[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    out[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return out;
}

Vec3 xy_to_xyz(double x, double y) { return {x / y, 1.0, (1.0 - x - y) / y}; }

struct ColorConstants {
    double y_integral = 0;  // trapezoid integral of ȳ over the table
    Vec3 white_e;           // XYZ of the equal-energy spectrum, Y = 1
    Mat3 xyz_to_rgb{};      // includes the E -> D65 adaptation
};

ColorConstants make_constants() {
    ColorConstants c;
    Vec3 sum;
    for (std::size_t i = 0; i < kCmf.size(); ++i) {
        const double w = (i == 0 || i + 1 == kCmf.size()) ? 0.5 : 1.0;
        sum += Vec3{kCmf[i][0], kCmf[i][1], kCmf[i][2]} * (w * kCmfStep);
    }
    c.y_integral = sum.y;
    c.white_e = sum / sum.y;

    // sRGB primaries and D65 white, derived rather than using the rounded
    // published matrix so that D65 maps to exactly (1, 1, 1).
    const Vec3 r = xy_to_xyz(0.64, 0.33), g = xy_to_xyz(0.30, 0.60), b = xy_to_xyz(0.15, 0.06);
    const Vec3 d65 = xy_to_xyz(0.3127, 0.3290);
    const Mat3 prim = {{{r.x, g.x, b.x}, {r.y, g.y, b.y}, {r.z, g.z, b.z}}};
    const Vec3 s = mul(inverse(prim), d65);
    const Mat3 rgb_to_xyz = {{{r.x * s.x, g.x * s.y, b.x * s.z}, {r.y * s.x, g.y * s.y, b.y * s.z},
                              {r.z * s.x, g.z * s.y, b.z * s.z}}};

    const Mat3 bradford = {{{0.8951, 0.2664, -0.1614}, {-0.7502, 1.7135, 0.0367}, {0.0389, -0.0685, 1.0296}}};
    const Vec3 src = mul(bradford, c.white_e);
    const Vec3 dst = mul(bradford, d65);
    const Mat3 scale = {{{dst.x / src.x, 0, 0}, {0, dst.y / src.y, 0}, {0, 0, dst.z / src.z}}};
    const Mat3 adapt = mul(inverse(bradford), mul(scale, bradford));
    c.xyz_to_rgb = mul(inverse(rgb_to_xyz), adapt);
    return c;
}

const ColorConstants &constants() {
    static const ColorConstants c = make_constants();
    return c;
}

}  // namespace

Vec3 cie_cmf(double wavelength_nm) {
    if (!(wavelength_nm >= kLambdaMin && wavelength_nm <= kLambdaMax)) return {};
    const double x = (wavelength_nm - kLambdaMin) / kCmfStep;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(x), kCmf.size() - 2);
    const double t = x - static_cast<double>(i);
    const auto &a = kCmf[i];
    const auto &b = kCmf[i + 1];
    return {lerp(t, a[0], b[0]), lerp(t, a[1], b[1]), lerp(t, a[2], b[2])};
}

Vec3 spectrum_to_xyz(const SpectralPower &spd) {
    Vec3 xyz;
    const auto &v = spd.values;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double h = v[i + 1].wavelength_nm - v[i].wavelength_nm;
        xyz += (cie_cmf(v[i].wavelength_nm) * v[i].power + cie_cmf(v[i + 1].wavelength_nm) * v[i + 1].power) *
               (0.5 * h);
    }
    return xyz / constants().y_integral;
}

Rgb xyz_to_linear_srgb(const Vec3 &xyz) {
    const Vec3 rgb = mul(constants().xyz_to_rgb, xyz);
    return {rgb.x, rgb.y, rgb.z};
}

Rgb spectrum_to_rgb(const SpectralPower &spd) {
    const Rgb rgb = xyz_to_linear_srgb(spectrum_to_xyz(spd));
    return {std::max(0.0, rgb.r), std::max(0.0, rgb.g), std::max(0.0, rgb.b)};
}

Rgb wavelength_rgb_weight(double wavelength_nm) {
    const Vec3 xyz = cie_cmf(wavelength_nm) * ((kLambdaMax - kLambdaMin) / constants().y_integral);
    return xyz_to_linear_srgb(xyz);
}

std::vector<double> sample_wavelengths(Rng &rng, int n) {
    if (n < 1) throw ValidationError("sample_wavelengths needs n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double span = kLambdaMax - kLambdaMin;
    for (int i = 0; i < n; ++i) {
        const double lo = kLambdaMin + span * i / n;
        const double hi = kLambdaMin + span * (i + 1) / n;
        out[i] = std::min(lo + rng.uniform() * (hi - lo), std::nextafter(hi, lo));
    }
    return out;
}

}  // namespace matbench
