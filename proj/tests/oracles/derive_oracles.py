# SPDX-License-Identifier: Apache-2.0
"""Independent reference values frozen into the C++ unit tests.

Requires numpy, scipy, mpmath and colour-science. Prints one value per line.
"""

import csv
import math
import pathlib

import colour
import mpmath
import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[2]

cmfs = colour.MSDS_CMFS["CIE 1931 2 Degree Standard Observer"]
lam = np.arange(380, 781, 5, dtype=float)
xyz_bar = np.array([cmfs[l] for l in lam])


def trapz(y, x):
    return float(np.sum((y[1:] + y[:-1]) * 0.5 * np.diff(x)))


y_int = trapz(xyz_bar[:, 1], lam)


def spd_xyz(wl, power):
    bar = np.array([[np.interp(w, lam, xyz_bar[:, c]) for c in range(3)] for w in wl])
    return np.array([trapz(bar[:, c] * power, np.asarray(wl, float)) for c in range(3)]) / y_int


white_e = spd_xyz(lam, np.ones_like(lam))
d65 = colour.xy_to_XYZ(np.array([0.3127, 0.3290]))
adapt = colour.adaptation.matrix_chromatic_adaptation_VonKries(white_e, d65, transform="Bradford")
cs = colour.RGB_Colourspace(
    "srgb-derived", colour.models.RGB_COLOURSPACE_sRGB.primaries, np.array([0.3127, 0.3290]), use_derived_matrix_RGB_to_XYZ=True,
    use_derived_matrix_XYZ_to_RGB=True)


def to_rgb(xyz):
    return cs.matrix_XYZ_to_RGB @ (adapt @ xyz)


print("equal_energy_xyz", *white_e)
print("equal_energy_rgb", *to_rgb(white_e))
print("spike550_rgb", *to_rgb(spd_xyz([545, 550, 555], np.array([0.0, 1.0, 0.0]))))

rows = [r for r in csv.reader(l for l in open(ROOT / "data/ior/conductor/gold.csv") if not l.startswith("#")) if r]
g = np.array([[float(v) for v in r] for r in rows])
n, k = g[:, 1], g[:, 2]
refl = ((n - 1) ** 2 + k**2) / ((n + 1) ** 2 + k**2)
print("gold_normal_rgb", *to_rgb(spd_xyz(g[:, 0], refl)))

mpmath.mp.dps = 30


def fresnel(ci, ei, et):
    si2 = (ei / et) ** 2 * (1 - ci * ci)
    if si2 >= 1:
        return mpmath.mpf(1)
    ct = mpmath.sqrt(1 - si2)
    rs = (ei * ci - et * ct) / (ei * ci + et * ct)
    rp = (et * ci - ei * ct) / (et * ci + ei * ct)
    return (rs * rs + rp * rp) / 2


eta = mpmath.mpf("1.5")
mu_c = mpmath.sqrt(1 - 1 / eta**2)
fdr = mpmath.quad(lambda m: fresnel(m, eta, 1) * 2 * m, [0, mu_c, 1])
print("internal_fdr_1.5", mpmath.nstr(fdr, 15))
print("snell_30_1_1.5_deg", mpmath.nstr(mpmath.degrees(mpmath.asin(mpmath.sin(mpmath.radians(30)) / eta)), 15))
print("critical_1.5_deg", mpmath.nstr(mpmath.degrees(mpmath.asin(1 / eta)), 15))

# Minimum pairwise angle of the 90-point hemisphere lattice.
N = 90
golden = (1 + 5**0.5) / 2
pts = []
for i in range(N):
    z = 1 - (i + 0.5) / N
    r = math.sqrt(1 - z * z)
    phi = 2 * math.pi * i * (1 - 1 / golden)
    pts.append((r * math.cos(phi), r * math.sin(phi), z))
P = np.array(pts)
dots = np.clip(P @ P.T, -1, 1)
np.fill_diagonal(dots, -1)
print("fib90_min_sep_deg", math.degrees(math.acos(dots.max())))

print("psnr_half", 10 * math.log10(1 / 0.25))
