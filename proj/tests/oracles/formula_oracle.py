#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# Independent high-precision evaluation of the link-budget formulas.
# Writes tests/data/formula_oracle.csv, consumed by the acceptance suite.
# Re-run only when the input generator below changes:
#   python3 tests/oracles/formula_oracle.py > tests/data/formula_oracle.csv

import random
import mpmath as mp

mp.mp.dps = 40
C = mp.mpf(299792458)


def db2lin(x):
    return mp.power(10, mp.mpf(x) / 10)


def effective_aperture(gr_db, lam):
    return db2lin(gr_db) * lam**2 / (4 * mp.pi)


def rayleigh_length(d, gt_db, f):
    k = 2 * mp.pi * f / C
    return 4 * k * d**2 / db2lin(gt_db)


def power_density(pt, gt_db, f, refl, d1, d2, theta):
    lam = C / f
    zr = rayleigh_length(d1, gt_db, f)
    c4 = mp.cos(theta) ** 4
    den = mp.sqrt((1 + d2**2 / zr**2) * (1 + d2**2 / (zr**2 * c4)))
    return (2 * pt / (lam * zr)) * refl**2 / den


def friis(pt, gt_db, gr_db, f, d):
    lam = C / f
    return pt * db2lin(gt_db) * db2lin(gr_db) * (lam / (4 * mp.pi * d)) ** 2


def main():
    rng = random.Random(20240611)
    print("pt_w,gt_db,gr_db,freq_hz,refl,d_s_aris,d_aris_d,theta_rad,"
          "aperture_m2,rayleigh_m,density_w_m2,friis_w")
    for _ in range(100):
        pt = rng.uniform(0.01, 10.0)
        gt = rng.uniform(0.0, 50.0)
        gr = rng.uniform(0.0, 30.0)
        f = rng.uniform(1e9, 300e9)
        refl = rng.uniform(0.05, 1.0)
        d1 = rng.uniform(0.5, 80.0)
        d2 = rng.uniform(0.5, 80.0)
        th = rng.uniform(0.0, 1.4)
        vals = [pt, gt, gr, f, refl, d1, d2, th]
        m = [mp.mpf(repr(v)) for v in vals]
        out = [
            effective_aperture(m[2], C / m[3]),
            rayleigh_length(m[5], m[1], m[3]),
            power_density(m[0], m[1], m[3], m[4], m[5], m[6], m[7]),
            friis(m[0], m[1], m[2], m[3], m[5]),
        ]
        print(",".join([repr(v) for v in vals] + [mp.nstr(v, 20) for v in out]))


if __name__ == "__main__":
    main()
