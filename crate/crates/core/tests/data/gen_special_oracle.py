#!/usr/bin/env python3
"""Regenerates special_oracle.csv: extended-precision reference values for
the Bessel kernels, computed with mpmath at 50 significant digits.

Sampling is deterministic (fixed seed). Arguments are emitted with repr()
so the f64 parsed by the test harness is bit-identical to the value the
reference was evaluated at.

Conventions matched to the library:
  sj(n, x) = sqrt(pi/(2x)) * J_{n+1/2}(x)
  sk(n, x) = sqrt(2/(pi x)) * K_{n+1/2}(x)   (so sk(0, x) = exp(-x)/x)
"""

import random

import mpmath as mp

mp.mp.dps = 50

OUT = "special_oracle.csv"
rng = random.Random(20260811)


def sample_j(n_pts):
    rows = []
    for _ in range(n_pts):
        order = rng.randint(0, 20)
        u = rng.random()
        if u < 0.70:
            x = rng.uniform(0.0, 50.0)
        elif u < 0.90:
            x = rng.uniform(50.0, 300.0)
        else:
            x = rng.uniform(0.0, 1.0) ** 3  # cluster near zero
        rows.append(("j", order, x, mp.besselj(order, mp.mpf(x))))
    return rows


def sample_k(n_pts):
    rows = []
    for _ in range(n_pts):
        order = rng.randint(0, 20)
        u = rng.random()
        if u < 0.60:
            x = rng.uniform(1e-3, 50.0)
        elif u < 0.85:
            x = 10.0 ** rng.uniform(-3, 0)
        else:
            x = rng.uniform(50.0, 400.0)
        rows.append(("k", order, x, mp.besselk(order, mp.mpf(x))))
    return rows


def sample_sj(n_pts):
    rows = []
    for _ in range(n_pts):
        order = rng.randint(0, 20)
        x = rng.uniform(1e-4, 60.0)
        xm = mp.mpf(x)
        val = mp.sqrt(mp.pi / (2 * xm)) * mp.besselj(order + mp.mpf(1) / 2, xm)
        rows.append(("sj", order, x, val))
    return rows


def sample_sk(n_pts):
    rows = []
    for _ in range(n_pts):
        order = rng.randint(0, 20)
        x = 10.0 ** rng.uniform(-3, 2.3)
        xm = mp.mpf(x)
        val = mp.sqrt(2 / (mp.pi * xm)) * mp.besselk(order + mp.mpf(1) / 2, xm)
        rows.append(("sk", order, x, val))
    return rows


def main():
    rows = sample_j(300) + sample_k(300) + sample_sj(200) + sample_sk(200)
    with open(OUT, "w") as fh:
        fh.write("func,order,x,value\n")
        for func, order, x, val in rows:
            fh.write(f"{func},{order},{x!r},{mp.nstr(val, 25, strip_zeros=False)}\n")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
