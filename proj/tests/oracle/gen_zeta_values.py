"""Frozen zeta and log-zeta reference values for the unit tests.

usage: python3 tests/oracle/gen_zeta_values.py > tests/oracle/zeta_values.inc
"""
import random

import mpmath

mpmath.mp.dps = 30
rng = random.Random(20240611)


def points():
    pts = []
    for _ in range(60):
        pts.append((rng.uniform(0.05, 3.0), rng.uniform(0.0, 1e3)))
    for _ in range(30):
        pts.append((rng.uniform(0.5, 1.0), rng.uniform(1e3, 1e5)))
    for _ in range(10):
        pts.append((rng.uniform(0.5, 1.0), rng.uniform(1e5, 1e6)))
    return [(round(s, 6), round(t, 6)) for s, t in pts]


def horizontal_log(sigma, t, steps=4000):
    # log zeta continued along [2 + it, sigma + it] by unwrapping the argument.
    value = mpmath.log(mpmath.zeta(mpmath.mpc(2, t)))
    prev = mpmath.zeta(mpmath.mpc(2, t))
    for k in range(1, steps + 1):
        x = 2 + (sigma - 2) * mpmath.mpf(k) / steps
        cur = mpmath.zeta(mpmath.mpc(x, t))
        value += mpmath.log(cur / prev)
        prev = cur
    return value


def main():
    print("// sigma, t, Re zeta, Im zeta")
    print("static const double kZetaValues[][4] = {")
    for s, t in points():
        z = mpmath.zeta(mpmath.mpc(s, t))
        print("    {%r, %r, %s, %s}," % (s, t, mpmath.nstr(z.real, 20), mpmath.nstr(z.imag, 20)))
    print("};")
    print("// sigma, t, Re log zeta, Im log zeta (horizontal continuation from Re = 2)")
    print("static const double kLogZetaValues[][4] = {")
    for s, t in [(0.6, 30.0), (0.75, 100.0), (0.55, 250.5), (0.9, 1000.0), (0.7, 5000.25)]:
        v = horizontal_log(s, t)
        print("    {%r, %r, %s, %s}," % (s, t, mpmath.nstr(v.real, 20), mpmath.nstr(v.imag, 20)))
    print("};")


if __name__ == "__main__":
    main()
