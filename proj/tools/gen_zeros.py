"""Regenerate the zero tables in data/ with mpmath.

usage: python3 tools/gen_zeros.py COUNT OUTPUT
"""
import sys

import mpmath


def main():
    count, path = int(sys.argv[1]), sys.argv[2]
    mpmath.mp.dps = 25
    with open(path, "w") as out:
        out.write("# ordinates of the first %d nontrivial zeros (mpmath.zetazero)\n" % count)
        for k in range(1, count + 1):
            out.write("%.12f\n" % mpmath.zetazero(k).imag)


if __name__ == "__main__":
    main()
