"""Relative error of the lattice-point count against volume(t) = 1/prod(t).

Shows how the counting oracle converges with n and why unnormalized
weights (small volume, few lattice points) need a larger n.
"""
import argparse
import math
from fractions import Fraction

from monoval.core import fmt, parse_vector
from monoval.multiplicities import count_below, volume


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("weights", nargs="*", default=["1/3,1/3,1/3", "1,1,1", "1/2,1/4,1/4", "1/2,1/2"])
    ap.add_argument("--levels", default="10,20,40,80")
    args = ap.parse_args(argv)

    levels = [int(x) for x in args.levels.split(",")]
    print("t,volume," + ",".join(f"err@{n}" for n in levels))
    for text in args.weights:
        t = parse_vector(text)
        vol = volume(t)
        m = len(t)
        errs = []
        for n in levels:
            est = Fraction(count_below(t, n) * math.factorial(m), n**m)
            errs.append(f"{float(abs(est - vol) / vol):.4f}")
        print(f"{' '.join(map(fmt, t))},{fmt(vol)}," + ",".join(errs))


if __name__ == "__main__":
    main()
