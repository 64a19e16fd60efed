"""Convergence of n / w(a(v, n)) to the linking number beta(v/w).

Random pairs of monomial valuations; columns give the relative error at
each level n, next to the exact value max_i t_i / s_i.
"""
import argparse

from monoval.core import fmt
from monoval.corpus import random_weight_vector, rng_for
from monoval.multiplicities import linking_number, linking_number_limit

LEVELS = (8, 32, 128, 512)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=10)
    ap.add_argument("--dim", type=int, default=2)
    args = ap.parse_args(argv)

    rng = rng_for(args.seed)
    print("t,s,beta," + ",".join(f"err@{n}" for n in LEVELS))
    for _ in range(args.pairs):
        t, s = random_weight_vector(rng, args.dim), random_weight_vector(rng, args.dim)
        beta = linking_number(t, s)
        errs = [float(abs(linking_number_limit(t, s, n) - beta) / beta) for n in LEVELS]
        row = [" ".join(map(fmt, t)), " ".join(map(fmt, s)), fmt(beta)] + [f"{e:.2e}" for e in errs]
        print(",".join(row))


if __name__ == "__main__":
    main()
