"""Fitted Lipschitz constant A against chain length, on generic and toric chains.

Prints one line per model with the fits on both corpus halves, so the
growth of A with the number of blowups and the (non-)attainment of the
supremum on toric chains are visible side by side.
"""
import argparse

from monoval.core import fmt
from monoval.corpus import split_seeds
from monoval.reports import builtin_models, thmAprime_half


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--size", type=int, default=100, help="polynomials per half")
    args = ap.parse_args(argv)

    models = builtin_models()
    print("model,vertices,A_half_a,A_half_b,argmax_a")
    for name in sorted(models, key=lambda n: (n.startswith("toric"), n)):
        tree = models[name]
        fits = []
        for seed in split_seeds(args.seed):
            corpus, results = thmAprime_half(tree, seed, args.size)
            ratios = [mx / o for o, mx in results]
            best = max(ratios)
            fits.append((best, corpus[ratios.index(best)].serialize()))
        print(f"{name},{len(tree)},{fmt(fits[0][0])},{fmt(fits[1][0])},{fits[0][1]}")


if __name__ == "__main__":
    main()
