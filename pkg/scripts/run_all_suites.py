"""Run every report suite at one seed and write CSV/JSON artifacts.

    python3 scripts/run_all_suites.py --seed 7 --out results/

Exit status is 0 only if every suite passes.
"""
import argparse
import sys
import time
from pathlib import Path

from monoval.reports import SUITES, SuiteConfig, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--only", nargs="*", choices=list(SUITES), help="subset of suites")
    args = ap.parse_args(argv)

    failed = []
    for name in args.only or SUITES:
        start = time.perf_counter()
        res = run_suite(name, SuiteConfig(seed=args.seed))
        res.write(args.out / f"{name}.csv")
        print(f"{res.summary()}  [{time.perf_counter() - start:.1f}s]")
        for note in res.notes:
            print(f"    note: {note}")
        if not res.passed:
            failed.append(name)
    if failed:
        print("failed:", ", ".join(failed), file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
