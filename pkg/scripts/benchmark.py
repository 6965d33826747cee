"""Per-check timings of the verify suite, slowest first."""

import argparse

from qskew.verify import SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="+", default=())
    args = ap.parse_args()
    rep = run_suite(SuiteConfig(seed=args.seed, only=args.only, timings=True))
    for c in sorted(rep.checks, key=lambda c: -c.elapsed):
        print(f"{c.elapsed:8.2f}s  {'ok  ' if c.passed else 'FAIL'}  {c.id}")
    print(f"{sum(c.elapsed for c in rep.checks):8.2f}s  total")


if __name__ == "__main__":
    main()
