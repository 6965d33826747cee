"""Decompose a few derivations as ad_x + mu1 D1 + mu4 D4 + mu6 D6.

    python3 scripts/decompose_examples.py
    python3 scripts/decompose_examples.py --random 5 --seed 3
"""

import argparse
import random
import time

from qskew.derivations import DerivationSpec, decompose_full, weight_derivation, z2_multiplier
from qskew.exprio import evaluate_text
from qskew.model import z2
from qskew.sampling import random_derivation_data

D1, D4, D6 = (weight_derivation(i) for i in (1, 4, 6))

EXAMPLES = [
    ("D1", D1),
    ("D1 + ad(X2)", D1 + DerivationSpec.inner(evaluate_text("X2"))),
    ("3 D4 + z2 D6", D4.times(3) + D6.times(z2())),
    ("ad(e1 e2 - q e2 e1)", DerivationSpec.inner(evaluate_text("e1 e2 - q e2 e1"))),
]


def show(name, D):
    t0 = time.perf_counter()
    res = decompose_full(D)
    z = z2_multiplier(D)
    print(f"{name}  ({time.perf_counter() - t0:.2f}s)")
    print(f"  x   = {res.x}")
    print(f"  mu1 = {res.mu1}\n  mu4 = {res.mu4}\n  mu6 = {res.mu6}")
    print(f"  D(z2) = ({z}) z2")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=0, help="also decompose N random derivations")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, D in EXAMPLES:
        show(name, D)
    rng = random.Random(args.seed)
    for k in range(args.random):
        x, p1, p4, p6 = random_derivation_data(rng)
        D = DerivationSpec.inner(x) + D1.times(p1) + D4.times(p4) + D6.times(p6)
        show(f"random #{k}: ad({x}) + ({p1}) D1 + ({p4}) D4 + ({p6}) D6", D)


if __name__ == "__main__":
    main()
