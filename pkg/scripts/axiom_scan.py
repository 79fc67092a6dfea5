"""Random-input scan of every axiom checker; prints worst residuals per (phi, q).

    python scripts/axiom_scan.py --trials 500 --seed 1
"""
import argparse
import itertools

import numpy as np

from nonext import (
    builtin_phi,
    check_expandability,
    check_maximality,
    check_pseudoadditivity,
    check_shannon_additivity,
    product,
    random_distribution,
    random_refinement,
)
from nonext.phi import BUILTIN_NAMES

Q_GRID = (0.2, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0)


def scan(phi, q, trials, rng):
    worst = dict.fromkeys(("additivity", "pseudo", "maximality", "expand"), 0.0)
    for _ in range(trials):
        r = random_refinement(rng.integers(1, 6, size=int(rng.integers(1, 6))).tolist(), rng)
        s = product(random_distribution(int(rng.integers(1, 6)), rng), random_distribution(int(rng.integers(1, 6)), rng))
        d = random_distribution(int(rng.integers(1, 10)), rng)
        worst["additivity"] = max(worst["additivity"], check_shannon_additivity(r, q, phi).residual)
        worst["pseudo"] = max(worst["pseudo"], check_pseudoadditivity(s, q, phi).residual)
        worst["expand"] = max(worst["expand"], check_expandability(d, q, phi).residual)
        rep = check_maximality(d, q, phi)
        worst["maximality"] = max(worst["maximality"], rep.residual if rep.applicable else float("inf"))
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'phi':>16} {'q':>5} {'additivity':>11} {'pseudo':>11} {'maximality':>11} {'expand':>11}")
    for name, q in itertools.product(BUILTIN_NAMES, Q_GRID):
        w = scan(builtin_phi(name), q, args.trials, rng)
        print(f"{name:>16} {q:>5} {w['additivity']:>11.2e} {w['pseudo']:>11.2e} "
              f"{w['maximality']:>11.2e} {w['expand']:>11.2e}")


if __name__ == "__main__":
    main()
