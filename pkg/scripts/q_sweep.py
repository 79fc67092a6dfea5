"""Tabulate entropies of one distribution across q for every builtin phi.

    python scripts/q_sweep.py --p 0.5 0.3 0.2 --lo 0.1 --hi 4 --step 0.05 > sweep.csv
"""
import argparse
import csv
import sys

from nonext import builtin_phi, generalized_entropy, new_distribution, normalized_tsallis, tsallis
from nonext.cli import parse_q_range
from nonext.phi import BUILTIN_NAMES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 0.3, 0.2])
    ap.add_argument("--lo", type=float, default=0.1)
    ap.add_argument("--hi", type=float, default=4.0)
    ap.add_argument("--step", type=float, default=0.05)
    args = ap.parse_args()

    d = new_distribution(args.p, normalize=True)
    phis = [builtin_phi(n) for n in BUILTIN_NAMES]
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["q", "tsallis", "normalized_tsallis"] + [f"S[{p.name}]" for p in phis])
    for q in parse_q_range(f"{args.lo}:{args.hi}:{args.step}"):
        row = [q, tsallis(d, q), normalized_tsallis(d, q)]
        row += [generalized_entropy(d, q, phi) for phi in phis]
        out.writerow(row)


if __name__ == "__main__":
    main()
