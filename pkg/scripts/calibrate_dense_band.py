"""Calibrate the dense-regime band for greedy clique cover / (n / log2 n) at p = 1/2.

Run once; the band frozen in tests/test_acceptance.py came from
``python scripts/calibrate_dense_band.py --seed 999 --trials 400``.
"""

import argparse
import math

import numpy as np

from minrank.bounds import clique_cover_upper_bound
from minrank.experiments import derive_seed
from minrank.graph import sample_gnp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=999)
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--n", type=int, nargs="+", default=[128, 256, 512])
    args = ap.parse_args()

    everything = []
    for n in args.n:
        r = np.array([
            clique_cover_upper_bound(sample_gnp(n, 0.5, derive_seed(args.seed, n, 0.5, t)), exact_budget=0).value
            / (n / math.log2(n))
            for t in range(args.trials)
        ])
        everything.append(r)
        sem = r.std(ddof=1) / math.sqrt(len(r))
        print(f"n={n}: mean {r.mean():.4f} +- {sem:.4f}, min {r.min():.4f}, max {r.max():.4f}")
    allr = np.concatenate(everything)
    print(f"overall min {allr.min():.4f}, max {allr.max():.4f}")


if __name__ == "__main__":
    main()
