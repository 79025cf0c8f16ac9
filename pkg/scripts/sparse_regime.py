"""Sparsity lower bound on G(n, c/n): compare the sample mean with n/20."""

import argparse

import numpy as np

from minrank.bounds import sparsity_lower_bound
from minrank.experiments import derive_seed
from minrank.graph import sample_gnp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    ap.add_argument("--c", type=float, default=4.0)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("n,p,mean_lower_sparsity,n_over_20")
    for n in args.n:
        p = args.c / n
        vals = [sparsity_lower_bound(sample_gnp(n, p, derive_seed(args.seed, n, p, t))) for t in range(args.trials)]
        print(f"{n},{p!r},{np.mean(vals):.2f},{n / 20:.2f}")


if __name__ == "__main__":
    main()
