"""How often are three 10-trial means of the dense-regime ratio non-increasing?

Draws many 400-trial pools per size, then resamples 10-trial means from them.
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
    ap.add_argument("--pool", type=int, default=400)
    ap.add_argument("--draws", type=int, default=20000)
    args = ap.parse_args()

    pools = []
    for n in (128, 256, 512):
        pools.append(np.array([
            clique_cover_upper_bound(sample_gnp(n, 0.5, derive_seed(args.seed, n, 0.5, t)), exact_budget=0).value
            / (n / math.log2(n))
            for t in range(args.pool)
        ]))
    rng = np.random.default_rng(0)
    means = np.stack([rng.choice(p, size=(args.draws, 10)).mean(axis=1) for p in pools], axis=1)
    frac = np.mean((means[:, 0] >= means[:, 1]) & (means[:, 1] >= means[:, 2]))
    print(f"P(non-increasing 10-trial means) ~ {frac:.3f}")


if __name__ == "__main__":
    main()
