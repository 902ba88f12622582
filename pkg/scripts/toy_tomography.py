"""Moment-estimator tomography from sampled outcomes.

For Bloch vectors at increasing L1 distance toward the octahedron face, draw
batches of several sizes and report how often the estimate is itself
admissible (inside the octahedron) and the mean absolute error.
"""

import argparse

import numpy as np

from spinpmf.pmf import pmf_from_bloch
from spinpmf.sampling import estimate_and_classify, sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1_000, 10_000])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    direction = np.array([0.5, 0.3, -0.2])
    print(f"{'L1':>5}{'n':>8}{'admissible':>12}{'mean |err|':>12}")
    for l1 in (0.5, 0.9, 0.99, 1.0):
        p = direction * l1
        pmf = pmf_from_bloch(p)
        for n in args.sizes:
            admissible, err = 0, 0.0
            for trial in range(args.trials):
                res = estimate_and_classify(sample(pmf, n, seed=args.seed * 10**6 + trial))
                admissible += res.admissible
                err += np.abs(np.array(res.estimate.p_hat) - p).mean()
            print(f"{l1:>5}{n:>8}{admissible / args.trials:>12.3f}{err / args.trials:>12.4f}")


if __name__ == "__main__":
    main()
