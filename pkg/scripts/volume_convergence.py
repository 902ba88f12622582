"""Fraction of the Bloch ball occupied by the positivity octahedron.

Grid scans at increasing resolution plus a Monte-Carlo estimate, against the
exact ratio (4/3) / (4 pi / 3) = 1/pi.
"""

import argparse
import math

import numpy as np

from spinpmf.scan import ScanSpec, volume_fraction
from spinpmf.verify import random_ball


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolutions", type=int, nargs="+", default=[21, 51, 101, 201])
    ap.add_argument("--mc-points", type=int, default=10_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    exact = 1 / math.pi
    print(f"{'method':<16}{'fraction':>12}{'error':>12}")
    for r in args.resolutions:
        f = volume_fraction(ScanSpec(resolution=r))
        print(f"{'grid ' + str(r):<16}{f:>12.6f}{f - exact:>12.2e}")

    rng = np.random.default_rng(args.seed)
    inside = 0
    chunk = 1_000_000
    for start in range(0, args.mc_points, chunk):
        p = random_ball(rng, min(chunk, args.mc_points - start))
        inside += int(np.count_nonzero(np.abs(p).sum(axis=1) <= 1))
    f = inside / args.mc_points
    se = math.sqrt(exact * (1 - exact) / args.mc_points)
    print(f"{'monte carlo':<16}{f:>12.6f}{f - exact:>12.2e}   (stderr {se:.1e})")
    print(f"{'exact 1/pi':<16}{exact:>12.6f}")


if __name__ == "__main__":
    main()
