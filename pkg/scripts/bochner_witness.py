"""Search for point sets whose Gram matrix certifies non-positive-definiteness.

Margenau-Hill: a witness exists exactly when the Bloch vector leaves the
octahedron. Wigner-Weyl: the pure state along +z restricted to the (t1, t2)
plane, i.e. the two-observable example, also fails.
"""

import argparse

import numpy as np

from spinpmf.charfn import BochnerSearchConfig, bochner_search, cf_handle


def planar(cf):
    def restricted(t):
        t = np.array(t, dtype=float)
        t[..., 2] = 0.0
        return cf(t)

    return restricted


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = BochnerSearchConfig(restarts=args.restarts, seed=args.seed)

    cases = [
        ("MH  p=(0.5,0.5,0.5)", cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5))),
        ("MH  p=(0.6,0.6,0)", cf_handle("MARGENAU_HILL", (0.6, 0.6, 0.0))),
        ("MH  p=(0.3,0.3,0.3)", cf_handle("MARGENAU_HILL", (0.3, 0.3, 0.3))),
        ("WW  p=(0,0,1) planar", planar(cf_handle("WIGNER_WEYL", (0, 0, 1)))),
        ("WW  p=(0,0,0)", cf_handle("WIGNER_WEYL", (0, 0, 0))),
    ]
    for name, cf in cases:
        w = bochner_search(cf, cfg)
        print(f"{name:<24} min eigenvalue {w.min_eigenvalue: .6e}  ({len(w.points)} points, restart {w.restart})")
        if w.min_eigenvalue < -1e-6:
            print("    points:", np.array2string(w.points, precision=4, suppress_small=True).replace("\n", "\n            "))


if __name__ == "__main__":
    main()
