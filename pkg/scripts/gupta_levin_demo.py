"""Build the 2x2 matrix group over Z_2[fnil4(k)] and show the commutator words
[Y, [X0,X1], ..., [X0,Xm]] = (1, u_m) together with a sampled 6-Engel check."""

import argparse

import numpy as np

from engel_lab.group import engel_commutator
from engel_lab.gupta_levin import gupta_levin_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    M = gupta_levin_group(2, args.k)
    print(f"{M.name}: base {M.base.name} of order {M.base.order}")
    for m in range(1, M.rank):
        w = M.Y
        for j in range(1, m + 1):
            w = M.comm(w, M.comm(M.X(0), M.X(j)))
        u = M.u(m)
        print(f"u_{m} has {len(u)} terms; word equals (1, u_{m}): {w == M.kernel_element(u)}")
    rng = np.random.default_rng(args.seed)
    worst = 0
    for _ in range(args.pairs):
        X, Z = M.random_element(rng), M.random_element(rng)
        n = next((n for n in range(1, 7) if engel_commutator(M, X, Z, n).is_identity), None)
        if n is None:
            print(f"[X, 6 Z] != 1 for X = {X!r}, Z = {Z!r}")
            return
        worst = max(worst, n)
    print(f"{args.pairs} sampled pairs: every [X, n Z] vanishes by n = {worst}")


if __name__ == "__main__":
    main()
