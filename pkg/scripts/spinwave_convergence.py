#!/usr/bin/env python3
"""Convergence study for the spin-wave zone integrals.

Documents where the frozen regression constants in the test suite come
from: per-site energies on a sequence of doubling midpoint grids, with a
Richardson extrapolation assuming the observed ~N^-3 error decay
(conical integrand kinks at the zone corner keep it below N^-4).

Run:  python3 scripts/spinwave_convergence.py [--max-points-2d 4096]
"""

import argparse

from xxzent import spinwave as sw


def richardson(coarse: float, fine: float, order: int = 3) -> float:
    # fine grid has twice the points per axis
    return fine + (fine - coarse) / (2**order - 1)


def study(dimension: int, delta: float, sizes: list[int]) -> None:
    branch = "ising" if delta >= 1 else "planar"
    print(f"\nd={dimension}, delta={delta} ({branch} branch)")
    print(f"{'points/axis':>12} {'e_site':>22} {'drift from previous':>22}")
    prev = None
    for n in sizes:
        e = sw.energy_per_site(delta, dimension, n)
        drift = "" if prev is None else f"{e - prev:+.3e}"
        print(f"{n:>12} {e:>22.15f} {drift:>22}")
        prev = e
    if len(sizes) >= 2:
        coarse = sw.energy_per_site(delta, dimension, sizes[-2])
        extrap = richardson(coarse, prev)
        print(f"{'extrapolated':>12} {extrap:>22.12f}   (N^-3 Richardson)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-points-2d", type=int, default=4096)
    ap.add_argument("--max-points-3d", type=int, default=192,
                    help="memory grows as points^3; 192 needs ~60 MB per array")
    args = ap.parse_args()

    sizes2 = [n for n in (64, 128, 256, 512, 1024, 2048, 4096) if n <= args.max_points_2d]
    sizes3 = [n for n in (24, 48, 96, 192) if n <= args.max_points_3d]

    study(2, 1.0, sizes2)
    study(3, 1.0, sizes3)
    study(2, 0.0, sizes2)

    print("\nproduction grids: 512 points/axis (d=2), 96 (d=3);")
    print("both sit within 1e-7 of the extrapolated values above, which is")
    print("what the regression tests freeze.")


if __name__ == "__main__":
    main()
