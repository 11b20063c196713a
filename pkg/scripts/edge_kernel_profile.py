#!/usr/bin/env python3
"""Profile of the edge kernel A over the triangle.

Prints the closed form against its quadrature on a collapsed grid, the
grid minimum, and the minimum along horizontal lines x2 = const, which
shows where A drops below a given threshold.
"""

from __future__ import annotations

import argparse

import numpy as np

from tetlift.hardy import edge_kernel_A, edge_kernel_A_quadrature, edge_kernel_grid


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=10)
    ap.add_argument("--threshold", type=float, default=0.9)
    args = ap.parse_args()

    grid = edge_kernel_grid(args.grid)
    vals = np.array([edge_kernel_A(a, b) for a, b in grid])
    err = max(abs(v - edge_kernel_A_quadrature(a, b)) for v, (a, b) in zip(vals, grid))
    i = int(vals.argmin())
    print(f"grid {args.grid}x{args.grid}: max |closed form - quadrature| = {err:.2e}")
    print(f"grid minimum A = {vals[i]:.6f} at x = ({grid[i][0]:.4f}, {grid[i][1]:.4f})")
    print(f"points with A < {args.threshold}: {(vals < args.threshold).sum()} of {len(vals)}")

    print("x2,min_A_along_line")
    for x2 in np.linspace(0.01, 0.99, 15):
        xs = np.linspace(1e-6, 1 - x2 - 1e-6, 400)
        print(f"{x2:.3f},{min(edge_kernel_A(x, x2) for x in xs):.6f}")


if __name__ == "__main__":
    main()
