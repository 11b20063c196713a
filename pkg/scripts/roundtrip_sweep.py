#!/usr/bin/env python3
"""Lift/trace round trip over a grid of degrees and orders.

Writes one JSON report with pass counts, timings, lift term counts and
the largest coefficient bit length per (N, k), which tracks how the
corrections grow the coefficients.
"""

from __future__ import annotations

import argparse
import json
import os

from tetlift.jsonio import report
from tetlift.pipeline import verify_roundtrip


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=8)
    ap.add_argument("--max-order", type=int, default=2)
    ap.add_argument("--samples", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", default="roundtrip_sweep.json")
    args = ap.parse_args()

    rows = []
    for N in range(args.max_degree + 1):
        for k in range(min(N, args.max_order) + 1):
            rep = verify_roundtrip(N, k, args.samples, args.seed, workers=args.workers)
            rows.append(rep.to_dict())
            print(f"N={N} k={k} passed {rep.passed}/{rep.samples}  terms<={rep.max_terms}  bits<={rep.max_coeff_bits}  {rep.total_seconds:.2f}s")
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report("roundtrip_sweep", {"rows": rows}), fh, indent=2)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
