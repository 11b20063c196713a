#!/usr/bin/env python3
"""Observed ratios ||L_k F||_{s,p} / surrogate trace norm as the degree grows.

The trace norm here is a surrogate with integer Sobolev orders; the
ratios are observations, not estimates of a continuity constant.
"""

from __future__ import annotations

import argparse
import os

from tetlift.norms import stability_csv, stability_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", default="3,4,5,6")
    ap.add_argument("--order", type=int, default=0)
    ap.add_argument("--s", type=int, default=1)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default="stability")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    print("N,max_ratio,mean_ratio")
    for N in (int(d) for d in args.degrees.split(",")):
        rows = stability_experiment(N, args.order, args.samples, args.s, args.p, args.seed)
        path = os.path.join(args.outdir, f"stability_N{N}_k{args.order}_s{args.s}_p{args.p:g}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(stability_csv(rows))
        ratios = [r["ratio"] for r in rows]
        print(f"{N},{max(ratios):.6g},{sum(ratios) / len(ratios):.6g}")


if __name__ == "__main__":
    main()
