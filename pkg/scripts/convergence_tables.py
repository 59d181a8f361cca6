#!/usr/bin/env python3
"""Threshold sweeps for every catalog branch, written as CSV tables and SVG charts.

Fréchet branch: pareto (exact at every u), lomax and gpd; the half-Cauchy
(a = 1) has no finite 1-norm and is tracked by the sup distance only.
Weibull branch: half_gaussian (xi = 2) and gamma(3, 2) (xi = 1).
"""
import argparse
import os

from pickands import cli

SWEEPS = [
    ("pareto:3", "1", "1000", []),
    ("lomax:3", "1", "1000", []),
    ("lomax:5", "1", "1000", []),
    ("gpd:0.25,1", "1", "1000", []),
    ("half_cauchy", "10", "100000", ["--metrics", "sup_norm"]),
    ("half_gaussian", "2", "20", []),
    ("gamma:3,2", "5", "500", []),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--points", default="7")
    ap.add_argument("--workers", default="4")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    for spec, lo, hi, extra in SWEEPS:
        stem = os.path.join(args.outdir, "sweep_" + spec.replace(":", "_").replace(",", "_"))
        for fmt in ("csv", "svg"):
            argv = ["sweep", spec, "--u-min", lo, "--u-max", hi, "--points", args.points,
                    "--workers", args.workers, "--format", fmt, "--out", f"{stem}.{fmt}"] + extra
            code = cli.main(argv)
            if code:
                raise SystemExit(f"{spec}: exit code {code}")
        print("wrote", stem + ".csv", stem + ".svg")


if __name__ == "__main__":
    main()
