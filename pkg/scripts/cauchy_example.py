#!/usr/bin/env python3
"""Normalized excess of the half-Cauchy law against its GPD limit 1/(1+x).

Prints the sup distance on [0, 100] for u = 10 .. 10^5 and the ratio between
successive decades; a ratio near 100 is the O(u^-2) rate.
"""
import argparse

import numpy as np

from pickands.convergence_lab import SweepConfig, run_sweep
from pickands.excess import ExcessSpec, excess_survival
from pickands.survival_models import make_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--decades", type=int, default=5)
    args = ap.parse_args()
    model = make_model("half_cauchy")
    grid = 10.0 ** np.arange(1, args.decades + 1)
    reports = run_sweep(SweepConfig(model, grid, metrics=("sup_norm",)))
    print(f"{'u':>10} {'sup|S_u - 1/(1+x)|':>20} {'ratio':>8} {'S_u(1)':>10}")
    prev = None
    for r in reports:
        s1 = float(excess_survival(ExcessSpec(model, r.u, "frechet_scale"))(1.0))
        ratio = f"{prev / r.sup_norm:8.2f}" if prev else " " * 8
        print(f"{r.u:10.0e} {r.sup_norm:20.6e} {ratio} {s1:10.6f}")
        prev = r.sup_norm


if __name__ == "__main__":
    main()
