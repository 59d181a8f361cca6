#!/usr/bin/env python3
"""Perturb the maximizer G* within its constraint set and report the entropy
deficit and Bregman divergence of each perturbation."""
import argparse

from pickands.functionals import integrate, first_moment, tsallis_entropy
from pickands.maxent import (
    MaxEntSolution,
    bregman_divergence,
    feasible_perturbation,
    forward_constraints,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, default=0.75)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--count", type=int, default=10)
    args = ap.parse_args()
    sol = MaxEntSolution(args.q, 1.0, 1.0)
    c = forward_constraints(sol)
    h_star = tsallis_entropy(sol.curve(), args.q)
    print(f"G*: q={args.q} mu={c.mu:.10g} theta={c.theta:.10g} H_q={h_star:.10g}")
    print(f"{'k':>3} {'dmu':>10} {'dtheta':>10} {'H_q(G*)-H_q(g)':>16} {'B(g,G*)':>12} {'B/(1-q)dH':>10}")
    for k in range(1, args.count + 1):
        g = feasible_perturbation(sol, eps=args.eps, k=k)
        dh = h_star - tsallis_entropy(g, args.q)
        b = bregman_divergence(g, sol)
        print(f"{k:3d} {first_moment(g) - c.mu:10.1e} {integrate(g).value - c.theta:10.1e} "
              f"{dh:16.6e} {b:12.6e} {b / ((1 - args.q) * dh):10.6f}")


if __name__ == "__main__":
    main()
