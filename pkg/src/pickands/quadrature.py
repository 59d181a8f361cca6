"""Adaptive quadrature over the half line [0, inf).

The half line is mapped to [0, 1) by z = t / (1 - t).  The t-interval is cut
at t_k = 1 - 2**-k, whose images z_k = 2**k - 1 are exactly the points where
1 + z doubles.  Each cell is integrated in the original variable z (the image
of a dyadic t-cell), which is the same integral but avoids the cancellation in
1 - t near t = 1.  Power-law tails then contribute a geometric sequence of
cell values; its ratio drives the truncation and divergence decisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, NonConvergenceError

_LO_X, _LO_W = np.polynomial.legendre.leggauss(10)
_HI_X, _HI_W = np.polynomial.legendre.leggauss(20)
_NODES = np.concatenate([_LO_X, _HI_X])

BLOCK = 48
MAX_CELLS = 1000  # z_k = 2**k - 1 stays finite in double precision
MAX_INTERVALS = 200_000
WINDOW = 16  # cells per envelope window in the tail-ratio estimate
# tail extensions beyond this point with a non-shrinking ratio count as divergent
DIVERGENCE_Z = 1e15


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    nodes_used: int


def _apply_rule(fn, a: np.ndarray, b: np.ndarray):
    """Paired Gauss-Legendre 10/20 on each [a_i, b_i]; returns (value, error, n_evals)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    z = mid[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(fn(z.ravel()), dtype=float).reshape(z.shape)
    if not np.all(np.isfinite(y)):
        bad = z[~np.isfinite(y)][0]
        raise NonConvergenceError(f"integrand is not finite at z={bad!r}")
    lo = half * (y[:, :10] @ _LO_W)
    hi = half * (y[:, 10:] @ _HI_W)
    return hi, np.abs(hi - lo), y.size


def _tail_ratio(cells: np.ndarray) -> float:
    """Per-cell decay ratio of the tail.

    Estimated from the envelope (max |cell|) of the last two windows of
    ``WINDOW`` cells, so that tails oscillating in log z, whose cells change
    sign every few doublings, are not mistaken for growth.  For a geometric
    sequence this is the exact ratio.
    """
    if cells.size >= 2 * WINDOW:
        e1 = np.abs(cells[-WINDOW:]).max()
        e0 = np.abs(cells[-2 * WINDOW:-WINDOW]).max()
        if e1 == 0.0:
            return 0.0
        if e0 == 0.0:
            return np.inf
        return float((e1 / e0) ** (1.0 / WINDOW))
    c1, c0 = abs(cells[-1]), abs(cells[-2])
    if c1 == 0.0:
        return 0.0
    if c0 == 0.0:
        return np.inf
    return c1 / c0


def _remainder(cells: np.ndarray):
    """Geometric continuation of the tail beyond the last cell: (estimate, bound)."""
    r = _tail_ratio(cells)
    if r == 0.0:
        return 0.0, 0.0
    if r >= 1.0:
        return np.inf, np.inf
    envelope = np.abs(cells[-WINDOW:]).max()
    return cells[-1] * r / (1.0 - r), envelope * r / (1.0 - r)


def _scan_cells(fn, rel_tol: float, abs_tol: float):
    """Coarse pass over dyadic cells; decides how far the tail must be followed."""
    edges = [0.0]
    values = []
    n_evals = 0
    k0 = 0
    while True:
        k1 = min(k0 + BLOCK, MAX_CELLS)
        new_edges = [2.0 ** (k + 1) - 1.0 for k in range(k0, k1)]
        a = np.array(edges[-1:] + new_edges[:-1])
        b = np.array(new_edges)
        v, _, n = _apply_rule(fn, a, b)
        n_evals += n
        edges.extend(new_edges)
        values.extend(v.tolist())
        k0 = k1
        cells = np.array(values)
        total = abs(cells.sum())
        r = _tail_ratio(cells)
        tol = max(abs_tol, rel_tol * total)
        if r < 1.0:
            if _remainder(cells)[1] <= 1e-3 * tol:
                return np.array(edges), n_evals
        if edges[-1] >= DIVERGENCE_Z:
            growth = np.inf if r >= 1.0 else _remainder(cells)[1] / max(total, 1e-300)
            if r >= 1.0 - 1e-9 or growth > 10.0:
                raise DivergenceError(
                    f"integral diverges: tail cell ratio {r:.6g} at z={edges[-1]:.3g}",
                    value=np.inf,
                )
        if k0 >= MAX_CELLS:
            if r < 1.0:
                return np.array(edges), n_evals
            raise DivergenceError("integral diverges: tail does not decay", value=np.inf)


def quad_half_line(fn: Callable[[np.ndarray], np.ndarray], rel_tol: float = 1e-9,
                   abs_tol: float = 0.0) -> QuadratureResult:
    """Integrate a vectorized function over [0, inf).

    Raises:
        DivergenceError: the cell contributions stop shrinking.
        NonConvergenceError: the error estimate stalls above tolerance.
    """
    edges, n_evals = _scan_cells(fn, rel_tol, abs_tol)
    a, b = edges[:-1].copy(), edges[1:].copy()
    cell = np.arange(a.size)
    val, err, n = _apply_rule(fn, a, b)
    n_evals += n
    while True:
        total = val.sum()
        tol = max(abs_tol, rel_tol * abs(total))
        if err.sum() <= tol:
            break
        if a.size > MAX_INTERVALS:
            raise NonConvergenceError(
                f"error estimate {err.sum():.3g} stalled above tolerance {tol:.3g}",
                value=float(total), error_estimate=float(err.sum()),
            )
        split = err > tol / a.size
        keep = ~split
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        nv, ne, n = _apply_rule(fn, na, nb)
        n_evals += n
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        cell = np.concatenate([cell[keep], cell[split], cell[split]])
    cells = np.bincount(cell, weights=val)
    remainder, bound = 0.0, 0.0
    if cells.size >= 2 and _tail_ratio(cells) < 1.0:
        remainder, bound = _remainder(cells)
    value = float(cells.sum() + remainder)
    error = float(err.sum() + bound)
    tol = max(abs_tol, rel_tol * abs(value))
    if error > tol:
        raise NonConvergenceError(
            f"tail remainder {bound:.3g} exceeds tolerance {tol:.3g}",
            value=value, error_estimate=error,
        )
    return QuadratureResult(value, error, n_evals)
