"""Norm, moment and entropy functionals of nonnegative curves on [0, inf).

The curves are typically survival functions, which need not integrate to
one; the entropies below are therefore functionals of a nonnegative curve
rather than entropies of a probability density.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureResult, quad_half_line
from .survival_models import TailClass

DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True)
class Curve:
    """Vectorized nonnegative function on [0, inf), with an optional tail hint."""

    fn: Callable[[np.ndarray], np.ndarray]
    decay: Optional[TailClass] = None

    def __call__(self, z):
        return self.fn(np.asarray(z, dtype=float))


def _check_tol(rel_tol):
    if not 1e-12 <= rel_tol <= 1e-2:
        raise DomainError(f"rel_tol must lie in [1e-12, 1e-2], got {rel_tol}")


def _nonnegative(curve: Curve):
    def fn(z):
        y = curve(z)
        if np.any(y < 0):
            raise DomainError("curve takes negative values on the quadrature nodes")
        return y
    return fn


def integrate(curve: Curve, rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Integral of a nonnegative curve over [0, inf).

    Raises DivergenceError for non-integrable tails and NonConvergenceError
    when the error estimate cannot be brought under ``rel_tol``.
    """
    _check_tol(rel_tol)
    return quad_half_line(_nonnegative(curve), rel_tol)


def q_norm_q(curve: Curve, q: float, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The q-th power of the q-norm, the integral of G**q."""
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    g = _nonnegative(curve)
    _check_tol(rel_tol)
    return quad_half_line(lambda z: g(z) ** q, rel_tol).value


def first_moment(curve: Curve, rel_tol: float = DEFAULT_REL_TOL) -> float:
    g = _nonnegative(curve)
    _check_tol(rel_tol)
    return quad_half_line(lambda z: z * g(z), rel_tol).value


def tsallis_entropy(curve: Curve, q: float, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """(integral of G**q - 1) / (1 - q), for q >= 0, q != 1."""
    if q < 0 or q == 1:
        raise DomainError(f"Tsallis entropy needs q >= 0 and q != 1, got {q}")
    if q == 0:
        raise DomainError("q = 0 counts the support length, which is infinite on [0, inf)")
    return (q_norm_q(curve, q, rel_tol) - 1.0) / (1.0 - q)


def _neg_xlogx(y):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(y > 0, -y * np.log(np.where(y > 0, y, 1.0)), 0.0)


def shannon_entropy(curve: Curve, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """-integral of G log G, with 0 log 0 = 0."""
    g = _nonnegative(curve)
    _check_tol(rel_tol)
    return quad_half_line(lambda z: _neg_xlogx(g(z)), rel_tol).value


def sup_distance(curve_a: Curve, curve_b: Curve, grid) -> float:
    """max |A(z) - B(z)| over the grid points."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("sup_distance needs a non-empty grid")
    if np.any(grid < 0):
        raise DomainError("grid points must be nonnegative")
    return float(np.max(np.abs(curve_a(grid) - curve_b(grid))))
