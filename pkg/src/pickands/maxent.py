"""Maximum Tsallis / Shannon entropy on [0, inf) under moment constraints.

Among nonnegative G with fixed 1-norm theta and first moment mu, the q-norm
(q < 1) or Shannon entropy (q = 1) is maximized by

    G*(z) = alpha**(1/(q-1)) * (1 + beta z / alpha)**(1/(q-1))    (q < 1)
    G*(z) = alpha * exp(-beta z)                                (q = 1)

Everything here is closed form except the Bregman divergence and the
perturbation helper, which integrate numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functionals import DEFAULT_REL_TOL, Curve
from .quadrature import quad_half_line
from .survival_models import GpdParams

SHANNON_BAND = 1e-9


def is_shannon(q: float) -> bool:
    return abs(q - 1.0) < SHANNON_BAND


def _check_q(q: float):
    if not (math.isfinite(q) and 0.5 < q <= 1.0 + SHANNON_BAND):
        raise DomainError(f"entropy order must lie in (1/2, 1], got q={q}")


@dataclass(frozen=True)
class MaxEntSolution:
    q: float
    alpha: float
    beta: float

    def __post_init__(self):
        _check_q(self.q)
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")

    def curve(self) -> Curve:
        return Curve(lambda z: evaluate_solution(self, z))


@dataclass(frozen=True)
class ConstraintValues:
    """mu = first moment, theta = 1-norm, entropy_stat = q-norm**q (q < 1) or H1 (q = 1)."""

    mu: float
    theta: float
    entropy_stat: float


def evaluate_solution(sol: MaxEntSolution, z):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("G* is defined on z >= 0")
    q, a, b = sol.q, sol.alpha, sol.beta
    if is_shannon(q):
        return a * np.exp(-b * z)
    k = 1.0 / (q - 1.0)
    return np.exp(k * (math.log(a) + np.log1p(b * z / a)))


def forward_constraints(sol: MaxEntSolution) -> ConstraintValues:
    q, a, b = sol.q, sol.alpha, sol.beta
    if is_shannon(q):
        # -int a e^{-bz} log(a e^{-bz}) dz = -(a/b) log a + a/b
        return ConstraintValues(a / b ** 2, a / b, -(a / b) * math.log(a) + a / b)
    mu = (q - 1.0) ** 2 / (q * (2.0 * q - 1.0)) * a ** ((2.0 * q - 1.0) / (q - 1.0)) / b ** 2
    theta = a ** (q / (q - 1.0)) / b * (1.0 - q) / q
    norm = a ** ((2.0 * q - 1.0) / (q - 1.0)) / b * (1.0 - q) / (2.0 * q - 1.0)
    return ConstraintValues(mu, theta, norm)


def inverse_solve(q: float, mu: float, theta: float) -> MaxEntSolution:
    """(alpha, beta) whose maximizer has first moment ``mu`` and 1-norm ``theta``.

    Every positive (mu, theta) pair is attainable: mu / theta**2 fixes alpha
    through alpha**(1/(1-q)) = (2q - 1) mu / (q theta**2), then theta fixes beta.
    """
    _check_q(q)
    for name, v in (("mu", mu), ("theta", theta)):
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive and finite, got {v}")
    if is_shannon(q):
        return MaxEntSolution(1.0, theta ** 2 / mu, theta / mu)
    ratio = q * theta ** 2 / ((2.0 * q - 1.0) * mu)
    alpha = math.exp((q - 1.0) * math.log(ratio))
    beta = alpha ** (q / (q - 1.0)) * (1.0 - q) / (q * theta)
    return MaxEntSolution(q, alpha, beta)


def bregman_divergence(g: Curve, sol: MaxEntSolution, q: float | None = None,
                       rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Functional Bregman divergence B(g, G*) generated by the convex map x -> -x**q.

    Pointwise d(f, h) = h**q - f**q + q h**(q-1) (f - h) >= 0, integrated over
    [0, inf).  Here G***(q-1) = alpha + beta z exactly, so no negative power
    of G* is ever formed.  When g shares (mu, theta) with G*, the linear term
    integrates to zero and B(g, G*) = int G***q - int g**q.
    """
    q = sol.q if q is None else q
    if not 0.5 < q < 1.0:
        raise DomainError(f"Bregman divergence is defined here for q in (1/2, 1), got {q}")
    if not math.isclose(q, sol.q, rel_tol=0, abs_tol=1e-12):
        raise DomainError(f"q={q} does not match the solution order {sol.q}")
    a, b = sol.alpha, sol.beta

    def integrand(z):
        f = g(z)
        if np.any(f < 0):
            raise DomainError("g takes negative values")
        h = evaluate_solution(sol, z)
        return h ** q - f ** q + q * (a + b * z) * (f - h)

    # B can vanish; measure the error against the size of int G***q instead
    scale = forward_constraints(sol).entropy_stat
    return quad_half_line(integrand, rel_tol, abs_tol=rel_tol * scale).value


def gpd_from_maxent(sol: MaxEntSolution) -> GpdParams:
    """GPD matching G* when G*(0) = 1, i.e. alpha = 1: gamma = 1 - q, sigma = (1 - q) / beta."""
    if not math.isclose(sol.alpha, 1.0, rel_tol=1e-12):
        raise DomainError(f"G* is a survival function only for alpha = 1, got alpha={sol.alpha}")
    if is_shannon(sol.q):
        return GpdParams(0.0, 1.0 / sol.beta)
    return GpdParams(1.0 - sol.q, (1.0 - sol.q) / sol.beta)


def feasible_perturbation(sol: MaxEntSolution, eps: float = 0.05, k: int = 1,
                          rel_tol: float = 1e-11) -> Curve:
    """g = G* (1 + eps h) with the same mu and theta as G*.

    h = bump_k - c0 - c1 / (1 + z), where bump_k(z) = cos(k log(1 + z) + k)
    changes sign, and (c0, c1) solve the 2x2 system that zeroes the bump's
    contributions to mu and theta.  |h| stays bounded, so g >= 0 for small eps.
    """
    if k < 1:
        raise DomainError("perturbation index k must be >= 1")
    gstar = lambda z: evaluate_solution(sol, z)
    bump = lambda z: np.cos(k * np.log1p(z) + k)
    basis = (lambda z: np.ones_like(z), lambda z: 1.0 / (1.0 + z))

    def weigh(fn, power):
        return quad_half_line(lambda z: z ** power * gstar(z) * fn(z), rel_tol).value

    m = np.array([[weigh(b, p) for b in basis] for p in (0, 1)])
    rhs = np.array([weigh(bump, p) for p in (0, 1)])
    c0, c1 = np.linalg.solve(m, rhs)

    def h(z):
        return bump(z) - c0 - c1 / (1.0 + z)

    bound = 1.0 + abs(c0) + abs(c1)
    if eps * bound >= 1.0:
        raise DomainError(f"eps={eps} too large to keep the perturbed curve nonnegative")
    return Curve(lambda z: gstar(z) * (1.0 + eps * h(z)))
