"""Survival models on [0, inf) with their extreme-value tail classification.

Every model carries a log-survival function so that ratios S(x + u) / S(u)
remain accurate deep in the tail, where S itself underflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import DomainError
from .special import log_erfc, log_gammaincc

SMALL_GAMMA = 1e-8

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GpdParams:
    """Shape ``gamma`` >= 0 and scale ``sigma`` > 0 of a Generalized Pareto law."""

    gamma: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"GPD scale must be positive, got sigma={self.sigma}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(
                f"GPD shape must be >= 0 (finite-support GPD is not supported), got gamma={self.gamma}"
            )


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise DomainError("survival arguments must be nonnegative")
    return x


def gpd_log_survival(params: GpdParams, x):
    x = _check_x(x)
    g, s = params.gamma, params.sigma
    if g < SMALL_GAMMA:
        # -(1/g) log1p(g x / s) expanded to second order in g
        return -x / s + 0.5 * g * (x / s) ** 2
    return -np.log1p(g * x / s) / g


def gpd_survival(params: GpdParams, x):
    """(1 + gamma x / sigma) ** (-1 / gamma), or exp(-x / sigma) at gamma = 0."""
    return np.exp(gpd_log_survival(params, x))


def gpd_density(params: GpdParams, x):
    x = _check_x(x)
    g, s = params.gamma, params.sigma
    if g < SMALL_GAMMA:
        return np.exp(gpd_log_survival(params, x)) / s / (1.0 + g * x / s)
    return np.exp(-(1.0 / g + 1.0) * np.log1p(g * x / s)) / s


def gpd_quantile(params: GpdParams, p):
    """Inverse of :func:`gpd_survival` for p in (0, 1]."""
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0) & (p <= 1))):
        raise DomainError("quantile level must lie in (0, 1]")
    g, s = params.gamma, params.sigma
    big_l = -np.log(p)
    if g < SMALL_GAMMA:
        # inverse of the second-order small-gamma survival
        return s * big_l * (1.0 + 0.5 * g * big_l)
    return s * np.expm1(g * big_l) / g


@dataclass(frozen=True)
class Frechet:
    """Power tail S(z) = z**-a * l(z), with l slowly varying."""

    a: float
    l: ArrayFn
    l_limit: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"Frechet tail index must be positive, got a={self.a}")


@dataclass(frozen=True)
class Weibull:
    """Weibull-type (Gumbel domain) tail S(z) ~ exp(-z**xi * l(z))."""

    xi: float
    l: ArrayFn
    l_limit: float

    def __post_init__(self):
        if not self.xi > 0:
            raise DomainError(f"Weibull tail index must be positive, got xi={self.xi}")


TailClass = Union[Frechet, Weibull]


def _invert_survival(log_survival: ArrayFn, density: ArrayFn, p: np.ndarray) -> np.ndarray:
    """Solve S(x) = p by bracketing, then Newton steps on log S kept inside the bracket.

    A Newton step that leaves the bracket (or is not finite) is replaced by
    bisection, so convergence is guaranteed and usually quadratic.
    """
    target = np.log(p)
    lo = np.zeros_like(p)
    hi = np.ones_like(p)
    for _ in range(2100):
        short = log_survival(hi) > target
        if not short.any():
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, 2.0 * hi, hi)
    x = 0.5 * (lo + hi)
    active = np.ones(p.shape, dtype=bool)
    for _ in range(200):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        xa, ta = x[idx], target[idx]
        resid = log_survival(xa) - ta
        above = resid > 0
        lo[idx] = np.where(above, xa, lo[idx])
        hi[idx] = np.where(above, hi[idx], xa)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            # d log S / dx = -f / S
            hazard = np.exp(np.log(density(xa)) - (resid + ta))
            step = xa + resid / hazard
        inside = np.isfinite(step) & (step > lo[idx]) & (step < hi[idx])
        new = np.where(inside, step, 0.5 * (lo[idx] + hi[idx]))
        done = (np.abs(resid) <= 4e-16 * np.maximum(1.0, np.abs(ta))) | (new == xa) \
            | (hi[idx] - lo[idx] <= 4e-16 * hi[idx])
        x[idx] = np.where(done, xa, new)
        active[idx] = ~done
    return x


@dataclass(frozen=True)
class SurvivalModel:
    """A distribution on [0, inf) described by its survival function.

    ``log_survival`` is the primitive; ``survival``, ``density`` and ``quantile``
    accept scalars or numpy arrays.
    """

    name: str
    params: tuple
    log_survival_fn: ArrayFn = field(repr=False)
    density_fn: ArrayFn = field(repr=False)
    tail: TailClass = field(repr=False)
    quantile_fn: ArrayFn | None = field(default=None, repr=False)

    def log_survival(self, x):
        return self.log_survival_fn(_check_x(x))

    def survival(self, x):
        return np.exp(self.log_survival(x))

    def density(self, x):
        return self.density_fn(_check_x(x))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any(~((p > 0) & (p <= 1))):
            raise DomainError("quantile level must lie in (0, 1]")
        if self.quantile_fn is not None:
            return self.quantile_fn(p)
        scalar = p.ndim == 0
        p1 = np.atleast_1d(p)
        x = np.where(p1 == 1.0, 0.0, _invert_survival(self.log_survival_fn, self.density_fn, p1))
        return x[0] if scalar else x

    @property
    def spec(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:" + ",".join(f"{v:g}" for v in self.params)


def _gpd_model(gamma: float, sigma: float) -> SurvivalModel:
    p = GpdParams(gamma, sigma)
    if gamma > 0:
        a = 1.0 / gamma
        # S(z) z**a -> (sigma / gamma)**a
        log_limit = a * math.log(sigma / gamma)
        tail = Frechet(a, lambda z: np.exp(gpd_log_survival(p, z) + a * np.log(z)),
                       math.exp(log_limit) if log_limit < 709.0 else math.inf)
    else:
        tail = Weibull(1.0, lambda z: np.full_like(np.asarray(z, dtype=float), 1.0 / sigma),
                       1.0 / sigma)
    return SurvivalModel(
        "gpd", (gamma, sigma),
        lambda x: gpd_log_survival(p, x),
        lambda x: gpd_density(p, x),
        tail,
        lambda q: gpd_quantile(p, q),
    )


def _pareto_model(a: float) -> SurvivalModel:
    # unit-scale Pareto: S = 1 on [0, 1], x**-a beyond, so l == 1 exactly
    def log_s(x):
        return -a * np.log(np.maximum(x, 1.0))

    def dens(x):
        return np.where(x > 1.0, a * np.maximum(x, 1.0) ** (-a - 1.0), 0.0)

    def quant(p):
        return np.where(p < 1.0, p ** (-1.0 / a), 0.0)

    tail = Frechet(a, lambda z: np.ones_like(np.asarray(z, dtype=float)), 1.0)
    return SurvivalModel("pareto", (a,), log_s, dens, tail, quant)


def _lomax_model(a: float) -> SurvivalModel:
    tail = Frechet(a, lambda z: np.exp(a * (np.log(z) - np.log1p(z))), 1.0)
    return SurvivalModel(
        "lomax", (a,),
        lambda x: -a * np.log1p(x),
        lambda x: a * (1.0 + x) ** (-a - 1.0),
        tail,
        lambda p: np.expm1(-np.log(p) / a),
    )


def _half_cauchy_log_survival(x):
    x = np.asarray(x, dtype=float)
    big = x > 1.0
    # arctan(x) = pi/2 - arctan(1/x) avoids cancellation in 1 - (2/pi) arctan(x)
    with np.errstate(divide="ignore"):
        far = np.log(2.0 / np.pi) + np.log(np.arctan(1.0 / np.where(big, x, 1.0)))
    near = np.log1p(-(2.0 / np.pi) * np.arctan(np.where(big, 1.0, x)))
    return np.where(big, far, near)


def _half_cauchy_model() -> SurvivalModel:
    tail = Frechet(1.0, lambda z: z * np.exp(_half_cauchy_log_survival(z)), 2.0 / np.pi)
    return SurvivalModel(
        "half_cauchy", (),
        _half_cauchy_log_survival,
        lambda x: 2.0 / (np.pi * (1.0 + x * x)),
        tail,
        # S = (2/pi) arctan(1/x)  =>  x = 1 / tan(pi p / 2), exact also for tiny p
        lambda p: np.where(p < 1.0, 1.0 / np.tan(0.5 * np.pi * p), 0.0),
    )


def _half_gaussian_model() -> SurvivalModel:
    # Gaussian tail expansion exp(-z^2/2) / (sqrt(2 pi) z)  =>  l(z) = 1/2 + log(sqrt(2 pi) z) / z^2.
    # The half-line factor 2 only shifts l by log(2)/z^2; keeping the Gaussian
    # form gives monotone finite-u convergence of the normalized excess.
    tail = Weibull(2.0, lambda z: 0.5 + np.log(np.sqrt(2.0 * np.pi) * z) / z ** 2, 0.5)
    return SurvivalModel(
        "half_gaussian", (),
        lambda x: log_erfc(x / np.sqrt(2.0)),
        lambda x: np.sqrt(2.0 / np.pi) * np.exp(-0.5 * x * x),
        tail,
    )


def _gamma_model(a: float, b: float) -> SurvivalModel:
    # Gamma(a, bx) ~ (bx)**(a-1) exp(-bx)  =>  l(z) = b - (a - 1) log(bz) / z
    tail = Weibull(1.0, lambda z: b - (a - 1.0) * np.log(b * z) / z, b)
    lg = math.lgamma(a)

    def dens(x):
        with np.errstate(divide="ignore"):
            return np.exp(a * math.log(b) + (a - 1.0) * np.log(x) - b * x - lg)

    quant = (lambda p: -np.log(p) / b) if a == 1.0 else None
    return SurvivalModel("gamma", (a, b), lambda x: log_gammaincc(a, b * x), dens, tail, quant)


_CATALOG = {
    "gpd": (2, _gpd_model),
    "pareto": (1, _pareto_model),
    "lomax": (1, _lomax_model),
    "half_cauchy": (0, _half_cauchy_model),
    "half_gaussian": (0, _half_gaussian_model),
    "gamma": (2, _gamma_model),
}

MODEL_NAMES = tuple(_CATALOG)


def make_model(name: str, parameters=()) -> SurvivalModel:
    """Build a catalog model.

    Catalog (all on [0, inf) with S(0) = 1):

    * ``gpd(gamma, sigma)``: Generalized Pareto, gamma >= 0.
    * ``pareto(a)``: unit-scale Pareto, S(x) = min(1, x**-a).
    * ``lomax(a)``: S(x) = (1 + x)**-a.
    * ``half_cauchy``: density 2 / (pi (1 + x^2)).
    * ``half_gaussian``: S(x) = erfc(x / sqrt 2).
    * ``gamma(a, b)``: shape a, rate b, S(x) = Gamma(a, bx) / Gamma(a).
    """
    if name not in _CATALOG:
        raise DomainError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")
    arity, factory = _CATALOG[name]
    parameters = tuple(float(v) for v in parameters)
    if len(parameters) != arity:
        raise DomainError(f"model {name!r} takes {arity} parameter(s), got {len(parameters)}")
    if not all(math.isfinite(v) for v in parameters):
        raise DomainError(f"model {name!r} parameters must be finite")
    if name in ("pareto", "lomax") and not parameters[0] > 0:
        raise DomainError(f"{name} tail index must be positive")
    if name == "gamma" and not (parameters[0] > 0 and parameters[1] > 0):
        raise DomainError("gamma shape and rate must be positive")
    return factory(*parameters)


def parse_model_spec(spec: str) -> SurvivalModel:
    """Parse ``name[:p1[,p2]]``, e.g. ``pareto:3`` or ``gamma:3,2``."""
    name, _, rest = spec.strip().partition(":")
    try:
        params = [float(tok) for tok in rest.split(",")] if rest else []
    except ValueError as exc:
        raise DomainError(f"cannot parse model parameters in {spec!r}") from exc
    return make_model(name.strip(), params)
