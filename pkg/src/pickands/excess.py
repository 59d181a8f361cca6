"""Peaks over threshold: excess survival curves, their normalizations, the
asymptotic predictions for their functionals, and the max-entropy targets
those predictions coincide with.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .functionals import Curve
from .maxent import MaxEntSolution
from .survival_models import Frechet, GpdParams, SurvivalModel, Weibull

NORMALIZATIONS = ("none", "frechet_scale", "weibull_scale")

# marker for an infinite (non-existent) asymptotic functional
DIVERGENT = math.inf


@dataclass(frozen=True)
class ExcessSpec:
    """Excess of ``base`` over threshold ``u``.

    ``frechet_scale`` divides by g(u) (default g(u) = u); ``weibull_scale``
    multiplies by u**(xi - 1) * l(u) with l the model's slowly varying handle.
    """

    base: SurvivalModel
    u: float
    normalization: str = "none"
    g: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if not (math.isfinite(self.u) and self.u > 0):
            raise DomainError(f"threshold must be positive, got u={self.u}")
        if self.normalization not in NORMALIZATIONS:
            raise DomainError(f"unknown normalization {self.normalization!r}")
        if not np.isfinite(self.base.log_survival(self.u)):
            raise DomainError(f"threshold u={self.u} lies outside the support of {self.base.spec}")
        if self.normalization == "frechet_scale" and not isinstance(self.base.tail, Frechet):
            raise DomainError(f"{self.base.spec} has no Frechet tail; cannot apply frechet_scale")
        if self.normalization == "weibull_scale" and not isinstance(self.base.tail, Weibull):
            raise DomainError(f"{self.base.spec} has no Weibull tail; cannot apply weibull_scale")
        if self.g is not None and self.normalization != "frechet_scale":
            raise DomainError("a custom g(u) applies only to frechet_scale")

    @property
    def scale(self) -> float:
        """Factor c with S_Y(z) = S_X(u + c z) / S_X(u)."""
        if self.normalization == "frechet_scale":
            c = self.u if self.g is None else float(self.g(self.u))
        elif self.normalization == "weibull_scale":
            tail = self.base.tail
            mult = self.u ** (tail.xi - 1.0) * float(tail.l(np.asarray(self.u)))
            if not mult > 0:
                raise DomainError(f"slowly varying factor is not positive at u={self.u}")
            c = 1.0 / mult
        else:
            c = 1.0
        if not (math.isfinite(c) and c > 0):
            raise DomainError(f"normalizing scale must be positive, got {c}")
        return c


def natural_normalization(model: SurvivalModel) -> str:
    return "frechet_scale" if isinstance(model.tail, Frechet) else "weibull_scale"


def excess_survival(spec: ExcessSpec) -> Curve:
    """z -> S(u + c z) / S(u); equals 1 at z = 0."""
    base, u, c = spec.base, spec.u, spec.scale
    log_su = float(base.log_survival(u))

    def fn(z):
        return np.exp(base.log_survival(u + c * z) - log_su)

    return Curve(fn, base.tail)


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Predicted functionals; ``DIVERGENT`` (inf) where the integral is infinite,
    None where the branch makes no prediction."""

    qnorm_q: Optional[float]
    onenorm: float
    moment: float
    shannon: Optional[float] = None


def _check_positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive and finite, got {v}")


def predict_frechet(a: float, q: float, u: float) -> AsymptoticPrediction:
    """Excess functionals for S(z) ~ z**-a l(z) at threshold u.

    The q-norm needs only a q > 1 and the 1-norm a > 1; the moment needs a > 2.
    Violations are reported as divergent rather than raised.
    """
    _check_positive(a=a, q=q, u=u)
    qn = u / (a * q - 1.0) if a * q > 1.0 else DIVERGENT
    one = u / (a - 1.0) if a > 1.0 else DIVERGENT
    # the proposition prints u^2 / ((1-a)(2-a)); same value for a > 2
    mom = u * u / ((a - 1.0) * (a - 2.0)) if a > 2.0 else DIVERGENT
    return AsymptoticPrediction(qn, one, mom)


def predict_frechet_normalized(a: float, q: float) -> AsymptoticPrediction:
    return predict_frechet(a, q, 1.0)


def predict_weibull(xi: float, l_at_u: float, u: float) -> AsymptoticPrediction:
    _check_positive(xi=xi, l_at_u=l_at_u, u=u)
    h = u ** (1.0 - xi) / (xi * l_at_u)
    return AsymptoticPrediction(qnorm_q=None, onenorm=h, moment=h * h, shannon=h)


def predict_weibull_normalized(xi: float) -> AsymptoticPrediction:
    return predict_weibull(xi, 1.0, 1.0)


def maxent_target_frechet(a: float) -> MaxEntSolution:
    """q = 1 - 1/a (i.e. a = 1/(1-q)) with alpha = beta = 1."""
    if not (math.isfinite(a) and a > 2):
        raise DomainError(f"max-entropy matching needs tail index a > 2, got a={a}")
    return MaxEntSolution(1.0 - 1.0 / a, 1.0, 1.0)


def maxent_target_gumbel(xi: float) -> MaxEntSolution:
    _check_positive(xi=xi)
    return MaxEntSolution(1.0, 1.0, xi)


def target_gpd(tail) -> GpdParams:
    """GPD limit of the normalized excess: GPD(1/a, 1/a) or the exponential of rate xi."""
    if isinstance(tail, Frechet):
        return GpdParams(1.0 / tail.a, 1.0 / tail.a)
    return GpdParams(0.0, 1.0 / tail.xi)


def gpd_stability(params: GpdParams, u: float) -> GpdParams:
    """Excess of GPD(gamma, sigma) over u is GPD(gamma, sigma + gamma u)."""
    _check_positive(u=u)
    return GpdParams(params.gamma, params.sigma + params.gamma * u)
