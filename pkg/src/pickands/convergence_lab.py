"""Threshold sweeps measuring how normalized excess curves approach their
GPD / max-entropy limit, and a Monte Carlo cross-check of the quadrature.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DivergenceError, DomainError, InsufficientDataError
from .excess import (
    AsymptoticPrediction,
    ExcessSpec,
    excess_survival,
    gpd_stability,
    maxent_target_frechet,
    maxent_target_gumbel,
    natural_normalization,
    predict_frechet,
    predict_weibull,
    predict_weibull_normalized,
    target_gpd,
)
from .functionals import (
    DEFAULT_REL_TOL,
    Curve,
    first_moment,
    integrate,
    q_norm_q,
    shannon_entropy,
    sup_distance,
)
from .maxent import ConstraintValues, MaxEntSolution, bregman_divergence, forward_constraints
from .survival_models import Frechet, GpdParams, SurvivalModel, gpd_survival

METRICS = ("functionals", "entropy_gap", "bregman", "sup_norm")
FIELDS = ("qnorm_q", "onenorm", "moment", "shannon")
RNG_NAME = "numpy Philox4x64-10"
DEFAULT_GRID = np.linspace(0.0, 100.0, 1001)


@dataclass(frozen=True)
class SweepConfig:
    model: SurvivalModel
    u_grid: Sequence[float]
    q: Optional[float] = None
    metrics: Sequence[str] = METRICS
    grid: np.ndarray = field(default_factory=lambda: DEFAULT_GRID)
    rel_tol: float = DEFAULT_REL_TOL
    workers: int = 1
    normalized: bool = True

    def __post_init__(self):
        u = np.asarray(self.u_grid, dtype=float)
        if u.size == 0 or np.any(np.diff(u) <= 0) or np.any(u <= 0):
            raise DomainError("u_grid must be positive and strictly increasing")
        unknown = set(self.metrics) - set(METRICS)
        if unknown:
            raise DomainError(f"unknown metrics: {sorted(unknown)}")
        if self.q is not None and not self.q > 0:
            raise DomainError(f"q must be positive, got {self.q}")


@dataclass
class Functionals:
    qnorm_q: Optional[float] = None
    onenorm: Optional[float] = None
    moment: Optional[float] = None
    shannon: Optional[float] = None


@dataclass
class FunctionalReport:
    u: float
    normalization: str
    scale: float
    q: float
    computed: Functionals
    predicted: AsymptoticPrediction
    target_solution: Optional[MaxEntSolution]
    target: Optional[ConstraintValues]
    err_predicted: dict
    err_target: dict
    entropy_gap: Optional[float] = None
    bregman: Optional[float] = None
    sup_norm: Optional[float] = None
    stability_sup: Optional[float] = None


def relative_error(value, reference) -> float:
    """|value - reference| / |reference|; inf when exactly one side is infinite."""
    if value is None or reference is None:
        return math.nan
    if math.isinf(value) or math.isinf(reference):
        return 0.0 if value == reference else math.inf
    if reference == 0:
        return math.inf if value != 0 else 0.0
    return abs(value - reference) / abs(reference)


def _or_divergent(fn, *args):
    try:
        return fn(*args)
    except DivergenceError:
        return math.inf


def branch_q(model: SurvivalModel, q: Optional[float]) -> float:
    """Order of the q-norm column when not given: 1 on the Weibull branch,
    1 - 1/a on the Frechet branch (1 when a <= 2)."""
    if q is not None:
        return q
    tail = model.tail
    if isinstance(tail, Frechet) and tail.a > 2:
        return 1.0 - 1.0 / tail.a
    return 1.0


def target_solution(model: SurvivalModel) -> Optional[MaxEntSolution]:
    tail = model.tail
    if isinstance(tail, Frechet):
        return maxent_target_frechet(tail.a) if tail.a > 2 else None
    return maxent_target_gumbel(tail.xi)


def _target_pairs(report: FunctionalReport, tail) -> dict:
    t = report.target
    if t is None:
        return {}
    pairs = {"onenorm": t.theta, "moment": t.mu}
    if isinstance(tail, Frechet):
        if math.isclose(report.q, report.target_solution.q, rel_tol=0, abs_tol=1e-12):
            pairs["qnorm_q"] = t.entropy_stat
    else:
        pairs["shannon"] = t.entropy_stat
        if report.q == 1:
            pairs["qnorm_q"] = t.theta
    return pairs


def sweep_row(config: SweepConfig, u: float) -> FunctionalReport:
    model, tol = config.model, config.rel_tol
    tail = model.tail
    u = float(u)
    spec = ExcessSpec(model, u, natural_normalization(model) if config.normalized else "none")
    curve = excess_survival(spec)
    q = branch_q(model, config.q)
    # max-entropy targets describe the normalized excess only
    sol = target_solution(model) if config.normalized else None

    if isinstance(tail, Frechet):
        predicted = predict_frechet(tail.a, q, 1.0 if config.normalized else u)
    elif config.normalized:
        predicted = predict_weibull_normalized(tail.xi)
    else:
        predicted = predict_weibull(tail.xi, float(tail.l(np.asarray(u))), u)

    computed = Functionals()
    if "functionals" in config.metrics:
        computed.onenorm = _or_divergent(lambda: integrate(curve, tol).value)
        computed.qnorm_q = computed.onenorm if q == 1 else _or_divergent(q_norm_q, curve, q, tol)
        computed.moment = _or_divergent(first_moment, curve, tol)
        computed.shannon = _or_divergent(shannon_entropy, curve, tol)

    report = FunctionalReport(
        u=u, normalization=spec.normalization, scale=spec.scale, q=q,
        computed=computed, predicted=predicted,
        target_solution=sol, target=forward_constraints(sol) if sol else None,
        err_predicted={}, err_target={},
    )
    if "functionals" in config.metrics:
        refs = {f: getattr(predicted, f) for f in FIELDS}
        if refs["qnorm_q"] is None and q == 1:
            refs["qnorm_q"] = predicted.onenorm
        report.err_predicted = {
            f: relative_error(getattr(computed, f), ref)
            for f, ref in refs.items() if ref is not None
        }
        report.err_target = {
            f: relative_error(getattr(computed, f), ref)
            for f, ref in _target_pairs(report, tail).items()
        }

    if sol is not None and "entropy_gap" in config.metrics:
        report.entropy_gap = entropy_gap(curve, sol, tol)
    if sol is not None and "bregman" in config.metrics and sol.q < 1:
        report.bregman = bregman_divergence(curve, sol, rel_tol=tol)
    if "sup_norm" in config.metrics:
        if config.normalized:
            gpd = target_gpd(tail)
            report.sup_norm = sup_distance(
                curve, Curve(lambda z: gpd_survival(gpd, z)), config.grid)
        if model.name == "gpd":
            raw = excess_survival(ExcessSpec(model, u))
            image = gpd_stability(GpdParams(*model.params), u)
            report.stability_sup = sup_distance(
                raw, Curve(lambda z: gpd_survival(image, z)), config.grid)
    return report


def entropy_gap(curve: Curve, sol: MaxEntSolution, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """H_q(G*) - H_q(curve), Shannon at q = 1."""
    target = forward_constraints(sol)
    if sol.q == 1:
        return target.entropy_stat - shannon_entropy(curve, rel_tol)
    return (target.entropy_stat - q_norm_q(curve, sol.q, rel_tol)) / (1.0 - sol.q)


def run_sweep(config: SweepConfig) -> list[FunctionalReport]:
    """One report per threshold, in u order (rows may be computed concurrently)."""
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            return list(pool.map(lambda u: sweep_row(config, u), config.u_grid))
    return [sweep_row(config, u) for u in config.u_grid]


@dataclass(frozen=True)
class MonteCarloReport:
    model: str
    u: float
    n: int
    seed: int
    exceedances: int
    scale: float
    onenorm: float
    onenorm_se: float
    moment: float
    moment_se: float
    rng: str = RNG_NAME


def monte_carlo_check(model: SurvivalModel, u: float, n: int, seed: int,
                      min_exceedances: int = 50) -> MonteCarloReport:
    """Empirical 1-norm and first moment of the normalized excess survival.

    The empirical survival of the normalized excesses y_1..y_m is a step
    function, so its integrals are exact: the 1-norm is mean(y) and the first
    moment is mean(y**2) / 2.  Standard errors are the usual sd / sqrt(m).
    """
    if n < 1000:
        raise DomainError(f"need at least 1000 draws, got n={n}")
    spec = ExcessSpec(model, float(u), natural_normalization(model))
    gen = np.random.Generator(np.random.Philox(seed))
    p = 1.0 - gen.random(n)  # (0, 1]
    x = np.asarray(model.quantile(p), dtype=float)
    y = (x[x > u] - u) / spec.scale
    m = y.size
    if m < min_exceedances:
        raise InsufficientDataError(f"only {m} exceedances over u={u} (need {min_exceedances})")
    half_sq = 0.5 * y * y
    return MonteCarloReport(
        model=model.spec, u=float(u), n=n, seed=seed, exceedances=m, scale=spec.scale,
        onenorm=float(y.mean()), onenorm_se=float(y.std(ddof=1) / math.sqrt(m)),
        moment=float(half_sq.mean()), moment_se=float(half_sq.std(ddof=1) / math.sqrt(m)),
    )
