"""Excess (peaks-over-threshold) distributions, their GPD limits, and the
maximum-entropy curves those limits coincide with."""
from .errors import (
    DivergenceError,
    DomainError,
    InsufficientDataError,
    NonConvergenceError,
    QuadratureError,
)
from .excess import (
    AsymptoticPrediction,
    ExcessSpec,
    excess_survival,
    gpd_stability,
    maxent_target_frechet,
    maxent_target_gumbel,
    predict_frechet,
    predict_frechet_normalized,
    predict_weibull,
    predict_weibull_normalized,
)
from .functionals import (
    Curve,
    first_moment,
    integrate,
    q_norm_q,
    shannon_entropy,
    sup_distance,
    tsallis_entropy,
)
from .maxent import (
    ConstraintValues,
    MaxEntSolution,
    bregman_divergence,
    evaluate_solution,
    forward_constraints,
    gpd_from_maxent,
    inverse_solve,
)
from .survival_models import (
    GpdParams,
    SurvivalModel,
    gpd_density,
    gpd_quantile,
    gpd_survival,
    make_model,
    parse_model_spec,
)

__version__ = "0.1.0"
