import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pickands.errors import DivergenceError, DomainError
from pickands.excess import ExcessSpec, excess_survival
from pickands.functionals import (
    Curve,
    first_moment,
    integrate,
    q_norm_q,
    shannon_entropy,
    sup_distance,
    tsallis_entropy,
)
from pickands.survival_models import make_model

EXP = Curve(lambda z: np.exp(-z))
POW4 = Curve(lambda z: (1.0 + z) ** -4)
BOX = Curve(lambda z: np.where(z <= 1.0, 1.0, 0.0))


class TestIntegrate:
    def test_examples(self):
        assert integrate(EXP).value == pytest.approx(1.0, rel=1e-9)
        assert integrate(Curve(lambda z: (1 + z) ** -3)).value == pytest.approx(0.5, rel=1e-9)
        with pytest.raises(DivergenceError):
            integrate(Curve(lambda z: 1 / (1 + z)))

    def test_negative_curve_rejected(self):
        with pytest.raises(DomainError):
            integrate(Curve(lambda z: np.exp(-z) - 0.5))

    @pytest.mark.parametrize("tol", [0.0, 1e-13, 0.1])
    def test_tolerance_range(self, tol):
        with pytest.raises(DomainError):
            integrate(EXP, tol)


class TestQNorm:
    def test_examples(self, oracle):
        assert q_norm_q(EXP, 2.0) == pytest.approx(0.5, rel=1e-9)
        assert q_norm_q(POW4, 0.75) == pytest.approx(0.5, rel=1e-9)
        assert oracle(lambda z: (1 + z) ** -3) == pytest.approx(0.5, rel=1e-11)
        assert q_norm_q(EXP, 1.0) == pytest.approx(1.0, rel=1e-9)

    def test_moment_examples(self, oracle):
        assert first_moment(EXP) == pytest.approx(1.0, rel=1e-9)
        assert oracle(lambda z: z * (1 + z) ** -4) == pytest.approx(1 / 6, rel=1e-11)
        assert first_moment(POW4) == pytest.approx(1 / 6, rel=1e-9)

    def test_cauchy_excess_moment_diverges(self):
        curve = excess_survival(ExcessSpec(make_model("half_cauchy"), 10.0, "frechet_scale"))
        with pytest.raises(DivergenceError):
            first_moment(curve)

    @settings(max_examples=25, deadline=None)
    @given(q=st.floats(0.3, 3.0), lam=st.floats(0.1, 10.0))
    def test_exponential_family(self, q, lam):
        # int e^{-q lam z} = 1 / (q lam)
        assert q_norm_q(Curve(lambda z: np.exp(-lam * z)), q) == pytest.approx(1 / (q * lam), rel=1e-8)

    @pytest.mark.parametrize("c", [2.0, 10.0])
    @pytest.mark.parametrize("curve", [EXP, POW4])
    def test_compression(self, c, curve):
        # z -> G(cz) has q-norm^q equal to that of G divided by c
        squeezed = Curve(lambda z: curve(c * z))
        assert q_norm_q(squeezed, 0.75) == pytest.approx(q_norm_q(curve, 0.75) / c, rel=1e-8)

    @settings(max_examples=25, deadline=None)
    @given(c=st.floats(0.05, 20.0), q=st.floats(0.6, 2.0))
    def test_scaling_law(self, c, q):
        # int G(z / c)^q dz = c int G^q
        base = q_norm_q(POW4, q)
        scaled = q_norm_q(Curve(lambda z: (1.0 + z / c) ** -4), q)
        assert scaled == pytest.approx(c * base, rel=1e-8)


class TestEntropies:
    def test_tsallis_examples(self, oracle):
        assert tsallis_entropy(BOX, 0.5) == pytest.approx(0.0, abs=1e-9)
        assert tsallis_entropy(BOX, 2.0) == pytest.approx(0.0, abs=1e-9)
        assert oracle(lambda z: math.exp(-z / 2)) == pytest.approx(2.0, rel=1e-11)
        assert tsallis_entropy(EXP, 0.5) == pytest.approx(2.0, rel=1e-9)
        assert tsallis_entropy(POW4, 0.75) == pytest.approx(-2.0, rel=1e-9)

    @pytest.mark.parametrize("q", [0.3, 0.75, 1.5, 3.0])
    def test_entropy_norm_identity(self, q):
        assert tsallis_entropy(POW4, q) == pytest.approx((q_norm_q(POW4, q) - 1) / (1 - q), rel=1e-14)

    def test_tsallis_rejects(self):
        for q in (1.0, -0.5, 0.0):
            with pytest.raises(DomainError):
                tsallis_entropy(EXP, q)

    def test_shannon_examples(self, oracle):
        assert shannon_entropy(EXP) == pytest.approx(1.0, rel=1e-9)
        assert shannon_entropy(Curve(lambda z: np.exp(-2 * z))) == pytest.approx(0.5, rel=1e-9)
        # -int G log G for G = 2 e^{-2z}: oracle value 1 - ln 2
        ref = oracle(lambda z: -2 * math.exp(-2 * z) * (math.log(2) - 2 * z))
        assert ref == pytest.approx(1 - math.log(2), rel=1e-11)
        assert shannon_entropy(Curve(lambda z: 2 * np.exp(-2 * z))) == pytest.approx(ref, rel=1e-9)

    def test_zero_log_zero(self):
        assert shannon_entropy(BOX) == pytest.approx(0.0, abs=1e-12)

    def test_tsallis_tends_to_shannon(self):
        h1 = shannon_entropy(EXP)
        diffs = [abs(tsallis_entropy(EXP, q) - h1) for q in (0.9, 0.99, 0.999)]
        assert diffs[0] > diffs[1] > diffs[2]
        assert diffs[2] < 1e-2

    @settings(max_examples=20, deadline=None)
    @given(lam=st.floats(0.2, 5.0), amp=st.floats(0.2, 3.0))
    def test_shannon_exponential_family(self, lam, amp):
        # -int A e^{-lam z} log(A e^{-lam z}) = (A / lam)(1 - log A)
        curve = Curve(lambda z: amp * np.exp(-lam * z))
        assert shannon_entropy(curve) == pytest.approx(amp / lam * (1 - math.log(amp)),
                                                       rel=1e-8, abs=1e-10)


class TestSupDistance:
    def test_examples(self):
        assert sup_distance(EXP, EXP, np.linspace(0, 10, 11)) == 0.0
        assert sup_distance(EXP, Curve(lambda z: np.exp(-2 * z)), [0.0]) == 0.0
        assert sup_distance(EXP, Curve(lambda z: 0 * z), [0.0, 1.0]) == 1.0

    def test_bad_grids(self):
        with pytest.raises(DomainError):
            sup_distance(EXP, EXP, [])
        with pytest.raises(DomainError):
            sup_distance(EXP, EXP, [-1.0, 0.0])

    def test_symmetry(self, rng):
        grid = rng.uniform(0, 20, 50)
        a, b = EXP, POW4
        assert sup_distance(a, b, grid) == sup_distance(b, a, grid)
