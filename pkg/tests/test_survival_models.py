import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from pickands.errors import DomainError
from pickands.survival_models import (
    MODEL_NAMES,
    SMALL_GAMMA,
    Frechet,
    GpdParams,
    Weibull,
    gpd_density,
    gpd_quantile,
    gpd_survival,
    make_model,
    parse_model_spec,
)

CATALOG = [
    ("gpd", (0.5, 2.0)), ("gpd", (0.0, 1.5)), ("gpd", (3.0, 1.0)),
    ("pareto", (3.0,)), ("pareto", (1.5,)), ("lomax", (2.0,)),
    ("half_cauchy", ()), ("half_gaussian", ()), ("gamma", (3.0, 2.0)), ("gamma", (0.5, 1.0)),
]


class TestGpd:
    @pytest.mark.parametrize("gamma, sigma, x, expected", [
        (1.0, 1.0, 1.0, 0.5), (0.0, 1.0, 1.0, 0.3678794412), (0.5, 1.0, 6.0, 0.0625)])
    def test_survival_examples(self, gamma, sigma, x, expected):
        assert gpd_survival(GpdParams(gamma, sigma), x) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("gamma, sigma, x, expected", [
        (1.0, 1.0, 0.0, 1.0), (0.0, 2.0, 2.0, 0.1839397206), (1.0, 1.0, 1.0, 0.25)])
    def test_density_examples(self, gamma, sigma, x, expected):
        assert gpd_density(GpdParams(gamma, sigma), x) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("gamma, sigma, p, expected", [
        (1.0, 1.0, 0.5, 1.0), (0.0, 1.0, math.exp(-1), 1.0), (0.5, 1.0, 0.0625, 6.0)])
    def test_quantile_examples(self, gamma, sigma, p, expected):
        assert gpd_quantile(GpdParams(gamma, sigma), p) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("gamma", [0.0, 0.3, 1.0, 4.0])
    def test_matches_scipy_genpareto(self, gamma):
        x = np.linspace(0, 20, 41)
        p = GpdParams(gamma, 1.7)
        np.testing.assert_allclose(gpd_survival(p, x), stats.genpareto.sf(x, gamma, scale=1.7),
                                   rtol=1e-12)
        np.testing.assert_allclose(gpd_density(p, x), stats.genpareto.pdf(x, gamma, scale=1.7),
                                   rtol=1e-12)

    @pytest.mark.parametrize("gamma", [0.5 * SMALL_GAMMA, 0.999 * SMALL_GAMMA, SMALL_GAMMA,
                                       2.0 * SMALL_GAMMA])
    def test_small_gamma_branch_is_continuous(self, gamma):
        x = np.linspace(0, 10, 11)
        with mpmath.workdps(50):
            g = mpmath.mpf(gamma)
            exact = [float(mpmath.power(1 + g * mpmath.mpf(xi), -1 / g)) for xi in x]
        np.testing.assert_allclose(gpd_survival(GpdParams(gamma, 1.0), x), exact, rtol=1e-12)
        np.testing.assert_allclose(gpd_survival(GpdParams(1e-12, 1.0), x), np.exp(-x), rtol=1e-10)

    @pytest.mark.parametrize("gamma, sigma", [(-0.1, 1.0), (1.0, 0.0), (1.0, -2.0), (math.nan, 1.0)])
    def test_invalid_parameters(self, gamma, sigma):
        with pytest.raises(DomainError):
            GpdParams(gamma, sigma)

    def test_invalid_arguments(self):
        p = GpdParams(1.0, 1.0)
        with pytest.raises(DomainError):
            gpd_survival(p, -1.0)
        for bad in (0.0, 1.5, -0.1):
            with pytest.raises(DomainError):
                gpd_quantile(p, bad)

    @settings(max_examples=80, deadline=None)
    @given(gamma=st.floats(0.0, 20.0), sigma=st.floats(0.01, 100.0), p=st.floats(1e-12, 1.0))
    def test_quantile_round_trip(self, gamma, sigma, p):
        params = GpdParams(gamma, sigma)
        x = gpd_quantile(params, p)
        assert x >= 0
        assert gpd_survival(params, x) == pytest.approx(p, rel=1e-9)


class TestCatalog:
    @pytest.mark.parametrize("name, params", CATALOG)
    def test_survival_invariants(self, name, params):
        m = make_model(name, params)
        assert m.survival(0.0) == pytest.approx(1.0, abs=1e-15)
        x = np.geomspace(1e-6, 1e6, 1000)
        s = m.survival(x)
        assert np.all((s >= 0) & (s <= 1))
        assert np.all(np.diff(s) <= 1e-15)
        assert m.survival(1e12) < 1e-3

    @pytest.mark.parametrize("name, params", CATALOG)
    def test_quantile_round_trip(self, name, params):
        m = make_model(name, params)
        p = np.array([0.999, 0.9, 0.5, 0.1, 1e-3, 1e-8])
        x = m.quantile(p)
        np.testing.assert_allclose(m.survival(x), p, rtol=1e-9)

    @pytest.mark.parametrize("name, params", [("half_gaussian", ()), ("gamma", (3.0, 2.0)),
                                              ("gamma", (0.3, 1.0))])
    def test_quantile_extreme_levels(self, name, params):
        m = make_model(name, params)
        p = np.array([1e-20, 1e-300, 5e-324])
        np.testing.assert_allclose(m.log_survival(m.quantile(p)), np.log(p), rtol=1e-14)
        assert m.quantile(1.0) == 0.0

    @pytest.mark.parametrize("name, params", CATALOG)
    def test_density_is_minus_derivative(self, name, params):
        m = make_model(name, params)
        x = np.array([1.3, 2.7, 4.1, 8.0])
        h = 1e-5 * x
        fd = -(m.survival(x + h) - m.survival(x - h)) / (2 * h)
        np.testing.assert_allclose(m.density(x), fd, rtol=1e-6)

    def test_examples(self):
        assert make_model("half_cauchy").survival(1.0) == pytest.approx(0.5, rel=1e-14)
        assert make_model("half_gaussian").survival(0.0) == 1.0
        assert make_model("gamma", (1, 2)).survival(1.0) == pytest.approx(0.1353352832, abs=1e-10)

    def test_against_scipy(self):
        x = np.array([0.5, 2.0, 7.0, 25.0])
        np.testing.assert_allclose(make_model("half_cauchy").survival(x), stats.halfcauchy.sf(x),
                                   rtol=1e-12)
        np.testing.assert_allclose(make_model("half_gaussian").survival(x), stats.halfnorm.sf(x),
                                   rtol=1e-12)
        np.testing.assert_allclose(make_model("gamma", (3, 2)).survival(x),
                                   stats.gamma.sf(x, 3, scale=0.5), rtol=1e-12)
        np.testing.assert_allclose(make_model("lomax", (2.5,)).survival(x), stats.lomax.sf(x, 2.5),
                                   rtol=1e-12)

    def test_deep_tail_log_survival(self):
        # S underflows but log S stays accurate
        ref = mpmath.log(mpmath.erfc(60 / mpmath.sqrt(2)))
        assert make_model("half_gaussian").log_survival(60.0) == pytest.approx(float(ref), rel=1e-12)
        ref = mpmath.log(mpmath.gammainc(3, 1000, mpmath.inf, regularized=True))
        assert make_model("gamma", (3, 2)).log_survival(500.0) == pytest.approx(float(ref), rel=1e-12)

    def test_tail_classification(self):
        assert isinstance(make_model("pareto", (3,)).tail, Frechet)
        assert make_model("pareto", (3,)).tail.a == 3
        assert make_model("half_cauchy").tail.a == 1
        assert make_model("half_cauchy").tail.l_limit == pytest.approx(2 / math.pi)
        assert make_model("gpd", (0.25, 1)).tail.a == 4
        hg = make_model("half_gaussian").tail
        assert isinstance(hg, Weibull) and hg.xi == 2 and hg.l_limit == 0.5
        ga = make_model("gamma", (3, 2)).tail
        assert isinstance(ga, Weibull) and ga.xi == 1 and ga.l_limit == 2
        assert isinstance(make_model("gpd", (0, 2)).tail, Weibull)

    @pytest.mark.parametrize("name, params", [("pareto", (3.0,)), ("half_cauchy", ())])
    @pytest.mark.parametrize("c", [2.0, 10.0])
    def test_gnedenko_condition(self, name, params, c):
        m = make_model(name, params)
        z = 1e6
        ratio = m.survival(z) / m.survival(c * z)
        assert ratio == pytest.approx(c ** m.tail.a, rel=1e-2)

    def test_weibull_classification(self):
        hg = make_model("half_gaussian")
        assert -hg.log_survival(30.0) / 30.0 ** 2 == pytest.approx(0.5, rel=1e-2)
        for a, b in [(1.0, 2.0), (1.2, 1.0), (0.8, 3.0)]:
            ga = make_model("gamma", (a, b))
            assert -ga.log_survival(200.0) / 200.0 == pytest.approx(b, rel=1e-2)

    def test_weibull_classification_slow_gamma(self):
        # the (a - 1) log(bz) / (bz) correction is ~3% at z = 200 for gamma(3, 2)
        ga = make_model("gamma", (3.0, 2.0))
        errs = [abs(-ga.log_survival(z) / z / 2.0 - 1) for z in (200.0, 2000.0, 20000.0)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[1] < 1e-2

    @pytest.mark.parametrize("name, params", CATALOG)
    @pytest.mark.parametrize("t", [2.0, 10.0])
    def test_l_slowly_varying(self, name, params, t):
        l = make_model(name, params).tail.l
        errs = [abs(float(l(np.asarray(z * t)) / l(np.asarray(z))) - 1) for z in (1e2, 1e4, 1e6)]
        assert errs[-1] < 1e-2
        assert errs[-1] <= errs[0] + 1e-15

    @pytest.mark.parametrize("name, params", CATALOG)
    def test_l_reproduces_tail(self, name, params):
        m = make_model(name, params)
        tail, z = m.tail, np.array([50.0, 500.0])
        if isinstance(tail, Frechet):
            np.testing.assert_allclose(tail.l(z), z ** tail.a * m.survival(z), rtol=1e-10)
        else:
            z = np.array([50.0, 500.0, 5000.0])
            err = np.abs(-m.log_survival(z) / (z ** tail.xi * tail.l(z)) - 1)
            assert np.all(np.diff(err) < 0) or err.max() < 1e-12
            assert err[-1] < 1e-3

    def test_spec_parsing(self):
        m = parse_model_spec("gamma:3,2")
        assert (m.name, m.params) == ("gamma", (3.0, 2.0))
        assert m.spec == "gamma:3,2"
        assert parse_model_spec("half_cauchy").spec == "half_cauchy"
        assert set(MODEL_NAMES) >= {"gpd", "pareto", "half_cauchy", "half_gaussian", "gamma"}

    @pytest.mark.parametrize("spec", ["nope", "pareto", "pareto:1,2", "pareto:x", "pareto:-1",
                                      "gamma:0,1", "gpd:-0.5,1", "gpd:1,0", "pareto:inf"])
    def test_bad_specs(self, spec):
        with pytest.raises(DomainError):
            parse_model_spec(spec)

    def test_negative_arguments_rejected(self):
        m = make_model("pareto", (2,))
        with pytest.raises(DomainError):
            m.survival(-0.5)
        with pytest.raises(DomainError):
            m.quantile(0.0)
