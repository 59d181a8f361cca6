"""Shared oracles.

The oracles below deliberately go through scipy rather than the package's own
quadrature, so that agreement is evidence and not a tautology.
"""
import math

import numpy as np
import pytest
from scipy import integrate


def quad_oracle(fn, *, breakpoints=(1.0, 10.0, 100.0), epsrel=1e-12):
    """scipy.integrate.quad over [0, inf), split at a few breakpoints."""
    edges = [0.0, *breakpoints]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate.quad(lambda z: float(fn(z)), lo, hi, epsabs=0, epsrel=epsrel, limit=200)[0]
    total += integrate.quad(lambda z: float(fn(z)), edges[-1], math.inf, epsabs=0, epsrel=epsrel,
                            limit=200)[0]
    return total


@pytest.fixture
def oracle():
    return quad_oracle


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
