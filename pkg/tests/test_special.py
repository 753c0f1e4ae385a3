import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracineq.errors import DomainError
from fracineq.special import (BetaArgs, beta_complete, beta_incomplete, gamma,
                              kernel_abs_integral, kernel_beta_bracket, kernel_holder_integral)

shape = st.floats(min_value=0.05, max_value=5.0)
unit = st.floats(min_value=0.0, max_value=1.0)


def brute(f, lo, hi, points=None):
    """Tanh-sinh quadrature at 30 digits; handles the endpoint singularities."""
    with mpmath.workdps(30):
        nodes = [lo, *(points or []), hi]
        return float(mpmath.quad(lambda t: f(mpmath.mpf(t)), nodes))


def test_gamma_values():
    assert gamma(1) == 1.0
    assert gamma(5) == 24.0
    # sqrt(pi)/2, confirmed by quadrature of exp(-u) u**0.5 on [0, inf)
    assert gamma(1.5) == pytest.approx(0.886226925452758013649, rel=1e-14)
    assert brute(lambda u: mpmath.exp(-u) * u ** 0.5, 0, mpmath.inf) == pytest.approx(gamma(1.5), rel=1e-10)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.5])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma(200.0)


@given(st.floats(min_value=1e-3, max_value=10.0))
def test_gamma_recurrence(x):
    assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


def test_beta_complete_values():
    assert beta_complete(1, 1) == 1.0
    assert beta_complete(2, 3) == pytest.approx(1 / 12, rel=1e-15)
    assert beta_complete(1.5, 2.5) == pytest.approx(math.pi / 16, rel=1e-14)


def test_beta_incomplete_examples():
    assert beta_incomplete(0.5, 1, 1) == pytest.approx(0.5, abs=1e-15)
    assert beta_incomplete(BetaArgs(0.5, 1, 1)) == pytest.approx(0.5, abs=1e-15)
    expected = brute(lambda t: t ** 0.5 * (1 - t) ** 0.5, 0, 0.5)
    assert beta_incomplete(0.5, 1.5, 1.5) == pytest.approx(expected, abs=1e-13)
    assert beta_incomplete(0.5, 1.5, 1.5) == pytest.approx(0.196349540849362077, abs=1e-15)


@pytest.mark.parametrize("bad", [(-0.1, 1, 1), (1.1, 1, 1), (0.5, 0, 1), (0.5, 1, -2)])
def test_beta_incomplete_domain(bad):
    with pytest.raises(DomainError):
        beta_incomplete(*bad)
    with pytest.raises(DomainError):
        BetaArgs(*bad)


@given(shape, shape)
def test_full_range(p1, p2):
    assert beta_incomplete(1.0, p1, p2) == pytest.approx(beta_complete(p1, p2), abs=1e-12)


@given(st.floats(min_value=0.5, max_value=1.0), shape, shape)
def test_symmetry(x, p1, p2):
    # 1 - x is exact for x in [0.5, 1]; the pair still covers both halves of [0, 1]
    total = beta_incomplete(x, p1, p2) + beta_incomplete(1.0 - x, p2, p1)
    assert total == pytest.approx(beta_complete(p1, p2), abs=1e-12, rel=1e-13)


@given(shape, shape)
@settings(max_examples=50)
def test_monotone_in_x(p1, p2):
    xs = np.linspace(0, 1, 101)
    vals = beta_incomplete(xs, p1, p2)
    assert np.all(np.diff(vals) >= -1e-14)


@pytest.mark.parametrize("p1,p2", [(0.3, 0.3), (1.5, 2.5), (4.0, 0.2), (0.7, 5.0)])
@pytest.mark.parametrize("x", [0.05, 0.4, 0.5, 0.8, 0.99])
def test_incomplete_beta_vs_hypergeometric(x, p1, p2):
    # mpmath evaluates through 2F1, independent of the continued fraction
    with mpmath.workdps(30):
        expected = float(mpmath.betainc(p1, p2, 0, x))
    assert beta_incomplete(x, p1, p2) == pytest.approx(expected, abs=1e-11)


def test_kernel_abs_values():
    assert kernel_abs_integral(1) == 0.5
    assert kernel_abs_integral(0.5) == pytest.approx(4 / 3 * (1 - 1 / math.sqrt(2)), rel=1e-15)
    assert kernel_abs_integral(0.5) == pytest.approx(0.390524291751269967, abs=1e-15)
    with pytest.raises(DomainError):
        kernel_abs_integral(0)


def test_kernel_holder_values():
    assert kernel_holder_integral(1, 2) == pytest.approx(1 / 3)
    assert kernel_holder_integral(0, 7.5) == 1.0
    assert kernel_holder_integral(0.5, 3) == pytest.approx(0.4)
    for bad in [(1.5, 2), (-0.1, 2), (0.5, 1.0)]:
        with pytest.raises(DomainError):
            kernel_holder_integral(*bad)


ALPHAS = [0.1, 0.25, 0.5, 0.75, 1.0]


@pytest.mark.parametrize("alpha", ALPHAS)
def test_kernel_abs_vs_brute(alpha):
    expected = brute(lambda t: abs((1 - t) ** alpha - t ** alpha), 0, 1, points=[0.5])
    assert kernel_abs_integral(alpha) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_kernel_holder_vs_brute(alpha, p):
    expected = brute(lambda t: abs(1 - 2 * t) ** (alpha * p), 0, 1, points=[0.5])
    assert kernel_holder_integral(alpha, p) == pytest.approx(expected, abs=1e-10)
    # and it dominates the true kernel integral it stands in for
    true = brute(lambda t: abs((1 - t) ** alpha - t ** alpha) ** p, 0, 1, points=[0.5])
    assert true <= kernel_holder_integral(alpha, p) + 1e-12


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
def test_beta_bracket_is_weighted_kernel_moment(alpha, s):
    expected = brute(lambda t: abs((1 - t) ** alpha - t ** alpha) * t ** s, 0, 1, points=[0.5])
    assert kernel_beta_bracket(alpha, s) == pytest.approx(expected, abs=1e-11)
