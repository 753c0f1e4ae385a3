import numpy as np
import pytest

from fracineq.errors import DomainError, EvaluationError
from fracineq.funclib import (CHECK_MARGIN, CONVEX, S_CONCAVE, S_CONVEX_SECOND, builtin_suite,
                              check_s_concave, check_s_convex_first, check_s_convex_second,
                              defect, derivative_power, from_expression, get_function,
                              verify_declared)

SUITE = builtin_suite()
IDS = [fs.id for fs in SUITE]


def dense_min_defect(g, lo, hi, s, sense, n=81):
    """Unscaled defect minimised over an n**3 lattice with plain numpy."""
    x = np.linspace(lo, hi, n)
    t = np.linspace(0, 1, n)
    X, Y, T = np.meshgrid(x, x, t, indexing="ij")
    if sense == "first":
        a, b, c1, c2 = T ** (1 / s), (1 - T) ** (1 / s), T, 1 - T
    else:
        a, b, c1, c2 = T, 1 - T, T ** s, (1 - T) ** s
    m = a * X + b * Y
    ok = (m >= lo) & (m <= hi)
    d = c1 * g(X) + c2 * g(Y) - g(np.clip(m, lo, hi))
    if sense == "concave":
        d = -d
    return d[ok].min()


def test_second_sense_examples():
    assert check_s_convex_second(lambda x: x, (0, 1), 1.0).holds
    assert check_s_convex_second(np.sqrt, (0, 1), 0.5).holds
    assert dense_min_defect(np.sqrt, 0, 1, 0.5, "second") >= -1e-12
    v = check_s_convex_second(lambda x: -x ** 2, (0, 1), 1.0)
    assert not v.holds and v.worst_violation < 0


def test_first_sense_examples():
    for fs in SUITE:
        if fs.declared_class == CONVEX:
            assert check_s_convex_first(fs.f, fs.domain, 1.0).holds, fs.id
    assert check_s_convex_first(np.sqrt, (0, 1), 0.5).holds
    assert dense_min_defect(np.sqrt, 0, 1, 0.5, "first") >= -1e-12
    v = check_s_convex_first(lambda x: -x, (0, 1), 0.5)
    assert not v.holds
    assert dense_min_defect(lambda x: -x, 0, 1, 0.5, "first") < -0.1


def test_concave_examples():
    assert check_s_concave(lambda x: 0 * x, (0, 1), 0.3).holds
    assert check_s_concave(lambda x: 0 * x - 2.0, (0, 1), 0.3).holds
    assert check_s_concave(lambda x: -np.sqrt(x), (0, 1), 0.5).holds
    assert not check_s_concave(lambda x: x ** 2, (0, 1), 1.0).holds


def test_positive_constant_is_s_concave_only_at_s_one():
    # c(1 - alpha**s - beta**s) < 0 at alpha = 1/2 whenever c > 0 and s < 1
    one = lambda x: 0 * x + 1.0
    assert check_s_concave(one, (0, 1), 1.0).holds
    v = check_s_concave(one, (0, 1), 0.5)
    assert not v.holds
    assert v.witness[2] == pytest.approx(0.5)


def test_checker_arguments():
    with pytest.raises(DomainError):
        check_s_convex_second(np.exp, (0, 1), 1.5)
    with pytest.raises(DomainError):
        check_s_convex_second(np.exp, (0, 1), 1.0, samples=10)
    with pytest.raises(DomainError):
        check_s_convex_second(np.exp, (-1, 1), 1.0)
    with pytest.raises(EvaluationError):
        check_s_convex_second(lambda x: 1 / x, (0, 1), 1.0)


def test_checker_is_deterministic():
    g = lambda x: np.abs(np.sin(5 * x))
    assert check_s_convex_second(g, (0, 2), 0.7, seed=4) == check_s_convex_second(g, (0, 2), 0.7, seed=4)


@pytest.mark.parametrize("g,dom,s,check,sense", [
    (lambda x: -x ** 2, (0, 1), 1.0, check_s_convex_second, "second"),
    (lambda x: np.abs(np.sin(5 * x)), (0, 2), 0.7, check_s_convex_second, "second"),
    (lambda x: -x, (0, 1), 0.5, check_s_convex_first, "first"),
    (lambda x: x ** 2, (0, 1), 1.0, check_s_concave, "concave"),
    (lambda x: 1 + 0 * x, (0, 3), 0.4, check_s_concave, "concave"),
])
def test_failure_witness_recomputes(g, dom, s, check, sense):
    v = check(g, dom, s)
    assert not v.holds
    assert defect(g, *v.witness, s, sense) < -CHECK_MARGIN
    assert defect(g, *v.witness, s, sense) == pytest.approx(v.worst_violation, rel=1e-12)


def test_suite_contents():
    assert get_function("x").declared_class == CONVEX
    fs = get_function("x1.5")
    assert fs.derivative_class == S_CONVEX_SECOND and fs.derivative_s == 0.5
    assert check_s_convex_second(derivative_power(fs, 1.0), fs.domain, 0.5).holds
    for s in (0.25, 0.5, 0.75, 1.0):
        assert get_function(f"pow_s{s:g}").s_value == s
    assert any(f.declared_class == S_CONCAVE for f in SUITE)
    assert any(f.derivative_class == S_CONCAVE and f.derivative_s == 1.0 and f.monomial is None for f in SUITE)
    with pytest.raises(DomainError):
        get_function("nope")


@pytest.mark.parametrize("fid", IDS)
def test_member_passes_declared_checker(fid):
    assert verify_declared(get_function(fid), samples=512) == []


@pytest.mark.parametrize("fid", IDS)
def test_senses_agree_at_s_one(fid):
    fs = get_function(fid)
    assert check_s_convex_first(fs.f, fs.domain, 1.0).holds == check_s_convex_second(fs.f, fs.domain, 1.0).holds


NONNEG_CONVEX = [f.id for f in SUITE
                 if f.declared_class == CONVEX and np.min(f.f(np.linspace(0, 1, 1001))) >= 0]


@pytest.mark.parametrize("fid", NONNEG_CONVEX)
@pytest.mark.parametrize("s", [0.1, 0.25, 0.5, 0.75, 1.0])
def test_nonnegative_convex_is_s_convex(fid, s):
    fs = get_function(fid)
    assert check_s_convex_second(fs.f, (0.0, 1.0), s).holds


@pytest.mark.parametrize("fid", IDS)
def test_derivative_matches_central_differences(fid):
    fs = get_function(fid)
    lo, hi = fs.domain
    x = np.linspace(lo, hi, 52)[1:-1]
    h = 1e-6 * np.maximum(1.0, x)
    fd = (fs.f(x + h) - fs.f(x - h)) / (2 * h)
    np.testing.assert_allclose(fs.df(x), fd, rtol=1e-6, atol=1e-8)


def test_from_expression_and_scaling():
    fs = from_expression("cubic", "x**3 + 2*x", (0, 2), CONVEX)
    assert fs.df(np.float64(1.0)) == pytest.approx(5.0)
    assert verify_declared(fs) == []
    scaled = get_function("x2").scaled(3.0)
    assert scaled.f(2.0) == pytest.approx(12.0) and scaled.df(2.0) == pytest.approx(12.0)
    with pytest.raises(DomainError):
        from_expression("neg", "x", (-1, 1))
