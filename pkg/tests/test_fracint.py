import math

import numpy as np
import pytest
from scipy import integrate

from fracineq.errors import DomainError, EvaluationError, QuadratureError
from fracineq.fracint import FracOperand, classical_integral, power_rule, rl_left, rl_right
from fracineq.quadrature import QuadratureConfig, adaptive_gk
from fracineq.special import gamma


def brute_rl_left(f, lo, x, alpha):
    """QUADPACK QAWS: the algebraic weight (x - t)**(alpha - 1) is integrated exactly."""
    val, _ = integrate.quad(f, lo, x, weight="alg", wvar=(0.0, alpha - 1.0), epsabs=1e-14, epsrel=1e-14)
    return val / math.gamma(alpha)


def test_config_validation():
    QuadratureConfig()
    for kw in ({"abs_tol": 0.0}, {"rel_tol": 1.0}, {"max_subdivisions": 0}, {"method": "simpson"}):
        with pytest.raises(DomainError):
            QuadratureConfig(**kw)


def test_adaptive_gk_singular_endpoint():
    val, err = adaptive_gk(lambda x: x ** 0.25, 0.0, 1.0)
    assert val == pytest.approx(0.8, abs=1e-10)
    assert err <= 1e-10


def test_adaptive_gk_reports_nonconvergence():
    with pytest.raises(QuadratureError) as info:
        adaptive_gk(lambda x: np.sin(1.0 / x), 1e-6, 1.0, QuadratureConfig(max_subdivisions=4))
    assert info.value.subdivisions >= 4
    assert np.isfinite(info.value.estimate)


def test_adaptive_gk_rejects_nonfinite():
    with pytest.raises(EvaluationError):
        with np.errstate(divide="ignore", invalid="ignore"):
            adaptive_gk(lambda x: np.log(x - 0.5), 0.0, 1.0)


def test_rl_left_examples(cfg):
    one = lambda t: np.ones_like(t)
    assert rl_left(FracOperand(lambda t: t, 0, 1, 1.0), 1.0, cfg)[0] == pytest.approx(0.5, abs=1e-14)
    assert rl_left(FracOperand(one, 0, 1, 0.5), 1.0, cfg)[0] == pytest.approx(2 / math.sqrt(math.pi), abs=1e-13)
    val = rl_left(FracOperand(lambda t: t ** 2, 0, 1, 0.5), 1.0, cfg)[0]
    assert val == pytest.approx(gamma(3) / gamma(3.5), abs=1e-13)
    assert val == pytest.approx(brute_rl_left(lambda t: t ** 2, 0, 1, 0.5), abs=1e-12)


def test_rl_right_examples(cfg):
    assert rl_right(FracOperand(lambda t: t, 0, 1, 1.0), 0.0, cfg)[0] == pytest.approx(0.5, abs=1e-14)
    for alpha in (0.3, 0.5, 1.0):
        val = rl_right(FracOperand(lambda t: 2.5 + 0 * t, 0.5, 2.0, alpha), 0.75, cfg)[0]
        assert val == pytest.approx(2.5 * 1.25 ** alpha / gamma(alpha + 1), rel=1e-12)
    mirrored = rl_right(FracOperand(lambda t: 1 - t, 0, 1, 0.5), 0.0, cfg)[0]
    direct = rl_left(FracOperand(lambda t: t, 0, 1, 0.5), 1.0, cfg)[0]
    assert mirrored == pytest.approx(direct, abs=1e-13)


def test_operator_domains(cfg):
    op = FracOperand(np.exp, 0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        rl_left(op, 0.0, cfg)
    with pytest.raises(DomainError):
        rl_right(op, 1.0, cfg)
    with pytest.raises(DomainError):
        FracOperand(np.exp, 1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        FracOperand(np.exp, 0.0, 1.0, 0.0)


def test_operators_stay_inside_interval(cfg):
    seen = []

    def f(t):
        seen.append((t.min(), t.max()))
        return np.sqrt(t)  # nan below 0 would raise

    op = FracOperand(f, 0.0, 1.7, 0.3)
    rl_left(op, 1.7, cfg)
    rl_right(op, 0.0, cfg)
    assert min(lo for lo, _ in seen) >= 0.0
    assert max(hi for _, hi in seen) <= 1.7


def test_classical_integral(cfg):
    assert classical_integral(lambda t: t, 0, 1, cfg)[0] == pytest.approx(0.5, abs=1e-15)
    for s in (0.25, 0.5, 0.75):
        assert classical_integral(lambda t: t ** s, 0, 1, cfg)[0] == pytest.approx(1 / (s + 1), abs=1e-10)
    assert classical_integral(lambda t: 0 * t, 0, 1, cfg)[0] == 0.0


FUNCS = [np.exp, lambda t: t ** 3 - t, lambda t: np.sqrt(1 + t)]


@pytest.mark.parametrize("f", FUNCS)
@pytest.mark.parametrize("a,x", [(0.0, 1.0), (0.5, 2.0)])
def test_alpha_one_reduces_to_classical(f, a, x, cfg):
    lhs = rl_left(FracOperand(f, a, x, 1.0), x, cfg)[0]
    rhs = classical_integral(f, a, x, cfg)[0]
    assert abs(lhs - rhs) <= 2 * cfg.abs_tol


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.9])
def test_linearity(alpha, cfg):
    f, g = np.exp, lambda t: t ** 2
    c1, c2 = 1.5, -0.75
    combo = rl_left(FracOperand(lambda t: c1 * f(t) + c2 * g(t), 0, 1.5, alpha), 1.5, cfg)[0]
    parts = (c1 * rl_left(FracOperand(f, 0, 1.5, alpha), 1.5, cfg)[0]
             + c2 * rl_left(FracOperand(g, 0, 1.5, alpha), 1.5, cfg)[0])
    assert abs(combo - parts) <= 2 * cfg.abs_tol * max(1.0, abs(parts))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
def test_power_rule(n, alpha, cfg):
    x = 1.3
    val, err = rl_left(FracOperand(lambda t: t ** n, 0, x, alpha), x, cfg)
    assert abs(val - power_rule(n, alpha, x)) <= cfg.abs_tol
    assert err <= max(cfg.abs_tol, cfg.rel_tol * abs(val))


def test_power_rule_matches_brute_force():
    assert power_rule(2, 0.5, 1.0) == pytest.approx(brute_rl_left(lambda t: t ** 2, 0, 1.0, 0.5), rel=1e-13)
    assert power_rule(3, 0.25, 2.0) == pytest.approx(brute_rl_left(lambda t: t ** 3, 0, 2.0, 0.25), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 0.75, 1.0])
@pytest.mark.parametrize("f", FUNCS)
def test_methods_agree(alpha, f, cfg, direct_cfg):
    op = FracOperand(f, 0.2, 1.8, alpha)
    for fn, x in ((rl_left, 1.8), (rl_right, 0.2)):
        sub = fn(op, x, cfg)[0]
        direct = fn(op, x, direct_cfg)[0]
        assert abs(sub - direct) <= max(cfg.abs_tol, direct_cfg.abs_tol) * max(1.0, abs(sub))
