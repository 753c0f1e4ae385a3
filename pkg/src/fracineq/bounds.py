"""Evaluators for the fractional Hermite-Hadamard type bounds.

All fractional results share the left-hand side ("deviation")::

    | (f(a) + f(r))/2 - Gamma(alpha+1)/(2 (r-a)**alpha) * [J_{a+} f(r) + J_{r-} f(a)] |

computed here from the operators in :mod:`fracineq.fracint` over ``[a, r]``.
``b`` only bounds the domain (``a < r <= b``) and the hypothesis interval; no
formula integrates over ``[r, b]``.  The ``s`` parameter is accepted on all of
(0, 1] even where the classical statement uses the open interval.

Each ``rhs_*`` function is a closed-form right-hand side with no quadrature;
each ``bound_*`` function pairs it with the numerically computed left-hand
side in a :class:`BoundReport`.
"""
import math
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy import special as sps

from .errors import DomainError, HypothesisError
from .fracint import FracOperand, classical_integral, rl_left, rl_right
from .funclib import (check_s_concave, check_s_convex_second, derivative_power)
from .quadrature import DEFAULT_CONFIG
from .special import gamma, kernel_abs_integral, kernel_beta_bracket, kernel_holder_integral

FORMULA_ALLOWANCE = 1e-11

HOLDS = "holds"
HOLDS_WITHIN_BUDGET = "holds_within_budget"
VIOLATED = "violated"


@dataclass(frozen=True)
class FracParams:
    a: float
    r: float
    b: float = None
    alpha: float = 1.0
    s: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if self.b is None:
            object.__setattr__(self, "b", self.r)
        for name in ("a", "r", "b", "alpha", "s", "q"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.a >= 0.0:
            raise DomainError(f"a must be >= 0, got {self.a}")
        if not self.a < self.r <= self.b:
            raise DomainError(f"need a < r <= b, got a={self.a}, r={self.r}, b={self.b}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not 0.0 < self.s <= 1.0:
            raise DomainError(f"s must lie in (0, 1], got {self.s}")
        if not 1.0 <= self.q < math.inf:
            raise DomainError(f"q must satisfy 1 <= q < inf, got {self.q}")

    @property
    def p(self):
        """Conjugate exponent ``q/(q-1)``; infinite at ``q = 1``."""
        return math.inf if self.q == 1.0 else self.q / (self.q - 1.0)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    lhs: float
    rhs: float
    slack: float
    numeric_error_budget: float
    verdict: str
    params: FracParams
    function_id: str
    extras: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        d = asdict(self)
        d["params"] = self.params.to_dict()
        return d


def make_report(theorem_id, lhs, lhs_err, rhs, params, function_id, extras=None):
    slack = rhs - lhs
    budget = lhs_err + FORMULA_ALLOWANCE
    if slack >= 0.0:
        verdict = HOLDS
    elif slack >= -budget:
        verdict = HOLDS_WITHIN_BUDGET
    else:
        verdict = VIOLATED
    return BoundReport(theorem_id, float(lhs), float(rhs), float(slack), float(budget), verdict,
                       params, function_id, dict(extras or {}))


def _check_domain(fs, lo, hi):
    dlo, dhi = fs.domain
    if lo < dlo or hi > dhi:
        raise DomainError(f"[{lo}, {hi}] is not inside the domain {fs.domain} of {fs.id}")


def _d(fs, x):
    return abs(float(fs.df(np.float64(x))))


def _f(fs, x):
    return float(fs.f(np.float64(x)))


# --- hypotheses -----------------------------------------------------------

def hypothesis_check(theorem_id, fs, p, samples=256, seed=0):
    """Run the classifier that gates ``theorem_id`` on ``[a, b]``.

    Returns the :class:`~fracineq.funclib.ConvexityVerdict`; raises
    ``EvaluationError`` when the tested function is not finite somewhere.
    """
    dom = (p.a, p.b)
    if theorem_id in ("hadamard_s", "hadamard_s_left", "hadamard_s_right"):
        v = check_s_convex_second(fs.f, dom, p.s, samples, seed=seed)
        fmin = float(np.min(fs.f(np.linspace(p.a, p.b, 201))))
        if fmin < 0.0 and v.holds:
            v = type(v)(False, fmin, (float("nan"),) * 3, v.samples_checked)
        return v
    if theorem_id == "thm5":
        return check_s_convex_second(derivative_power(fs, 1.0), dom, p.s, samples, seed=seed)
    if theorem_id in ("thm6", "thm7", "eq2", "eq3", "eq5"):
        return check_s_convex_second(derivative_power(fs, p.q), dom, p.s, samples, seed=seed)
    if theorem_id == "eq4":
        return check_s_convex_second(derivative_power(fs, p.q), dom, 1.0, samples, seed=seed)
    if theorem_id in ("thm8", "eq7"):
        return check_s_concave(derivative_power(fs, p.q), dom, p.s, samples, seed=seed)
    raise DomainError(f"unknown theorem id {theorem_id!r}")


def _gate(theorem_id, fs, p, check):
    if not check:
        return
    v = hypothesis_check(theorem_id, fs, p)
    if not v.holds:
        raise HypothesisError(
            f"{theorem_id} hypothesis rejected for {fs.id} on [{p.a}, {p.b}] "
            f"(s={p.s}, q={p.q}): worst defect {v.worst_violation:.3e} at {v.witness}", v)


def _need_q_gt_1(theorem_id, p):
    if not p.q > 1.0:
        raise DomainError(f"{theorem_id} requires q > 1 (conjugate p = q/(q-1)), got q={p.q}")


# --- left-hand sides ------------------------------------------------------

def signed_deviation(fs, p, cfg=None):
    """Deviation without absolute value, ``(value, abserr)``."""
    cfg = cfg or DEFAULT_CONFIG
    _check_domain(fs, p.a, p.r)
    op = FracOperand(fs.f, p.a, p.r, p.alpha)
    jl, el = rl_left(op, p.r, cfg)
    jr, er = rl_right(op, p.a, cfg)
    scale = gamma(p.alpha + 1.0) / (2.0 * (p.r - p.a) ** p.alpha)
    value = 0.5 * (_f(fs, p.a) + _f(fs, p.r)) - scale * (jl + jr)
    return value, scale * (el + er)


def deviation_lhs(fs, p, cfg=None):
    """Shared left-hand side of the fractional results."""
    return abs(signed_deviation(fs, p, cfg)[0])


def lemma_integral(fs, p, cfg=None):
    """``(r-a)/2 * integral_0^1 [(1-t)**alpha - t**alpha] f'(r + (a-r) t) dt``."""
    cfg = cfg or DEFAULT_CONFIG
    _check_domain(fs, p.a, p.r)
    a, r, al = p.a, p.r, p.alpha

    def integrand(t):
        x = np.clip(r + (a - r) * t, a, r)
        return ((1.0 - t) ** al - t ** al) * fs.df(x)

    value, err = classical_integral(integrand, 0.0, 1.0, cfg)
    return 0.5 * (r - a) * value, 0.5 * (r - a) * err


def lemma1_residual(fs, p, cfg=None):
    """``|deviation - lemma_integral|``; the two sides are equal exactly."""
    return abs(signed_deviation(fs, p, cfg)[0] - lemma_integral(fs, p, cfg)[0])


def _mean(fs, a, b, cfg):
    _check_domain(fs, a, b)
    value, err = classical_integral(fs.f, a, b, cfg or DEFAULT_CONFIG)
    return value / (b - a), err / (b - a)


def trapezoid_deviation(fs, a, b, cfg=None):
    """``|(f(a)+f(b))/2 - mean of f over [a, b]|`` and its error."""
    mean, err = _mean(fs, a, b, cfg)
    return abs(0.5 * (_f(fs, a) + _f(fs, b)) - mean), err


# --- right-hand sides -----------------------------------------------------

def rhs_thm5(fs, p):
    return 0.5 * (p.r - p.a) * kernel_beta_bracket(p.alpha, p.s) * (_d(fs, p.a) + _d(fs, p.r))


def rhs_thm6(fs, p):
    _need_q_gt_1("thm6", p)
    q, pp = p.q, p.p
    avg = (_d(fs, p.a) ** q + _d(fs, p.r) ** q) / (p.s + 1.0)
    return 0.5 * (p.r - p.a) * kernel_holder_integral(p.alpha, pp) ** (1.0 / pp) * avg ** (1.0 / q)


def rhs_thm7(fs, p, sign=1.0):
    """``sign=-1`` evaluates the sign-flipped bracket; may return nan."""
    q = p.q
    bracket = kernel_beta_bracket(p.alpha, p.s, sign)
    if bracket < 0.0 and q != 1.0:
        return math.nan
    total = _d(fs, p.a) ** q + _d(fs, p.r) ** q
    return (0.5 * (p.r - p.a) * kernel_abs_integral(p.alpha) ** (1.0 - 1.0 / q)
            * bracket ** (1.0 / q) * total ** (1.0 / q))


def rhs_thm8(fs, p):
    _need_q_gt_1("thm8", p)
    q, pp = p.q, p.p
    mid = _d(fs, 0.5 * (p.a + p.r))
    return (p.r - p.a) / 2.0 ** ((2.0 - p.s) / q) * kernel_holder_integral(p.alpha, pp) ** (1.0 / pp) * mid


def rhs_thm8_proof_form(fs, p):
    """The constant the Holder argument actually delivers: ``(r-a)/2 * 2**((s-1)/q)``.

    It is never larger than :func:`rhs_thm8` since ``1 - (s-1)/q >= (2-s)/q``
    for ``q >= 1``.
    """
    _need_q_gt_1("thm8", p)
    q, pp = p.q, p.p
    mid = _d(fs, 0.5 * (p.a + p.r))
    return 0.5 * (p.r - p.a) * 2.0 ** ((p.s - 1.0) / q) * kernel_holder_integral(p.alpha, pp) ** (1.0 / pp) * mid


def rhs_eq2(fs, a, b, s, q):
    """Classical (``alpha = 1``) power-mean trapezoid bound for ``|f'|**q`` s-convex."""
    q = float(q)
    const = (s + 0.5 ** s) / ((s + 1.0) * (s + 2.0))
    total = _d(fs, a) ** q + _d(fs, b) ** q
    return 0.5 * (b - a) * 0.5 ** ((q - 1.0) / q) * const ** (1.0 / q) * total ** (1.0 / q)


def rhs_eq3(fs, a, b, alpha, s, q):
    """Fractional power-mean bound at ``r = b``.

    Uses scipy's regularized incomplete beta rescaled by the complete beta,
    so it shares no code with :func:`rhs_thm7`.
    """
    q = float(q)

    def ib(x, p1, p2):
        return float(sps.betainc(p1, p2, x) * sps.beta(p1, p2))

    e = alpha + s
    bracket = (ib(0.5, s + 1.0, alpha + 1.0) - ib(0.5, alpha + 1.0, s + 1.0)
               + (2.0 ** e - 1.0) / ((e + 1.0) * 2.0 ** e))
    kabs = 2.0 / (alpha + 1.0) * (1.0 - 1.0 / 2.0 ** alpha)
    total = _d(fs, a) ** q + _d(fs, b) ** q
    return 0.5 * (b - a) * kabs ** (1.0 - 1.0 / q) * bracket ** (1.0 / q) * total ** (1.0 / q)


def rhs_eq4(fs, a, b, p):
    """Classical Holder trapezoid bound with exponent ``p > 1``."""
    p = float(p)
    if not p > 1.0:
        raise DomainError(f"eq4 requires p > 1, got {p}")
    e = p / (p - 1.0)
    avg = 0.5 * (_d(fs, a) ** e + _d(fs, b) ** e)
    return (b - a) / (2.0 * (p + 1.0) ** (1.0 / p)) * avg ** ((p - 1.0) / p)


def rhs_eq5(fs, a, b, alpha, s, q):
    """Holder bound written directly at ``r = b``."""
    q = float(q)
    if not q > 1.0:
        raise DomainError(f"eq5 requires q > 1, got {q}")
    p = q / (q - 1.0)
    avg = (_d(fs, a) ** q + _d(fs, b) ** q) / (s + 1.0)
    return (b - a) / 2.0 * (1.0 / (alpha * p + 1.0)) ** (1.0 / p) * avg ** (1.0 / q)


def rhs_eq7(fs, a, b, alpha, s, q):
    """s-concave bound written directly at ``r = b``."""
    q = float(q)
    if not q > 1.0:
        raise DomainError(f"eq7 requires q > 1, got {q}")
    p = q / (q - 1.0)
    return (b - a) / 2.0 ** ((2.0 - s) / q) * (1.0 / (alpha * p + 1.0)) ** (1.0 / p) * _d(fs, 0.5 * (a + b))


# --- reports --------------------------------------------------------------

def _fractional_report(theorem_id, fs, p, cfg, rhs, extras=None):
    lhs, err = signed_deviation(fs, p, cfg)
    return make_report(theorem_id, abs(lhs), err, rhs, p, fs.id, extras)


def bound_hadamard_s(fs, a, b, s, cfg=None, check_hypothesis=True):
    """Both sides of the s-convex Hadamard inequality; returns ``(left, right)``.

    left:  ``2**(s-1) f((a+b)/2) <= mean``
    right: ``mean <= (f(a) + f(b)) / (s + 1)``
    """
    p = FracParams(a, b, b, 1.0, s, 1.0)
    _gate("hadamard_s", fs, p, check_hypothesis)
    mean, err = _mean(fs, p.a, p.b, cfg)
    left = make_report("hadamard_s_left", 2.0 ** (s - 1.0) * _f(fs, 0.5 * (a + b)), err, mean, p, fs.id)
    right = make_report("hadamard_s_right", mean, err, (_f(fs, a) + _f(fs, b)) / (s + 1.0), p, fs.id)
    return left, right


def bound_thm5(fs, p, cfg=None, check_hypothesis=True):
    _gate("thm5", fs, p, check_hypothesis)
    return _fractional_report("thm5", fs, p, cfg, rhs_thm5(fs, p))


def bound_thm6(fs, p, cfg=None, check_hypothesis=True):
    _need_q_gt_1("thm6", p)
    _gate("thm6", fs, p, check_hypothesis)
    return _fractional_report("thm6", fs, p, cfg, rhs_thm6(fs, p))


def bound_thm7(fs, p, cfg=None, check_hypothesis=True):
    _gate("thm7", fs, p, check_hypothesis)
    report = _fractional_report("thm7", fs, p, cfg, rhs_thm7(fs, p))
    minus = rhs_thm7(fs, p, sign=-1.0)
    report.extras["rhs_minus_variant"] = minus
    report.extras["minus_variant_violated"] = (
        None if math.isnan(minus) else bool(minus - report.lhs < -report.numeric_error_budget))
    return report


def bound_thm8(fs, p, cfg=None, check_hypothesis=True):
    _need_q_gt_1("thm8", p)
    _gate("thm8", fs, p, check_hypothesis)
    report = _fractional_report("thm8", fs, p, cfg, rhs_thm8(fs, p))
    tight = rhs_thm8_proof_form(fs, p)
    report.extras["rhs_proof_form"] = tight
    report.extras["proof_form_violated"] = bool(tight - report.lhs < -report.numeric_error_budget)
    return report


def bound_eq2(fs, a, b, s, q, cfg=None, check_hypothesis=True):
    p = FracParams(a, b, b, 1.0, s, q)
    _gate("eq2", fs, p, check_hypothesis)
    lhs, err = trapezoid_deviation(fs, a, b, cfg)
    return make_report("eq2", lhs, err, rhs_eq2(fs, a, b, s, q), p, fs.id)


def bound_eq3(fs, a, b, alpha, s, q, cfg=None, check_hypothesis=True):
    p = FracParams(a, b, b, alpha, s, q)
    _gate("eq3", fs, p, check_hypothesis)
    return _fractional_report("eq3", fs, p, cfg, rhs_eq3(fs, a, b, alpha, s, q))


def bound_eq4(fs, a, b, p_exp, cfg=None, check_hypothesis=True):
    p_exp = float(p_exp)
    if not p_exp > 1.0:
        raise DomainError(f"eq4 requires p > 1, got {p_exp}")
    p = FracParams(a, b, b, 1.0, 1.0, p_exp / (p_exp - 1.0))
    _gate("eq4", fs, p, check_hypothesis)
    lhs, err = trapezoid_deviation(fs, a, b, cfg)
    return make_report("eq4", lhs, err, rhs_eq4(fs, a, b, p_exp), p, fs.id)


def bound_eq5(fs, a, b, alpha, s, q, cfg=None, check_hypothesis=True):
    p = FracParams(a, b, b, alpha, s, q)
    _need_q_gt_1("eq5", p)
    _gate("eq5", fs, p, check_hypothesis)
    return _fractional_report("eq5", fs, p, cfg, rhs_eq5(fs, a, b, alpha, s, q))


def bound_eq7(fs, a, b, alpha, s, q, cfg=None, check_hypothesis=True):
    p = FracParams(a, b, b, alpha, s, q)
    _need_q_gt_1("eq7", p)
    _gate("eq7", fs, p, check_hypothesis)
    return _fractional_report("eq7", fs, p, cfg, rhs_eq7(fs, a, b, alpha, s, q))


def evaluate(theorem_id, fs, p, cfg=None, check_hypothesis=True):
    """Dispatch on ``theorem_id`` with a single :class:`FracParams`.

    Classical results use ``[a, b]``; ``hadamard_s`` returns its right
    inequality only (the left one is available from :func:`bound_hadamard_s`).
    """
    kw = {"cfg": cfg, "check_hypothesis": check_hypothesis}
    if theorem_id == "thm5":
        return bound_thm5(fs, p, **kw)
    if theorem_id == "thm6":
        return bound_thm6(fs, p, **kw)
    if theorem_id == "thm7":
        return bound_thm7(fs, p, **kw)
    if theorem_id == "thm8":
        return bound_thm8(fs, p, **kw)
    if theorem_id == "eq2":
        return bound_eq2(fs, p.a, p.b, p.s, p.q, **kw)
    if theorem_id == "eq3":
        return bound_eq3(fs, p.a, p.b, p.alpha, p.s, p.q, **kw)
    if theorem_id == "eq4":
        _need_q_gt_1("eq4", p)
        return bound_eq4(fs, p.a, p.b, p.p, **kw)
    if theorem_id == "eq5":
        return bound_eq5(fs, p.a, p.b, p.alpha, p.s, p.q, **kw)
    if theorem_id == "eq7":
        return bound_eq7(fs, p.a, p.b, p.alpha, p.s, p.q, **kw)
    if theorem_id == "hadamard_s":
        return bound_hadamard_s(fs, p.a, p.b, p.s, **kw)[1]
    raise DomainError(f"unknown theorem id {theorem_id!r}; known: {THEOREM_IDS}")


THEOREM_IDS = ("hadamard_s", "thm5", "thm6", "thm7", "thm8", "eq2", "eq3", "eq4", "eq5", "eq7")
Q_GT_1 = frozenset({"thm6", "thm8", "eq4", "eq5", "eq7"})
