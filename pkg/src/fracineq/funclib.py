"""Test functions with exact derivatives, and numerical s-convexity classifiers.

Classes, for ``s`` in (0, 1] and ``alpha + beta = 1`` unless noted:

* second sense: ``g(alpha x + beta y) <= alpha**s g(x) + beta**s g(y)``
* first sense: the same inequality under ``alpha**s + beta**s = 1``
* s-concave: the second-sense inequality reversed

The classifiers minimise a scaled *defect* (right side minus left side,
divided by ``1 + |terms|`` so that rounding in large values is not read as a
violation) over a fixed 21x21x21 lattice plus seeded random triples.  A
negative defect below ``-margin`` is a concrete counterexample; a pass is
evidence, not proof.

Builtin s-concave members.  A nonnegative function that is s-concave with
``s < 1`` must vanish (take ``x = y``, ``alpha = 1/2``), so the only members
with ``s < 1`` are sign flips ``-x**s`` of the second-sense family.  For
theorems that need ``|f'|**q`` s-concave the suite provides
``(2/3)(1+x)**1.5`` and ``(4/5)(1+x)**1.25``, whose derivative powers
``(1+x)**(q/2)`` and ``(1+x)**(q/4)`` are concave (``s = 1``) for ``q <= 2``
and ``q <= 4`` respectively.
"""
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import DomainError, EvaluationError
from .expr import parse

CONVEX = "convex"
S_CONVEX_SECOND = "s_convex_second"
S_CONVEX_FIRST = "s_convex_first"
S_CONCAVE = "s_concave"
NONE = "none"
CLASSES = (CONVEX, S_CONVEX_SECOND, S_CONVEX_FIRST, S_CONCAVE, NONE)

CHECK_MARGIN = 1e-9
LATTICE = 21


@dataclass(frozen=True)
class FunctionSpec:
    id: str
    f: Callable
    df: Callable
    domain: tuple
    declared_class: str = NONE
    s_value: Optional[float] = None
    expr: str = ""
    derivative_class: str = NONE
    derivative_s: Optional[float] = None
    monomial: Optional[tuple] = None  # (coefficient, degree) when f = c * x**n
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        lo, hi = self.domain
        if not 0.0 <= lo < hi:
            raise DomainError(f"{self.id}: domain must satisfy 0 <= lo < hi, got {self.domain}")
        for cls in (self.declared_class, self.derivative_class):
            if cls not in CLASSES:
                raise DomainError(f"{self.id}: unknown class {cls!r}")

    def scaled(self, c):
        """``c * f`` with the same classes (valid for ``c > 0``)."""
        f, df = self.f, self.df
        mono = None if self.monomial is None else (c * self.monomial[0], self.monomial[1])
        return replace(self, id=f"{self.id}*{c:g}", f=lambda x: c * f(x), df=lambda x: c * df(x),
                       expr=f"{c:g}*({self.expr})", monomial=mono)


@dataclass(frozen=True)
class ConvexityVerdict:
    holds: bool
    worst_violation: float
    witness: tuple
    samples_checked: int


def derivative_power(fs, q):
    """The function ``x -> |f'(x)|**q`` on which the theorem hypotheses are stated."""
    df = fs.df
    q = float(q)

    def g(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.abs(df(x)) ** q
    return g


def _triples(domain, samples, seed):
    lo, hi = map(float, domain)
    grid = np.linspace(lo, hi, LATTICE)
    tg = np.linspace(0.0, 1.0, LATTICE)
    X, Y, T = (a.ravel() for a in np.meshgrid(grid, grid, tg, indexing="ij"))
    rng = np.random.default_rng(seed)
    x = np.concatenate([X, rng.uniform(lo, hi, samples)])
    y = np.concatenate([Y, rng.uniform(lo, hi, samples)])
    t = np.concatenate([T, rng.uniform(0.0, 1.0, samples)])
    return x, y, t


def _eval(g, pts):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = np.asarray(g(pts), dtype=float)
    v = np.broadcast_to(v, pts.shape)
    if not np.all(np.isfinite(v)):
        bad = pts[~np.isfinite(v)].flat[0]
        raise EvaluationError(f"function is not finite at x={bad!r}")
    return v


def _check(g, domain, s, samples, seed, margin, sense):
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s!r}")
    if samples < 100:
        raise DomainError(f"need at least 100 random samples, got {samples}")
    if float(domain[0]) < 0.0:
        raise DomainError("s-convexity is defined on subsets of [0, inf)")
    lo, hi = map(float, domain)
    x, y, t = _triples(domain, samples, seed)
    if sense == "first":
        a = t ** (1.0 / s)
        b = (1.0 - t) ** (1.0 / s)
        c1, c2 = t, 1.0 - t
    else:
        a, b = t, 1.0 - t
        c1, c2 = a ** s, b ** s
    m = a * x + b * y
    valid = (m >= lo) & (m <= hi)
    m = np.clip(m, lo, hi)
    sign = -1.0 if sense == "concave" else 1.0
    worst, k = _kernels.defect_extreme(c1, _eval(g, x), c2, _eval(g, y), _eval(g, m), sign, valid)
    witness = (float(x[k]), float(y[k]), float(t[k])) if k >= 0 else (np.nan, np.nan, np.nan)
    return ConvexityVerdict(bool(worst >= -margin), float(worst), witness, int(valid.sum()))


def check_s_convex_second(g, domain, s, samples=256, *, seed=0, margin=CHECK_MARGIN):
    return _check(g, domain, s, samples, seed, margin, "second")


def check_s_convex_first(g, domain, s, samples=256, *, seed=0, margin=CHECK_MARGIN):
    """First-sense check; ``t`` parametrises ``alpha = t**(1/s)``, ``beta = (1-t)**(1/s)``.

    Triples whose combination ``alpha x + beta y`` falls outside the domain
    are skipped and not counted in ``samples_checked``.
    """
    return _check(g, domain, s, samples, seed, margin, "first")


def check_s_concave(g, domain, s, samples=256, *, seed=0, margin=CHECK_MARGIN):
    return _check(g, domain, s, samples, seed, margin, "concave")


def defect(g, x, y, t, s, sense="second"):
    """Scaled defect of a single triple, recomputed without the kernels."""
    if sense == "first":
        a, b, c1, c2 = t ** (1.0 / s), (1.0 - t) ** (1.0 / s), t, 1.0 - t
    else:
        a, b = t, 1.0 - t
        c1, c2 = a ** s, b ** s
    t1 = c1 * float(g(np.float64(x)))
    t2 = c2 * float(g(np.float64(y)))
    gm = float(g(np.float64(a * x + b * y)))
    d = t1 + t2 - gm
    if sense == "concave":
        d = -d
    return d / (1.0 + abs(t1) + abs(t2) + abs(gm))


CHECKERS = {
    CONVEX: lambda g, dom, s, **kw: check_s_convex_second(g, dom, 1.0, **kw),
    S_CONVEX_SECOND: check_s_convex_second,
    S_CONVEX_FIRST: check_s_convex_first,
    S_CONCAVE: check_s_concave,
}


def verify_declared(fs, samples=256):
    """Run the checkers matching ``fs``'s declared classes; returns a list of failures."""
    failures = []
    pairs = [(fs.f, fs.declared_class, fs.s_value, "f"),
             (derivative_power(fs, 1.0), fs.derivative_class, fs.derivative_s, "|f'|")]
    for g, cls, s, label in pairs:
        if cls == NONE:
            continue
        v = CHECKERS[cls](g, fs.domain, 1.0 if s is None else s, samples=samples)
        if not v.holds:
            failures.append(f"{fs.id}: {label} is not {cls}(s={s}); worst defect "
                            f"{v.worst_violation:.3e} at {v.witness}")
    return failures


def from_expression(id, text, domain=(0.0, 5.0), declared_class=NONE, s_value=None):
    """Build a :class:`FunctionSpec` from the small expression grammar."""
    e = parse(text)
    return FunctionSpec(id=id, f=e, df=e.diff(), domain=tuple(map(float, domain)),
                        declared_class=declared_class, s_value=s_value, expr=text)


def _expr_spec(id, text, **kw):
    kw.setdefault("domain", (0.0, 5.0))
    e = parse(text)
    return FunctionSpec(id=id, f=e, df=e.diff(), expr=text, **kw)


def _power(id, coef, n, **kw):
    def f(x):
        return coef * np.power(x, n)

    def df(x):
        with np.errstate(divide="ignore"):
            return coef * n * np.power(x, n - 1.0)
    sign = "-" if coef < 0 else ""
    return FunctionSpec(id=id, f=f, df=df, domain=(0.0, 5.0), expr=f"{sign}x**{n:g}", **kw)


def _const(id, c):
    def f(x):
        return np.full(np.shape(x), c) if np.ndim(x) else c

    def df(x):
        return np.zeros(np.shape(x)) if np.ndim(x) else 0.0
    return FunctionSpec(id=id, f=f, df=df, domain=(0.0, 5.0), expr=f"{c:g}",
                        declared_class=CONVEX, derivative_class=S_CONCAVE, derivative_s=1.0,
                        monomial=(c, 0))


def _build():
    suite = [
        _const("const1", 1.0),
        _const("const3", 3.0),
        _expr_spec("x", "x", declared_class=CONVEX, derivative_class=CONVEX, monomial=(1.0, 1)),
        _expr_spec("x2", "x**2", declared_class=CONVEX, derivative_class=CONVEX, monomial=(1.0, 2)),
        _expr_spec("x3", "x**3", declared_class=CONVEX, derivative_class=CONVEX, monomial=(1.0, 3)),
        _expr_spec("exp", "exp(x)", declared_class=CONVEX, derivative_class=CONVEX),
        _expr_spec("exp_neg", "exp(-x)", declared_class=CONVEX, derivative_class=CONVEX),
        _expr_spec("quad_mixed", "x**2 - 3*x + 1", declared_class=CONVEX, derivative_class=CONVEX,
                   notes="f' changes sign at 1.5; |f'| = |2x - 3| is convex"),
        _power("x1.5", 1.0, 1.5, declared_class=CONVEX, derivative_class=S_CONVEX_SECOND,
               derivative_s=0.5, notes="|f'| = 1.5 x**0.5 is in K2_0.5"),
        _expr_spec("sqrt_deriv", "(2/3)*(1 + x)**1.5", declared_class=CONVEX,
                   derivative_class=S_CONCAVE, derivative_s=1.0,
                   notes="|f'|**q = (1+x)**(q/2) concave for q <= 2"),
        _expr_spec("quartic_root_deriv", "(4/5)*(1 + x)**1.25", declared_class=CONVEX,
                   derivative_class=S_CONCAVE, derivative_s=1.0,
                   notes="|f'|**q = (1+x)**(q/4) concave for q <= 4"),
    ]
    for s in (0.25, 0.5, 0.75, 1.0):
        suite.append(_power(f"pow_s{s:g}", 1.0, s, declared_class=S_CONVEX_SECOND, s_value=s,
                            notes="x**s is in K2_s by subadditivity of t -> t**s"))
    for s in (0.25, 0.5, 0.75):
        suite.append(_power(f"neg_pow_s{s:g}", -1.0, s, declared_class=S_CONCAVE, s_value=s,
                            notes="sign flip of a second-sense member"))
    return suite


@lru_cache(maxsize=1)
def _registry():
    suite = _build()
    failures = [msg for fs in suite for msg in verify_declared(fs)]
    if failures:
        raise AssertionError("builtin registration failed:\n" + "\n".join(failures))
    return {fs.id: fs for fs in suite}


def builtin_suite():
    """All builtin functions, each verified against its declared classes."""
    return list(_registry().values())


def get_function(id):
    try:
        return _registry()[id]
    except KeyError:
        raise DomainError(f"unknown function id {id!r}; known: {sorted(_registry())}") from None
