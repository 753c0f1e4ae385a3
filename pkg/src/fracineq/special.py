"""Gamma, beta and the closed-form kernel integrals used by the bounds.

All beta functions here are *unregularized*::

    beta_incomplete(x, p1, p2) = integral_0^x t**(p1-1) * (1-t)**(p2-1) dt

so ``beta_incomplete(1, p1, p2) == beta_complete(p1, p2)``.  Libraries such as
scipy default to the regularized ratio; do not mix the two.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError

# Largest x with finite Gamma(x) in double precision.
GAMMA_MAX_ARG = 171.6243769563027


def gamma(x):
    """Gamma function for real ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma requires x > 0, got {x!r}")
    if x > GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x}) overflows double precision")
    return math.gamma(x)


def beta_complete(p1, p2):
    """Complete beta function ``Gamma(p1) Gamma(p2) / Gamma(p1 + p2)``."""
    p1 = float(p1)
    p2 = float(p2)
    if not (p1 > 0.0 and p2 > 0.0):
        raise DomainError(f"beta_complete requires p1, p2 > 0, got ({p1}, {p2})")
    if p1 + p2 < GAMMA_MAX_ARG:
        return math.gamma(p1) * math.gamma(p2) / math.gamma(p1 + p2)
    return math.exp(math.lgamma(p1) + math.lgamma(p2) - math.lgamma(p1 + p2))


@dataclass(frozen=True)
class BetaArgs:
    """Arguments of the incomplete beta function."""

    x: float
    p1: float
    p2: float

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0):
            raise DomainError(f"incomplete beta needs 0 <= x <= 1, got x={self.x!r}")
        if not (self.p1 > 0.0 and self.p2 > 0.0):
            raise DomainError(f"incomplete beta needs p1, p2 > 0, got ({self.p1}, {self.p2})")


def _front(x, p1, p2):
    # x**p1 * (1-x)**p2 / p1, computed in log space
    return np.exp(p1 * np.log(x) + p2 * np.log1p(-x)) / p1


def beta_incomplete(x, p1=None, p2=None):
    """Unregularized incomplete beta ``B(x; p1, p2)``.

    Accepts either a :class:`BetaArgs` or ``(x, p1, p2)``; ``x`` may be an
    array, the shapes must be scalars.  The continued fraction is evaluated on
    whichever of ``x`` and ``1 - x`` converges faster and the symmetry
    ``B(x; p1, p2) = B(p1, p2) - B(1 - x; p2, p1)`` recovers the other side.
    """
    if isinstance(x, BetaArgs):
        x, p1, p2 = x.x, x.p1, x.p2
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    if np.any(~np.isfinite(xs)):
        raise DomainError("incomplete beta needs finite x")
    for xi in (xs.min(), xs.max()):
        BetaArgs(float(xi), float(p1), float(p2))
    p1 = float(p1)
    p2 = float(p2)

    full = beta_complete(p1, p2)
    out = np.empty_like(xs)
    out[xs == 0.0] = 0.0
    out[xs == 1.0] = full
    inner = (xs > 0.0) & (xs < 1.0)
    direct = inner & (xs < (p1 + 1.0) / (p1 + p2 + 2.0))
    mirror = inner & ~direct
    if direct.any():
        xd = xs[direct]
        out[direct] = _front(xd, p1, p2) * _kernels.betacf(p1, p2, xd)
    if mirror.any():
        xm = 1.0 - xs[mirror]
        out[mirror] = full - _front(xm, p2, p1) * _kernels.betacf(p2, p1, xm)
    return float(out[0]) if scalar else out


def kernel_abs_integral(alpha):
    """``integral_0^1 |(1-t)**alpha - t**alpha| dt = 2/(alpha+1) * (1 - 2**-alpha)``."""
    alpha = float(alpha)
    if not alpha > 0.0:
        raise DomainError(f"kernel_abs_integral requires alpha > 0, got {alpha!r}")
    return 2.0 / (alpha + 1.0) * (1.0 - 2.0 ** (-alpha))


def kernel_holder_integral(alpha, p):
    """``integral_0^1 |1 - 2t|**(alpha p) dt = 1/(alpha p + 1)``.

    This dominates ``integral_0^1 |(1-t)**alpha - t**alpha|**p dt`` only for
    ``0 <= alpha <= 1``, so other orders are rejected.
    """
    alpha = float(alpha)
    p = float(p)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"Holder kernel bound needs 0 <= alpha <= 1, got {alpha!r}")
    if not p > 1.0:
        raise DomainError(f"Holder kernel bound needs p > 1, got {p!r}")
    return 1.0 / (alpha * p + 1.0)


def kernel_beta_bracket(alpha, s, sign=1.0):
    """Weighted kernel moment ``integral_0^1 |(1-t)**alpha - t**alpha| t**s dt``.

    Closed form::

        B(1/2; s+1, alpha+1) - B(1/2; alpha+1, s+1)
            + (2**(alpha+s) - 1) / ((alpha+s+1) * 2**(alpha+s))

    ``sign=-1`` flips the last term; that variant is only kept to test the
    sign-flipped form against campaigns and is not a valid bound constant.
    """
    alpha = float(alpha)
    s = float(s)
    if not (alpha > 0.0 and s > 0.0):
        raise DomainError(f"bracket needs alpha, s > 0, got ({alpha}, {s})")
    e = alpha + s
    tail = (2.0 ** e - 1.0) / ((e + 1.0) * 2.0 ** e)
    return (beta_incomplete(0.5, s + 1.0, alpha + 1.0)
            - beta_incomplete(0.5, alpha + 1.0, s + 1.0)
            + sign * tail)
