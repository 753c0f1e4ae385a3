"""Riemann-Liouville fractional integrals and numerical checks of
Hermite-Hadamard type inequalities for s-convex functions."""
from ._accel import USE_NUMBA
from .bounds import (BoundReport, FracParams, bound_eq2, bound_eq3, bound_eq4, bound_eq5,
                     bound_eq7, bound_hadamard_s, bound_thm5, bound_thm6, bound_thm7, bound_thm8,
                     deviation_lhs, lemma1_residual)
from .errors import (DomainError, EvaluationError, FracIneqError, HypothesisError,
                     QuadratureError)
from .fracint import FracOperand, classical_integral, power_rule, rl_left, rl_right
from .funclib import (ConvexityVerdict, FunctionSpec, builtin_suite, check_s_concave,
                      check_s_convex_first, check_s_convex_second, get_function)
from .harness import CampaignConfig, CampaignResult, run_campaign, run_reductions
from .quadrature import QuadratureConfig
from .special import (BetaArgs, beta_complete, beta_incomplete, gamma, kernel_abs_integral,
                      kernel_holder_integral)

__version__ = "0.1.0"
