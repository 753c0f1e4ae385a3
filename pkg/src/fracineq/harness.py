"""Parameter sweeps over the bound evaluators, and the reduction-equivalence suite."""
import itertools
import logging
import math
from dataclasses import dataclass, field, asdict

import numpy as np

from . import bounds
from .bounds import FracParams, Q_GT_1, THEOREM_IDS
from .errors import DomainError, EvaluationError, QuadratureError
from .funclib import get_function
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

log = logging.getLogger(__name__)

CAMPAIGN_THEOREMS = ("hadamard_s", "thm5", "thm6", "thm7", "thm8", "eq2", "eq3", "eq4")


@dataclass(frozen=True)
class CampaignConfig:
    theorem_ids: tuple = ("thm5", "thm6", "thm7", "thm8")
    function_ids: tuple = ()
    alpha_grid: tuple = (0.25, 0.5, 0.75, 1.0)
    s_grid: tuple = (0.25, 0.5, 1.0)
    q_grid: tuple = (1.0, 2.0, 4.0)
    interval_grid: tuple = ((0.0, 1.0, 1.0), (0.5, 2.0, 2.0), (1.0, 3.0, 3.0))
    random_instances: int = 0
    seed: int = 0
    cfg: QuadratureConfig = DEFAULT_CONFIG
    check_samples: int = 256
    functions: dict = field(default_factory=dict, compare=False)  # extra FunctionSpecs by id

    def __post_init__(self):
        if not self.theorem_ids:
            raise DomainError("theorem_ids must not be empty")
        for t in self.theorem_ids:
            if t not in CAMPAIGN_THEOREMS:
                raise DomainError(f"theorem {t!r} cannot be swept; choose from {CAMPAIGN_THEOREMS}")
        for name in ("function_ids", "alpha_grid", "s_grid", "q_grid", "interval_grid"):
            if not getattr(self, name):
                raise DomainError(f"{name} must not be empty")
        for fid in self.function_ids:
            self.function(fid)
        for a in self.alpha_grid:
            if not 0.0 < a <= 1.0:
                raise DomainError(f"alpha grid value {a} outside (0, 1]")
        for s in self.s_grid:
            if not 0.0 < s <= 1.0:
                raise DomainError(f"s grid value {s} outside (0, 1]")
        for q in self.q_grid:
            if not 1.0 <= q < math.inf:
                raise DomainError(f"q grid value {q} must be >= 1")
        for iv in self.interval_grid:
            if len(iv) != 3:
                raise DomainError(f"interval {iv} must be (a, r, b)")
            FracParams(*iv)
        if self.random_instances < 0:
            raise DomainError("random_instances must be >= 0")
        if self.check_samples < 100:
            raise DomainError("check_samples must be >= 100")

    def function(self, fid):
        if fid in self.functions:
            return self.functions[fid]
        return get_function(fid)


@dataclass
class CampaignResult:
    total: int = 0
    holds: int = 0
    holds_within_budget: int = 0
    violated: int = 0
    skipped_hypothesis: int = 0
    worst_slack: float = math.inf
    worst_report: object = None
    reports: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "total": self.total,
            "holds": self.holds,
            "holds_within_budget": self.holds_within_budget,
            "violated": self.violated,
            "skipped_hypothesis": self.skipped_hypothesis,
            "worst_slack": self.worst_slack,
            "worst_report": None if self.worst_report is None else self.worst_report.to_dict(),
            "reports": [r.to_dict() for r in self.reports],
            "skipped": list(self.skipped),
            "errors": list(self.errors),
            "evidence": dict(self.evidence),
        }


def _key(theorem_id, function_id, p):
    return (theorem_id, function_id, p.a, p.r, p.b, p.alpha, p.s, p.q)


def _grid_instances(config):
    for tid, fid, alpha, s, q, iv in itertools.product(
            config.theorem_ids, config.function_ids, config.alpha_grid, config.s_grid,
            config.q_grid, config.interval_grid):
        if tid in Q_GT_1 and q == 1.0:
            continue
        lo, hi = config.function(fid).domain
        if iv[0] < lo or iv[2] > hi:
            continue
        if tid in ("hadamard_s", "eq2", "eq4"):
            alpha = 1.0
        if tid == "eq4":
            s = 1.0
        if tid in ("thm5", "hadamard_s"):
            q = 1.0
        yield tid, fid, FracParams(iv[0], iv[1], iv[2], alpha, s, q)


def random_params(rng, theorem_id, domain):
    """Draw one parameter tuple for ``theorem_id`` inside ``domain``.

    On the builtin domain [0, 5] this gives ``a`` in [0, 2] and ``r - a`` in
    [0.1, 3], with ``b = r``.  For thm8 half the draws use ``s = 1``: with
    ``s < 1`` only a vanishing ``|f'|**q`` can be s-concave.
    """
    lo, hi = domain
    w = hi - lo
    a = lo + 0.4 * w * rng.random()
    r = min(a + w * (0.02 + 0.58 * rng.random()), hi)
    alpha = 1.0 - rng.random()
    s = 1.0 - rng.random()
    u = rng.random()
    if theorem_id == "thm8" and u < 0.5:
        s = 1.0
    v = rng.random()
    q = 1.0 + 3.0 * (1.0 - rng.random())
    if theorem_id in ("thm5", "hadamard_s") or (theorem_id not in Q_GT_1 and v < 0.25):
        q = 1.0
    if theorem_id in ("hadamard_s", "eq2", "eq4"):
        alpha = 1.0
    if theorem_id == "eq4":
        s = 1.0
    return FracParams(a, r, r, alpha, s, q)


def _random_instances(config):
    rng = np.random.default_rng(config.seed)
    for tid in config.theorem_ids:
        for _ in range(config.random_instances):
            fid = config.function_ids[int(rng.integers(len(config.function_ids)))]
            yield tid, fid, random_params(rng, tid, config.function(fid).domain)


def run_instance(theorem_id, fs, p, cfg=DEFAULT_CONFIG, samples=256, seed=0):
    """Gate one instance on its hypothesis and evaluate it.

    Returns ``("skipped", verdict_or_message)``, ``("error", message)`` or
    ``("report", BoundReport)``.
    """
    try:
        verdict = bounds.hypothesis_check(theorem_id, fs, p, samples=samples, seed=seed)
    except EvaluationError as exc:
        return "skipped", str(exc)
    if not verdict.holds:
        return "skipped", verdict
    try:
        return "report", bounds.evaluate(theorem_id, fs, p, cfg, check_hypothesis=False)
    except (QuadratureError, EvaluationError) as exc:
        return "error", str(exc)


def run_campaign(config):
    """Sweep grid and random instances; deterministic given ``config``."""
    result = CampaignResult()
    instances = list(_grid_instances(config)) + list(_random_instances(config))
    minus_violations = 0
    proof_form_violations = 0
    for idx, (tid, fid, p) in enumerate(instances):
        fs = config.function(fid)
        kind, payload = run_instance(tid, fs, p, config.cfg, config.check_samples,
                                     seed=[config.seed, idx])
        key = _key(tid, fid, p)
        if kind == "error":
            log.warning("instance %s failed: %s", key, payload)
            result.errors.append({"theorem_id": tid, "function_id": fid, "params": p.to_dict(),
                                  "message": payload})
            continue
        result.total += 1
        if kind == "skipped":
            result.skipped_hypothesis += 1
            worst = payload.worst_violation if hasattr(payload, "worst_violation") else None
            result.skipped.append({"theorem_id": tid, "function_id": fid, "params": p.to_dict(),
                                   "worst_violation": worst})
            continue
        report = payload
        result.reports.append(report)
        setattr(result, report.verdict, getattr(result, report.verdict) + 1)
        if report.extras.get("minus_variant_violated"):
            minus_violations += 1
        if report.extras.get("proof_form_violated"):
            proof_form_violations += 1

    result.reports.sort(key=lambda r: _key(r.theorem_id, r.function_id, r.params))
    result.skipped.sort(key=lambda d: (d["theorem_id"], d["function_id"], *d["params"].values()))
    result.errors.sort(key=lambda d: (d["theorem_id"], d["function_id"], *d["params"].values()))
    if result.reports:
        result.worst_report = min(result.reports, key=lambda r: r.slack)
        result.worst_slack = result.worst_report.slack
    result.evidence = {
        "thm7_minus_variant_violations": minus_violations,
        "thm8_proof_form_violations": proof_form_violations,
        "max_error_budget": max((r.numeric_error_budget for r in result.reports), default=0.0),
    }
    return result


# --- reductions -------------------------------------------------------------

@dataclass(frozen=True)
class ReductionRecord:
    name: str
    cases: int
    max_discrepancy: float
    worst_case: dict

    def to_dict(self):
        return asdict(self)


def _discrepancy(x, y):
    return abs(x - y) / max(1.0, abs(x), abs(y))


def _record(name, pairs):
    worst, worst_case, n = -1.0, {}, 0
    for case, x, y in pairs:
        n += 1
        d = _discrepancy(x, y)
        if d > worst:
            worst, worst_case = d, dict(case, lhs_formula=x, rhs_formula=y)
    return ReductionRecord(name, n, worst, worst_case)


GRID3 = (0.25, 0.5, 1.0)
Q3 = (1.0, 2.0, 4.0)
Q3_GT_1 = (1.5, 2.0, 4.0)
FUNCS3 = ("x2", "x3", "exp")
INTERVALS3 = ((0.0, 1.0), (0.5, 2.0), (1.0, 3.0))


def run_reductions(cfg=None):
    """Compare each general bound against its special case on a 3x3x3 grid.

    Discrepancy is ``|x - y| / max(1, |x|, |y|)`` between right-hand sides.
    """
    x2 = get_function("x2")

    def thm7_eq3():
        a, b = 0.5, 2.0
        for al, s, q in itertools.product(GRID3, GRID3, Q3):
            p = FracParams(a, b, b, al, s, q)
            yield ({"alpha": al, "s": s, "q": q, "function_id": "x2", "a": a, "b": b},
                   bounds.rhs_thm7(x2, p), bounds.rhs_eq3(x2, a, b, al, s, q))

    def thm7_eq2():
        a, b = 0.5, 2.0
        for s, q, fid in itertools.product(GRID3, Q3, FUNCS3):
            fs = get_function(fid)
            p = FracParams(a, b, b, 1.0, s, q)
            yield ({"s": s, "q": q, "function_id": fid, "a": a, "b": b},
                   bounds.rhs_thm7(fs, p), bounds.rhs_eq2(fs, a, b, s, q))

    def thm6_eq4():
        for q, fid, (a, b) in itertools.product(Q3_GT_1, FUNCS3, INTERVALS3):
            fs = get_function(fid)
            p = FracParams(a, b, b, 1.0, 1.0, q)
            yield ({"q": q, "p": p.p, "function_id": fid, "a": a, "b": b},
                   bounds.rhs_thm6(fs, p), bounds.rhs_eq4(fs, a, b, p.p))

    def thm6_eq5():
        a, b = 0.5, 2.0
        for al, s, q in itertools.product(GRID3, GRID3, Q3_GT_1):
            p = FracParams(a, b, b, al, s, q)
            yield ({"alpha": al, "s": s, "q": q, "function_id": "x2", "a": a, "b": b},
                   bounds.rhs_thm6(x2, p), bounds.rhs_eq5(x2, a, b, al, s, q))

    def thm8_eq7():
        fs = get_function("sqrt_deriv")
        a, b = 0.5, 2.0
        for al, s, q in itertools.product(GRID3, GRID3, Q3_GT_1):
            p = FracParams(a, b, b, al, s, q)
            yield ({"alpha": al, "s": s, "q": q, "function_id": fs.id, "a": a, "b": b},
                   bounds.rhs_thm8(fs, p), bounds.rhs_eq7(fs, a, b, al, s, q))

    return [
        _record("thm7(r=b) -> eq3", thm7_eq3()),
        _record("thm7(r=b, alpha=1) -> eq2", thm7_eq2()),
        _record("thm6(r=b, alpha=1, s=1) -> eq4", thm6_eq4()),
        _record("thm6(r=b) -> eq5", thm6_eq5()),
        _record("thm8(r=b) -> eq7", thm8_eq7()),
    ]
