"""Campaign config files and JSON/CSV result writers.

Config files are YAML (JSON is accepted too, being a subset)::

    theorems: [thm5, thm6, thm7, thm8]
    functions: [x2, exp, mycubic]        # builtin ids or ids defined below
    custom_functions:
      - id: mycubic
        expr: "x**3 + 2*x"               # literals, x, + - * /, **, pow, exp, abs
        domain: [0, 5]
    alpha_grid: [0.25, 0.5, 1.0]
    s_grid: [0.5, 1.0]
    q_grid: [1.0, 2.0]
    intervals: [[0, 1, 1], [0.5, 2, 2]]  # (a, r, b)
    random_instances: 500                # per theorem
    seed: 12345                          # FRAC_INEQ_SEED overrides
    check_samples: 256
    quadrature: {abs_tol: 1.0e-10, rel_tol: 1.0e-10, max_subdivisions: 2000,
                 method: substitution_adaptive}

Omitted keys take the :class:`~fracineq.harness.CampaignConfig` defaults;
``functions`` defaults to every builtin plus every custom function.
"""
import csv
import json
import math
import os

import yaml

from .errors import DomainError
from .funclib import CLASSES, NONE, builtin_suite, from_expression
from .harness import CampaignConfig
from .quadrature import QuadratureConfig

SEED_ENV = "FRAC_INEQ_SEED"

CSV_COLUMNS = ("theorem_id", "function_id", "a", "r", "alpha", "s", "q",
               "lhs", "rhs", "slack", "verdict")

_KNOWN_KEYS = {"theorems", "functions", "custom_functions", "alpha_grid", "s_grid", "q_grid",
               "intervals", "random_instances", "seed", "check_samples", "quadrature"}

_NUM = {"type": ["number", "null"]}

PARAMS_SCHEMA = {
    "type": "object",
    "required": ["a", "r", "b", "alpha", "s", "q"],
    "properties": {k: {"type": "number"} for k in ("a", "r", "b", "alpha", "s", "q")},
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["theorem_id", "lhs", "rhs", "slack", "numeric_error_budget", "verdict",
                 "params", "function_id", "extras"],
    "properties": {
        "theorem_id": {"type": "string"},
        "function_id": {"type": "string"},
        "lhs": _NUM, "rhs": _NUM, "slack": _NUM, "numeric_error_budget": _NUM,
        "verdict": {"enum": ["holds", "holds_within_budget", "violated"]},
        "params": PARAMS_SCHEMA,
        "extras": {"type": "object"},
    },
    "additionalProperties": False,
}

_INSTANCE = {
    "type": "object",
    "required": ["theorem_id", "function_id", "params"],
    "properties": {"theorem_id": {"type": "string"}, "function_id": {"type": "string"},
                   "params": PARAMS_SCHEMA},
}

CAMPAIGN_SCHEMA = {
    "type": "object",
    "required": ["total", "holds", "holds_within_budget", "violated", "skipped_hypothesis",
                 "worst_slack", "worst_report", "reports", "skipped", "errors", "evidence"],
    "properties": {
        **{k: {"type": "integer", "minimum": 0}
           for k in ("total", "holds", "holds_within_budget", "violated", "skipped_hypothesis")},
        "worst_slack": _NUM,
        "worst_report": {"oneOf": [{"type": "null"}, REPORT_SCHEMA]},
        "reports": {"type": "array", "items": REPORT_SCHEMA},
        "skipped": {"type": "array", "items": _INSTANCE},
        "errors": {"type": "array", "items": _INSTANCE},
        "evidence": {"type": "object"},
    },
    "additionalProperties": False,
}


def _custom(entry):
    try:
        fid, text = entry["id"], entry["expr"]
    except (KeyError, TypeError):
        raise DomainError(f"custom function entries need 'id' and 'expr': {entry!r}") from None
    cls = entry.get("declared_class", NONE)
    if cls not in CLASSES:
        raise DomainError(f"{fid}: unknown declared_class {cls!r}")
    return from_expression(fid, text, tuple(entry.get("domain", (0.0, 5.0))), cls, entry.get("s"))


def config_from_dict(data, env=None):
    """Build a :class:`CampaignConfig` from a parsed config tree."""
    env = os.environ if env is None else env
    if not isinstance(data, dict):
        raise DomainError("config root must be a mapping")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    custom = {fs.id: fs for fs in map(_custom, data.get("custom_functions") or [])}
    defaults = CampaignConfig.__dataclass_fields__
    fids = data.get("functions")
    if fids is None:
        fids = [fs.id for fs in builtin_suite()] + list(custom)
    kw = {
        "theorem_ids": tuple(data.get("theorems", defaults["theorem_ids"].default)),
        "function_ids": tuple(fids),
        "functions": custom,
    }
    for key, name in (("alpha_grid", "alpha_grid"), ("s_grid", "s_grid"), ("q_grid", "q_grid")):
        if key in data:
            kw[name] = tuple(float(v) for v in data[key])
    if "intervals" in data:
        kw["interval_grid"] = tuple(tuple(float(v) for v in iv) for iv in data["intervals"])
    for key in ("random_instances", "seed", "check_samples"):
        if key in data:
            kw[key] = int(data[key])
    if env.get(SEED_ENV):
        kw["seed"] = int(env[SEED_ENV])
    if "quadrature" in data:
        kw["cfg"] = QuadratureConfig(**data["quadrature"])
    return CampaignConfig(**kw)


def load_config(path, env=None):
    with open(path) as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise DomainError(f"cannot parse config {path}: {exc}") from None
    return config_from_dict(data or {}, env)


def _clean(obj):
    # JSON has no inf/nan
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def result_to_json(result):
    return _clean(result.to_dict())


def write_json(data, path):
    with open(path, "w") as fh:
        json.dump(_clean(data), fh, indent=2, sort_keys=False)
        fh.write("\n")


def write_csv(reports, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in reports:
            p = r.params
            w.writerow([r.theorem_id, r.function_id, repr(p.a), repr(p.r), repr(p.alpha), repr(p.s),
                        repr(p.q), repr(r.lhs), repr(r.rhs), repr(r.slack), r.verdict])


def params_from_dict(d):
    from .bounds import FracParams
    return FracParams(d["a"], d["r"], d["b"], d["alpha"], d["s"], d["q"])


def report_from_dict(d):
    from .bounds import BoundReport

    def num(v):
        return math.nan if v is None else float(v)
    return BoundReport(d["theorem_id"], num(d["lhs"]), num(d["rhs"]), num(d["slack"]),
                       num(d["numeric_error_budget"]), d["verdict"], params_from_dict(d["params"]),
                       d["function_id"], dict(d.get("extras") or {}))


def result_from_dict(d):
    from .harness import CampaignResult
    return CampaignResult(
        total=d["total"], holds=d["holds"], holds_within_budget=d["holds_within_budget"],
        violated=d["violated"], skipped_hypothesis=d["skipped_hypothesis"],
        worst_slack=math.inf if d["worst_slack"] is None else d["worst_slack"],
        worst_report=None if d["worst_report"] is None else report_from_dict(d["worst_report"]),
        reports=[report_from_dict(r) for r in d["reports"]],
        skipped=list(d["skipped"]), errors=list(d["errors"]), evidence=dict(d["evidence"]))
