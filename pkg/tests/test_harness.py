import numpy as np
import pytest

from fracineq import bounds
from fracineq.bounds import FracParams
from fracineq.errors import DomainError
from fracineq.funclib import from_expression, get_function
from fracineq.harness import (CampaignConfig, random_params, run_campaign, run_instance,
                              run_reductions)

BUMPY = from_expression("bumpy", "x**3/3 - x**2", (0, 3))


def counts(res):
    return res.holds + res.holds_within_budget + res.violated + res.skipped_hypothesis


def test_constant_campaign_never_violates():
    res = run_campaign(CampaignConfig(function_ids=("const1", "const3"), random_instances=20))
    assert res.violated == 0 and res.total == counts(res) > 0
    assert max(abs(r.slack) for r in res.reports) < 1e-10


def test_campaign_deterministic():
    cfg = CampaignConfig(function_ids=("x2", "exp", "sqrt_deriv"), alpha_grid=(0.5,), s_grid=(1.0,),
                         q_grid=(1.0, 2.0), random_instances=15, seed=7)
    one, two = run_campaign(cfg).to_dict(), run_campaign(cfg).to_dict()
    assert one == two
    assert one["reports"] == sorted(one["reports"], key=lambda r: (r["theorem_id"], r["function_id"],
                                                                   *r["params"].values()))


def test_campaign_totals_and_evidence():
    res = run_campaign(CampaignConfig(function_ids=("x2", "x1.5", "sqrt_deriv", "pow_s0.5"),
                                      random_instances=25, seed=3))
    assert res.total == counts(res) == len(res.reports) + len(res.skipped)
    assert res.violated == 0 and not res.errors
    assert res.worst_slack == min(r.slack for r in res.reports)
    assert set(res.evidence) == {"thm7_minus_variant_violations", "thm8_proof_form_violations",
                                 "max_error_budget"}


def test_gating_routes_to_skipped():
    cfg = CampaignConfig(theorem_ids=("thm5", "thm7"), function_ids=("bumpy",),
                         interval_grid=((0.0, 3.0, 3.0),), functions={"bumpy": BUMPY})
    res = run_campaign(cfg)
    assert res.skipped_hypothesis == res.total > 0
    assert res.violated == 0 and not res.reports


def test_run_instance_shapes(cfg):
    kind, verdict = run_instance("thm5", BUMPY, FracParams(0, 3, 3, 0.5, 0.5), cfg)
    assert kind == "skipped" and not verdict.holds
    kind, rep = run_instance("thm5", get_function("x2"), FracParams(0, 1, 1, 0.5, 0.5), cfg)
    assert kind == "report" and rep.theorem_id == "thm5"


@pytest.mark.parametrize("bad", [
    dict(theorem_ids=()),
    dict(theorem_ids=("thm99",)),
    dict(function_ids=()),
    dict(function_ids=("no_such_function",)),
    dict(alpha_grid=(0.0,)),
    dict(s_grid=(1.5,)),
    dict(q_grid=(0.5,)),
    dict(interval_grid=((1.0, 0.5, 0.5),)),
    dict(random_instances=-1),
])
def test_config_validation(bad):
    kw = dict(function_ids=("x2",))
    kw.update(bad)
    with pytest.raises(DomainError):
        CampaignConfig(**kw)


@pytest.mark.parametrize("tid", ["thm5", "thm6", "thm7", "thm8", "eq2", "eq4", "hadamard_s"])
def test_random_params_in_range(tid):
    rng = np.random.default_rng(11)
    for _ in range(200):
        p = random_params(rng, tid, (0.0, 5.0))
        assert 0.0 <= p.a <= 2.0 and p.r == p.b <= 5.0 and p.r - p.a >= 0.1 - 1e-12
        assert 0 < p.alpha <= 1 and 0 < p.s <= 1 and p.q >= 1
        if tid in bounds.Q_GT_1:
            assert p.q > 1
        if tid == "thm5":
            assert p.q == 1


def test_reductions_tight():
    records = run_reductions()
    assert len(records) == 5
    for rec in records:
        assert rec.cases == 27
        assert rec.max_discrepancy <= 1e-12, rec
