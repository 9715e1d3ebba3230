import json
from fractions import Fraction

import numpy as np
import pytest

from floerlab import pipeline
from floerlab.ainfty import check_ainfty, is_quasi_isomorphic
from floerlab.coeff import GradedLaurent
from floerlab.errors import GradingMismatch
from floerlab.pipeline import (a2_bulk_family, a2_twisted_model, criterion_bulk, criterion_twisted,
                               run_theorem_1_1, run_theorem_1_2)

QI, NOT = "quasi-isomorphic", "not quasi-isomorphic"


# criteria

def test_twisted_criterion_examples():
    assert criterion_twisted([(1, 0), (-1, Fraction(1, 3))]).isomorphic
    assert not criterion_twisted([(1, 0), (-1, 0)]).isomorphic
    assert criterion_twisted([(1, 5)]).isomorphic
    assert criterion_twisted([(1, 0), (-1, 1)]).quantity == "t^{0}:1, t^{1}:-1"


def test_twisted_criterion_needs_middle_degree():
    with pytest.raises(GradingMismatch):
        criterion_twisted([(1, 0)], a_degree=3, n=2)


def test_bulk_criterion_examples():
    assert criterion_bulk([1]).isomorphic
    assert not criterion_bulk([0]).isomorphic
    assert not criterion_bulk([1, -1]).isomorphic
    assert not criterion_bulk([]).isomorphic


def test_bulk_criterion_grading():
    with pytest.raises(GradingMismatch):
        criterion_bulk([1], a_degree=4, n=4)
    with pytest.raises(GradingMismatch):
        criterion_bulk([1], l=5)
    assert criterion_bulk([1], a_degree=6, n=4, l=4).isomorphic


# the A2 pair models

def test_twisted_model_structure():
    W = a2_twisted_model([(1, 0), (-1, 1)])
    assert check_ainfty(W.twisted()).passed and check_ainfty(W.specialize()).passed
    degs = {g.name: g.degree for g in W.generators}
    assert degs["a"] == 2 and degs["b"] == 0 and degs["bv"] == 2 and degs["av"] == 0
    assert not any(len(i) == 1 for i, _ in W.entries)


@pytest.mark.parametrize("l", [4, 6, 8])
def test_bulk_model_grading(l):
    F = a2_bulk_family(l)
    degs = {g[0]: g[1] for g in F.generators}
    assert degs["a"] == 2 * l - 2 and degs["b"] == 0 and degs["f0"] == l


# twisted pair verdicts

def test_theorem_1_1_default():
    rep = run_theorem_1_1(0.1)
    assert rep.passed
    v = rep.verdicts
    assert (v["twisted"], v["untwisted"]) == (QI, NOT)
    assert (v["twisted_direct"], v["untwisted_direct"]) == (QI, NOT)
    assert v["twisted_at_t_equals_1"] == NOT
    assert rep.evidence["weight_dichotomy"]["counts"] == [0, 1]


@pytest.mark.parametrize("eps", [round(0.05 * k, 2) for k in range(1, 11)])
def test_theorem_1_1_eps_sweep(eps):
    rep = run_theorem_1_1(eps, seeds=40)
    assert rep.passed
    newton = rep.evidence["section"]["newton"]
    assert newton["orbits"] == 1
    assert abs(newton["R"] - pipeline.model.closed_form_R(eps)) < 1e-10


@pytest.mark.parametrize("scale", [Fraction(1, 7), 2, Fraction(7, 3), 100])
def test_theorem_1_1_weight_rescaling(scale):
    rep = run_theorem_1_1(0.2, weight_scale=scale, seeds=40)
    assert rep.passed and rep.verdicts["twisted"] == QI


@pytest.mark.parametrize("gauge", [{"a": 1}, {"b": Fraction(-2, 3), "av": 5}, {"e0": 1, "f1": -1, "bv": 2}])
def test_theorem_1_1_gauge_invariance(gauge):
    rep = run_theorem_1_1(0.3, gauge=gauge, seeds=40)
    assert rep.passed
    assert rep.evidence["gauge"]["removal_verified"]


def test_theorem_1_1_witness_is_exact():
    rep = run_theorem_1_1(0.1, seeds=40)
    w = rep.evidence["witness_twisted"]
    assert w["status"] == "isomorphic" and w["f"] and w["g"]
    assert rep.evidence["refutation_untwisted"]["status"] == "not_isomorphic"


# bulk deformation verdicts

@pytest.mark.parametrize("l", [4, 6, 8])
def test_theorem_1_2(l):
    rep = run_theorem_1_2(l)
    assert rep.passed
    v = rep.verdicts
    assert (v["bulk"], v["undeformed"]) == (QI, NOT)
    assert (v["bulk_direct"], v["undeformed_direct"]) == (QI, NOT)
    led = rep.evidence["ledger"]
    assert led["closing"] == 0 and led["product_hbar_exponent"] == [0]
    assert led["deg_hbar"] == 2 - l and led["|a|"] == 2 * l - 2


def test_theorem_1_2_rejects_odd_l():
    with pytest.raises(GradingMismatch):
        run_theorem_1_2(5)


def test_cancelling_bulk_counts():
    # a zero net constrained count: no isomorphism in either route
    F = a2_bulk_family(4, count=0)
    assert 1 not in F.components
    B = pipeline.deform.assemble_bulk(F)
    assert is_quasi_isomorphic(B, "L0", "L1").status == "not_isomorphic"
    assert not criterion_bulk([1, -1]).isomorphic


# route agreement

def test_routes_agree_in_all_four_cells():
    r1 = run_theorem_1_1(0.15, seeds=40).verdicts
    r2 = run_theorem_1_2(6).verdicts
    assert r1["twisted"] == r1["twisted_direct"]
    assert r1["untwisted"] == r1["untwisted_direct"]
    assert r2["bulk"] == r2["bulk_direct"]
    assert r2["undeformed"] == r2["undeformed_direct"]


def test_witness_product_degree():
    B = pipeline.deform.assemble_bulk(a2_bulk_family(6))
    prod = B.apply([{"av": GradedLaurent({-1: Fraction(1)}, 6)}, {"b": GradedLaurent({0: Fraction(1)}, 6)}])
    assert list(prod) == ["e0"] and prod["e0"] == GradedLaurent({0: 1}, 6)


# reports

def test_report_serializes():
    rep = run_theorem_1_1(0.1, seeds=20)
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["schema"] == "floer-lab/1" and d["passed"]
    assert d["seeds"] == {"rng_seed": 0, "newton_seeds": 20}
    # the embedded input rebuilds the same twisted category
    W = pipeline.deform.load_weights(d["evidence"]["input"])
    assert W.twisted().mu == a2_twisted_model([(1, 0), (-1, 1)]).twisted().mu


def test_reports_are_reproducible():
    a = run_theorem_1_1(0.1, seed=3, seeds=20).to_dict()
    b = run_theorem_1_1(0.1, seed=3, seeds=20).to_dict()
    a.pop("timing_seconds"), b.pop("timing_seconds")
    assert json.dumps(a, sort_keys=True, default=str) == json.dumps(b, sort_keys=True, default=str)
    assert np.isfinite(a["evidence"]["sigma_min"])
