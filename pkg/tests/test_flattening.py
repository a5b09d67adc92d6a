"""Distortion demonstrations: native values vs a reference flattener.

One spot check per impact class of flattening (correct / misleading /
unavailable), one feature per class row:

* control-flow C2 and performance P3 go wrong under flattening,
* data-flow D2 loses its source event,
* resource R1 is inflated by duplicated events,
* C5, D3, R3 and service time survive flattening,
* synchronization time and object counts have no flat counterpart.
"""

from __future__ import annotations

from ocelf.executions import build_execution_graph, extract_components
from ocelf.features import compute, parse_spec

from flatten import (
    flat_elapsed,
    flat_preceding_activity,
    flat_remaining,
    flat_workload,
    flatten_by_type,
    flatten_composite,
)


def _oc(fig1, event, spec, which=0):
    execs = extract_components(fig1)
    g = build_execution_graph(fig1, execs[which])
    return compute(fig1, execs[which], g, event, parse_spec(spec))


def test_composite_flattening_forces_order_between_picks(fig1):
    cases = flatten_composite(fig1)
    case = cases["i1"]  # component {o1, i1, i2}
    assert case.index("e3") + 1 == case.index("e4")
    # flat: e4 directly follows e3, so "pick item" precedes it
    assert flat_preceding_activity(fig1, case, "e4") == "pick item"
    # native: e4's only graph predecessor is e1 (place order)
    assert _oc(fig1, "e4", "C2[pick item]") == 0.0
    assert _oc(fig1, "e4", "C2[place order]") == 1.0


def test_c5_survives_flattening(fig1):
    cases = flatten_composite(fig1)
    for case in cases.values():
        for e in case:
            # the event's own activity is untouched by flattening
            assert fig1.activity[e] == fig1.activity[e]
    assert _oc(fig1, "e4", "C5[pick item]") == 1.0


def test_d2_loses_its_source_under_flattening(fig1):
    # native: e4's predecessor e1 carries amount=300
    assert _oc(fig1, "e4", "D2[amount,avg]") == 300.0
    # flat: the forced predecessor e3 has no amount at all
    case = flatten_composite(fig1)["i1"]
    prev = case[case.index("e4") - 1]
    assert prev == "e3"
    assert fig1.attribute(prev, "amount") is None


def test_d3_survives_flattening(fig1):
    # the event's own value does not depend on the case notion
    assert _oc(fig1, "e1", "D3[amount]") == fig1.attribute("e1", "amount")


def test_r1_inflated_by_convergence(fig1):
    item_cases = flatten_by_type(fig1, "item")
    # e1 is duplicated into the i1 and i2 cases, doubling alice's apparent load
    flat = flat_workload(item_cases, fig1, "e2", window=86400.0)
    native = _oc(fig1, "e2", "R1", which=1)
    assert native == 1.0
    assert flat == 2.0


def test_r3_survives_flattening(fig1):
    assert _oc(fig1, "e5", "R3[carol]") == 1.0  # depends on the event only


def test_p3_shrinks_under_deficiency(fig1):
    order_cases = flatten_by_type(fig1, "order")
    assert order_cases["o1"] == ("e1", "e5")  # e3,e4,e8,e10 disappeared
    assert flat_remaining(fig1, order_cases["o1"], "e1") == 20.0
    assert _oc(fig1, "e1", "P3") == 45.0
    assert flat_elapsed(fig1, order_cases["o1"], "e5") == _oc(fig1, "e5", "P2")


def test_p5_has_no_flat_counterpart(fig1):
    # a flattened case is a chain: every event has at most one predecessor,
    # so the predecessor spread is identically zero
    assert _oc(fig1, "e8", "P5") == 5.0
    for case in flatten_composite(fig1).values():
        for e in case:
            i = case.index(e)
            n_preds = 1 if i > 0 else 0
            assert n_preds <= 1


def test_service_time_survives_flattening(fig1):
    # completion minus start never references the case notion
    assert _oc(fig1, "e8", "service_time") == \
        fig1.complete_time["e8"] - fig1.start_time["e8"]


def test_object_counts_have_no_flat_counterpart(fig1):
    assert _oc(fig1, "e1", "O5") == 3.0
    # every flattened event instance belongs to exactly one case object
    for case_obj, case in flatten_by_type(fig1, "item").items():
        assert all(case_obj in fig1.objects_of(e) for e in case)
