from __future__ import annotations

import itertools
import json

import numpy as np
import pytest

from hodgefaas import (
    EdgeFlow,
    RankTolerance,
    build_complex,
    classify,
    compare_windows,
    incidence_node_edge,
    report,
)
from hodgefaas.topology import BettiNumbers
from helpers import random_complex

TRIANGLE = {
    "nodes": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
    "edges": [
        {"id": "ab", "tail": "a", "head": "b"},
        {"id": "bc", "tail": "b", "head": "c"},
        {"id": "ca", "tail": "c", "head": "a"},
    ],
}

THETA = {
    "nodes": [{"id": n} for n in "uavb"],
    "edges": [
        {"id": "ua", "tail": "u", "head": "a"},
        {"id": "av", "tail": "a", "head": "v"},
        {"id": "ub", "tail": "u", "head": "b"},
        {"id": "bv", "tail": "b", "head": "v"},
        {"id": "uv", "tail": "u", "head": "v"},
    ],
}


def _betti(beta0, beta1, beta2):
    return BettiNumbers(beta0, beta1, beta2, tol_used=RankTolerance())


def test_report_pure_gradient_flow():
    c = build_complex(TRIANGLE)
    b1 = incidence_node_edge(c).astype(float)
    rep = report(c, EdgeFlow(b1.T @ np.array([3.0, 1.0, 0.0])))
    assert rep.harmonic_stress == pytest.approx(0.0, abs=1e-12)
    assert rep.harmonic_support == ()
    assert rep.energies.total == pytest.approx(rep.energies.gradient, rel=1e-10)


def test_report_circulation_around_hole():
    c = build_complex(TRIANGLE)
    rep = report(c, EdgeFlow(np.ones(3)))
    assert rep.harmonic_stress == pytest.approx(1.0)
    assert {edge_id for edge_id, _ in rep.harmonic_support} == {"ab", "bc", "ca"}
    assert rep.betti.as_tuple() == (1, 1, 0)
    assert any("non-reducible cycle (loop)" in h for h in rep.classification_hints)


def test_report_support_fraction_validation():
    c = build_complex(TRIANGLE)
    with pytest.raises(ValueError, match="support_fraction"):
        report(c, EdgeFlow(np.ones(3)), support_fraction=0.0)


def test_report_records_isolated_nodes_and_window():
    doc = {**TRIANGLE, "nodes": TRIANGLE["nodes"] + [{"id": "x"}]}
    c = build_complex(doc)
    rep = report(c, EdgeFlow(np.ones(3)), window_index=4)
    assert rep.isolated_nodes == ("x",)
    assert rep.window_index == 4
    assert rep.to_dict()["window_index"] == 4


def test_report_to_dict_is_json_serializable():
    c = build_complex(TRIANGLE)
    rep = report(c, EdgeFlow(np.array([1.0, 2.0, 3.0])))
    doc = json.loads(json.dumps(rep.to_dict()))
    assert set(doc) >= {
        "betti",
        "energies",
        "harmonic_stress",
        "harmonic_support",
        "spectral_gaps",
        "classification_hints",
        "isolated_nodes",
        "support_fraction",
        "tolerance",
    }
    assert doc["betti"] == {"beta0": 1, "beta1": 1, "beta2": 0}
    assert rep.to_text()


def test_report_support_sorted_descending_above_threshold():
    c = build_complex(THETA)
    flow = EdgeFlow(np.array([1.0, 1.0, 0.2, 0.2, -1.2]))
    rep = report(c, flow, support_fraction=0.05)
    values = [v for _, v in rep.harmonic_support]
    assert values == sorted(values, reverse=True)
    h_max = max(values)
    assert all(v > 0.05 * h_max for v in values)


def test_classify_clean_hierarchy_is_silent():
    assert classify(_betti(1, 0, 0), 0.0, (True, False, False)) == []


def test_classify_single_loop():
    hints = classify(_betti(1, 1, 0), 0.3, (True, True, False))
    assert any("non-reducible cycle (loop)" in h for h in hints)
    assert any("harmonic stress" in h for h in hints)


def test_classify_running_example_pattern():
    hints = classify(_betti(3, 3, 0), 0.02, (True, True, False))
    text = " ".join(hints)
    assert "disconnected" in text
    assert "unorchestrated" in text


def test_classify_saga_surface():
    hints = classify(_betti(1, 0, 1), 0.0, (True, False, True))
    assert any("saga" in h for h in hints)


def test_classify_exhaustive_flag_table():
    for beta0, beta1, beta2, stress, flags in itertools.product(
        (1, 2, 3), (0, 1, 3), (0, 1), (0.0, 0.4), itertools.product((False, True), repeat=3)
    ):
        b = _betti(beta0, beta1, beta2)
        first = classify(b, stress, tuple(flags))
        second = classify(b, stress, tuple(flags))
        assert first == second  # pure function of its inputs
        text = " ".join(first)
        if beta2 == 0 or not flags[2]:
            assert "saga" not in text
        if beta0 == 1:
            assert "disconnected" not in text
        if beta1 == 0 or not flags[1]:
            assert "non-reducible" not in text


def test_report_without_faces_never_emits_saga_hints():
    rng = np.random.default_rng(42)
    for _ in range(5):
        c = random_complex(rng, max_faces=0)
        rep = report(c, EdgeFlow(rng.standard_normal(c.num_edges)))
        assert not any("saga" in h for h in rep.classification_hints)


def test_report_flags_covariance_convention():
    from hodgefaas import NodeMetricSeries, covariance_flow

    c = build_complex(TRIANGLE)
    series = NodeMetricSeries(
        samples={"a": [1.0, 2.0, 4.0], "b": [2.0, 1.0, 3.0], "c": [0.0, 5.0, 1.0]},
        metric_label="cpu",
    )
    rep = report(c, covariance_flow(c, series))
    assert any("orientation-symmetric" in h for h in rep.classification_hints)
    plain = report(c, EdgeFlow(np.ones(3)))
    assert not any("orientation-symmetric" in h for h in plain.classification_hints)


def test_compare_windows_constant_series():
    c = build_complex(THETA)
    flow = EdgeFlow(np.array([1.0, 1.0, 0.0, 0.0, -1.0]))
    reports = [report(c, flow, window_index=i) for i in range(3)]
    trend = compare_windows(reports)
    assert len(set(trend.energy_total)) == 1
    assert len(set(trend.stress)) == 1
    assert trend.structure_change_windows == ()


def test_compare_windows_scaling_keeps_support():
    c = build_complex(THETA)
    base = np.array([1.0, 1.0, 0.0, 0.0, -1.0])
    reports = [
        report(c, EdgeFlow(base), window_index=0),
        report(c, EdgeFlow(3.0 * base), window_index=1),
    ]
    trend = compare_windows(reports)
    assert trend.energy_total[1] == pytest.approx(9.0 * trend.energy_total[0])
    assert trend.support_sets[0] == trend.support_sets[1]
    assert trend.structure_change_windows == ()


def test_compare_windows_flags_new_harmonic_cycle():
    c = build_complex(THETA)
    cycle_a = np.array([1.0, 1.0, 0.0, 0.0, -1.0])
    cycle_b = np.array([0.0, 0.0, 1.0, 1.0, -1.0])
    flows = [cycle_a, 2.0 * cycle_a, cycle_a, cycle_a + cycle_b]
    reports = [report(c, EdgeFlow(v), window_index=i) for i, v in enumerate(flows)]
    trend = compare_windows(reports)
    assert trend.structure_change_windows == (3,)


def test_compare_windows_rejects_mixed_complexes():
    theta_report = report(build_complex(THETA), EdgeFlow(np.ones(5)))
    triangle_report = report(build_complex(TRIANGLE), EdgeFlow(np.ones(3)))
    with pytest.raises(ValueError, match="different edge set"):
        compare_windows([theta_report, triangle_report])
    with pytest.raises(ValueError, match="at least 2"):
        compare_windows([theta_report])
