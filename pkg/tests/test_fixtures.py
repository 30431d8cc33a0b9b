from __future__ import annotations

import numpy as np
import pytest

from hodgefaas import betti, connected_components, decompose, harmonic_basis
from hodgefaas.fixtures import (
    CATALOG_VERSION,
    ExpectedTopology,
    FixtureCatalog,
    abnormal_workload,
    catalog,
    checkout_coldstart,
    micro_fixtures,
    running_example,
)


def test_micro_catalog_contents():
    cat = micro_fixtures()
    assert cat.version == CATALOG_VERSION
    assert set(cat.complexes) == {
        "unfilled_triangle",
        "filled_triangle",
        "theta",
        "square_saga",
        "triangle_isolated",
    }


@pytest.mark.parametrize(
    "name, expected",
    [
        ("unfilled_triangle", (1, 1, 0)),
        ("filled_triangle", (1, 0, 0)),
        ("theta", (1, 2, 0)),
        ("square_saga", (1, 0, 0)),
        ("triangle_isolated", (3, 1, 0)),
    ],
)
def test_micro_fixture_invariants(name, expected):
    cat = micro_fixtures()
    c = cat.complexes[name]
    b = betti(c)
    assert b.as_tuple() == expected
    assert len(harmonic_basis(c)) == cat.expected[name].harmonic_dim


def test_catalog_is_self_verifying():
    cat = micro_fixtures()
    bad_expected = dict(cat.expected)
    bad_expected["theta"] = ExpectedTopology(1, 5, 0, 5)
    with pytest.raises(RuntimeError, match="theta"):
        FixtureCatalog(
            version=cat.version,
            complexes=cat.complexes,
            expected=bad_expected,
            flows=cat.flows,
            workloads={},
            coldstarts={},
        )


def test_catalog_rejects_missing_expectations():
    cat = micro_fixtures()
    partial = {k: v for k, v in cat.expected.items() if k != "theta"}
    with pytest.raises(RuntimeError, match="no expected invariants"):
        FixtureCatalog(
            version=cat.version,
            complexes=cat.complexes,
            expected=partial,
            flows={},
            workloads={},
            coldstarts={},
        )


def test_named_flows_index_their_complexes():
    cat = micro_fixtures()
    for name, (complex_name, flow) in cat.flows.items():
        c = cat.complexes[complex_name]
        assert len(flow.values) == c.num_edges, name


def test_circulation_flow_is_harmonic_on_unfilled_triangle():
    cat = micro_fixtures()
    complex_name, flow = cat.flows["unfilled_triangle_circulation"]
    d = decompose(cat.complexes[complex_name], flow)
    assert d.energy_harm == pytest.approx(d.energy_total)


def test_running_example_scenario_facts():
    c = running_example()
    assert betti(c).as_tuple() == (3, 3, 0)
    assert connected_components(c) == 3
    assert len(harmonic_basis(c)) == 3
    assert set(c.isolated_node_ids()) == {"getOrderStatus", "getOrderHistory"}
    attested = [
        "api->auth",
        "processPayment->validatePayment",
        "processPayment->cancelOrder",
        "cancelOrder->updateInventory",
        "updateInventory->syncInventory",
    ]
    for edge_id in attested:
        assert edge_id in c.edge_index
    assert {f.id for f in c.faces} == {"saga_checkout", "saga_fulfillment"}


def test_full_catalog_includes_running_example_and_specs():
    cat = catalog()
    assert "running_example" in cat.complexes
    assert cat.expected["running_example"].beta1 == 3
    assert "abnormal" in cat.workloads
    assert "checkout" in cat.coldstarts


def test_bundled_specs_reference_real_cells():
    c = running_example()
    for edge_id in abnormal_workload().edge_increments:
        assert edge_id in c.edge_index
    for node_id in checkout_coldstart().cold_latency:
        assert node_id in c.node_index


def test_fixture_complexes_are_independent_instances():
    assert running_example() is not running_example()
    values = micro_fixtures().flows["unfilled_triangle_circulation"][1].values
    assert np.array_equal(values, np.ones(3))
