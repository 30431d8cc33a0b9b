"""Bundled fixtures: the e-commerce running example and closed-form
micro-complexes with hand-checked invariants.

Fixtures live as JSON data files in the same formats the CLI accepts
(see ``data/README.md`` for what is scenario-fixed versus constructed
wiring in the running example). Catalogs are self-verifying: stored
expected invariants are recomputed at load time and a mismatch raises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib.resources import files
from typing import Any, Mapping

from .cells import CellComplex, build_complex
from .flows import (
    ColdStartSpec,
    WorkloadSpec,
    parse_coldstart_spec,
    parse_workload_spec,
)
from .hodge import EdgeFlow, parse_flow
from .linalg import RankTolerance
from .topology import betti, harmonic_basis

__all__ = [
    "CATALOG_VERSION",
    "ExpectedTopology",
    "FixtureCatalog",
    "running_example",
    "micro_fixtures",
    "catalog",
    "abnormal_workload",
    "checkout_coldstart",
]

CATALOG_VERSION = "1"

_MICRO_EXPECTED = {
    "unfilled_triangle": (1, 1, 0, 1),
    "filled_triangle": (1, 0, 0, 0),
    "theta": (1, 2, 0, 2),
    "square_saga": (1, 0, 0, 0),
    "triangle_isolated": (3, 1, 0, 1),
}
_RUNNING_EXPECTED = (3, 3, 0, 3)


@dataclass(frozen=True)
class ExpectedTopology:
    beta0: int
    beta1: int
    beta2: int
    harmonic_dim: int


@dataclass(frozen=True)
class FixtureCatalog:
    """Named complexes, flows, and specs with pinned expected invariants."""

    version: str
    complexes: Mapping[str, CellComplex]
    expected: Mapping[str, ExpectedTopology]
    flows: Mapping[str, tuple[str, EdgeFlow]]
    workloads: Mapping[str, WorkloadSpec]
    coldstarts: Mapping[str, ColdStartSpec]

    def __post_init__(self) -> None:
        tol = RankTolerance()
        for name, c in self.complexes.items():
            exp = self.expected.get(name)
            if exp is None:
                raise RuntimeError(f"fixture '{name}' has no expected invariants")
            got = betti(c, tol)
            if got.as_tuple() != (exp.beta0, exp.beta1, exp.beta2):
                raise RuntimeError(
                    f"fixture '{name}': stored Betti {exp.beta0, exp.beta1, exp.beta2} "
                    f"!= recomputed {got.as_tuple()}"
                )
            dim = len(harmonic_basis(c, tol))
            if dim != exp.harmonic_dim:
                raise RuntimeError(
                    f"fixture '{name}': stored harmonic dim {exp.harmonic_dim} "
                    f"!= recomputed {dim}"
                )


def _load_data(name: str) -> Any:
    return json.loads(files("hodgefaas").joinpath("data", name).read_text(encoding="utf-8"))


def running_example() -> CellComplex:
    """The e-commerce service complex with Betti numbers (3, 3, 0)."""
    return build_complex(_load_data("running_example.json"))


def abnormal_workload() -> WorkloadSpec:
    """Canonical boosted Poisson workload for the running example."""
    return parse_workload_spec(_load_data("workload_abnormal.json"))


def checkout_coldstart() -> ColdStartSpec:
    """Cold checkout functions: processPayment, validatePayment, syncInventory."""
    return parse_coldstart_spec(_load_data("coldstart_checkout.json"))


def micro_fixtures() -> FixtureCatalog:
    """The closed-form micro-complexes, self-verified on load."""
    complexes = {
        name: build_complex(_load_data(f"{name}.json")) for name in _MICRO_EXPECTED
    }
    expected = {
        name: ExpectedTopology(*values) for name, values in _MICRO_EXPECTED.items()
    }
    circulation = _load_data("flow_triangle_circulation.json")
    flows = {
        "unfilled_triangle_circulation": (
            "unfilled_triangle",
            parse_flow(complexes["unfilled_triangle"], circulation),
        ),
        "filled_triangle_circulation": (
            "filled_triangle",
            parse_flow(complexes["filled_triangle"], circulation),
        ),
    }
    return FixtureCatalog(
        version=CATALOG_VERSION,
        complexes=complexes,
        expected=expected,
        flows=flows,
        workloads={},
        coldstarts={},
    )


def catalog() -> FixtureCatalog:
    """Everything bundled: micro fixtures plus the running example and specs."""
    micro = micro_fixtures()
    complexes = dict(micro.complexes)
    complexes["running_example"] = running_example()
    expected = dict(micro.expected)
    expected["running_example"] = ExpectedTopology(*_RUNNING_EXPECTED)
    return FixtureCatalog(
        version=CATALOG_VERSION,
        complexes=complexes,
        expected=expected,
        flows=dict(micro.flows),
        workloads={"abnormal": abnormal_workload()},
        coldstarts={"checkout": checkout_coldstart()},
    )
