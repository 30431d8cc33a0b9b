"""Hodge decomposition of edge flows.

An observed edge flow splits orthogonally into three parts:

* a gradient component induced by node potentials (im B1^T): load
  explainable by pairwise imbalance, removable by local rebalancing;
* a curl component circulating inside declared faces (im B2): load
  bound to sagas/workflows;
* a harmonic residual (ker L1): divergence-free, face-free circulation
  around topological holes, which no local action can remove.

The solve path: node potentials from the degree-0 Laplacian system via
minimal-norm least squares (both Laplacians are singular by
construction), face potentials likewise from the degree-2 system, and
the harmonic part as the residual. The residual route is numerically
stable and avoids building an explicit null-space basis.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Mapping, NamedTuple

import numpy as np

from .cells import CellComplex, incidence_edge_face, incidence_node_edge
from .errors import FormatError, NumericalInconsistencyError
from .linalg import RankTolerance, min_norm_lstsq

__all__ = [
    "EdgeFlow",
    "NodePotential",
    "FaceCochain",
    "HodgeDecomposition",
    "EquivalenceResult",
    "decompose",
    "project",
    "harmonic_stress",
    "flows_equivalent",
    "load_flow",
    "parse_flow",
    "flow_to_doc",
    "dump_flow",
]

RECONSTRUCTION_RTOL = 1e-10
ORTHOGONALITY_RTOL = 1e-8
HARMONIC_CONDITION_RTOL = 1e-8


def _frozen_values(values: Any, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{what} values must be a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class EdgeFlow:
    """Real-valued 1-cochain indexed by edge declaration order.

    Values are relative to each edge's canonical orientation; a negative
    entry is flow against the declared direction.
    """

    values: np.ndarray
    metric_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_values(self.values, "edge flow"))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class NodePotential:
    """Real-valued 0-cochain indexed by node declaration order."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_values(self.values, "node potential"))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class FaceCochain:
    """Real-valued 2-cochain indexed by face declaration order."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_values(self.values, "face cochain"))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class HodgeDecomposition:
    """Orthogonal split of a flow plus its potentials and energy budget."""

    f_grad: EdgeFlow
    f_curl: EdgeFlow
    harmonic: EdgeFlow
    phi: NodePotential
    psi: FaceCochain
    energy_grad: float
    energy_curl: float
    energy_harm: float
    energy_total: float
    reconstruction_residual: float


class EquivalenceResult(NamedTuple):
    equivalent: bool
    harmonic_residual: float


def _check_indexed(c: CellComplex, f: EdgeFlow) -> np.ndarray:
    if len(f.values) != c.num_edges:
        raise ValueError(
            f"flow has {len(f.values)} values but the complex has {c.num_edges} edges"
        )
    return f.values


def decompose(
    c: CellComplex, f: EdgeFlow, tol: RankTolerance = RankTolerance()
) -> HodgeDecomposition:
    """Split ``f`` into gradient, curl, and harmonic components.

    Postconditions are verified before returning: the three parts sum
    back to ``f``, are mutually orthogonal, their energies add up to the
    total, and the harmonic part is divergence-free and face-free. A
    violation raises :class:`NumericalInconsistencyError`, signalling a
    tolerance failure rather than a property of the input.
    """
    values = _check_indexed(c, f)
    b1 = incidence_node_edge(c).astype(np.float64)
    b2 = incidence_edge_face(c).astype(np.float64)

    phi = min_norm_lstsq(b1 @ b1.T, b1 @ values, tol)
    f_grad = b1.T @ phi
    psi = min_norm_lstsq(b2.T @ b2, b2.T @ values, tol)
    f_curl = b2 @ psi
    harmonic = values - f_grad - f_curl

    energy_grad = float(f_grad @ f_grad)
    energy_curl = float(f_curl @ f_curl)
    energy_harm = float(harmonic @ harmonic)
    energy_total = float(values @ values)
    flow_scale = 1.0 + float(np.linalg.norm(values))
    residual = float(np.linalg.norm(values - (f_grad + f_curl + harmonic)))

    if residual > RECONSTRUCTION_RTOL * flow_scale:
        raise NumericalInconsistencyError(
            f"components do not reconstruct the flow: residual {residual:.3e}"
        )
    energy_tol = ORTHOGONALITY_RTOL * energy_total
    for name, inner in (
        ("gradient/curl", float(f_grad @ f_curl)),
        ("gradient/harmonic", float(f_grad @ harmonic)),
        ("curl/harmonic", float(f_curl @ harmonic)),
    ):
        if abs(inner) > energy_tol:
            raise NumericalInconsistencyError(
                f"{name} components are not orthogonal: inner product {inner:.3e}"
            )
    if abs(energy_grad + energy_curl + energy_harm - energy_total) > energy_tol:
        raise NumericalInconsistencyError("component energies do not sum to the total")
    condition_tol = HARMONIC_CONDITION_RTOL * flow_scale
    div = float(np.max(np.abs(b1 @ harmonic))) if c.num_edges else 0.0
    circ = float(np.max(np.abs(b2.T @ harmonic))) if c.num_faces else 0.0
    if div > condition_tol or circ > condition_tol:
        raise NumericalInconsistencyError(
            f"harmonic residual violates divergence/circulation bounds "
            f"(|div|={div:.3e}, |circ|={circ:.3e})"
        )

    return HodgeDecomposition(
        f_grad=EdgeFlow(f_grad, f.metric_label),
        f_curl=EdgeFlow(f_curl, f.metric_label),
        harmonic=EdgeFlow(harmonic, f.metric_label),
        phi=NodePotential(phi),
        psi=FaceCochain(psi),
        energy_grad=energy_grad,
        energy_curl=energy_curl,
        energy_harm=energy_harm,
        energy_total=energy_total,
        reconstruction_residual=residual,
    )


def project(
    c: CellComplex,
    f: EdgeFlow,
    which: Literal["gradient", "curl", "harmonic"],
    tol: RankTolerance = RankTolerance(),
) -> EdgeFlow:
    """Orthogonal projection of ``f`` onto the named component subspace."""
    d = decompose(c, f, tol)
    try:
        return {"gradient": d.f_grad, "curl": d.f_curl, "harmonic": d.harmonic}[which]
    except KeyError:
        raise ValueError(
            f"unknown component '{which}', expected gradient, curl or harmonic"
        ) from None


def harmonic_stress(d: HodgeDecomposition) -> float:
    """Fraction of the flow's energy that is harmonic, in [0, 1].

    A zero flow carries no stress; it is reported as 0 with a warning
    since the ratio is formally undefined there.
    """
    if d.energy_total <= 0.0:
        warnings.warn("zero flow: harmonic stress defined as 0", UserWarning, stacklevel=2)
        return 0.0
    return min(d.energy_harm / d.energy_total, 1.0)


def flows_equivalent(
    c: CellComplex,
    f1: EdgeFlow,
    f2: EdgeFlow,
    eps: float = 1e-8,
    tol: RankTolerance = RankTolerance(),
) -> EquivalenceResult:
    """Whether two flows differ only by gradient and curl parts.

    Flows are equivalent when the harmonic component of their difference
    vanishes: structurally they load the same holes, so they call for the
    same architectural response.
    """
    v1 = _check_indexed(c, f1)
    v2 = _check_indexed(c, f2)
    diff = EdgeFlow(v1 - v2)
    h = project(c, diff, "harmonic", tol)
    residual = float(np.linalg.norm(h.values))
    scale = 1.0 + float(np.linalg.norm(diff.values))
    return EquivalenceResult(equivalent=residual <= eps * scale, harmonic_residual=residual)


def parse_flow(c: CellComplex, doc: Mapping[str, Any]) -> EdgeFlow:
    """Build an edge flow from a parsed flow document.

    Edges absent from ``values`` default to 0.0 (with a warning); edge
    ids not present in the complex are rejected.
    """
    if not isinstance(doc, Mapping):
        raise FormatError("flow document must be an object")
    for key in doc:
        if key not in ("metric", "values"):
            raise FormatError(f"unknown field '{key}' in flow document")
    raw = doc.get("values", {})
    if not isinstance(raw, Mapping):
        raise FormatError("flow 'values' must be an object keyed by edge id")
    unknown = [edge_id for edge_id in raw if edge_id not in c.edge_index]
    if unknown:
        raise FormatError(f"flow references unknown edge ids: {sorted(unknown)}")
    values = np.zeros(c.num_edges)
    for edge_id, value in raw.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise FormatError(f"flow value for edge '{edge_id}' must be a number")
        values[c.edge_index[edge_id]] = float(value)
    missing = [e.id for e in c.edges if e.id not in raw]
    if missing:
        warnings.warn(
            f"flow omits {len(missing)} edge(s), defaulting to 0.0: {missing}",
            UserWarning,
            stacklevel=2,
        )
    metric = doc.get("metric", "")
    if not isinstance(metric, str):
        raise FormatError("flow 'metric' must be a string")
    return EdgeFlow(values, metric_label=metric)


def load_flow(c: CellComplex, path: str | Path) -> EdgeFlow:
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_flow(c, doc)


def flow_to_doc(c: CellComplex, f: EdgeFlow) -> dict[str, Any]:
    """Serialize a flow to its document form, edges in declaration order."""
    values = _check_indexed(c, f)
    return {
        "metric": f.metric_label,
        "values": {edge.id: float(values[i]) for i, edge in enumerate(c.edges)},
    }


def dump_flow(c: CellComplex, f: EdgeFlow, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(flow_to_doc(c, f), handle, indent=2)
        handle.write("\n")
