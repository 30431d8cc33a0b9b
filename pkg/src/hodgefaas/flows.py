"""Edge-flow generation and derivation.

Covers the three ways telemetry becomes a 1-cochain: synthetic Poisson
request workloads with per-edge rate increments, flows derived from
node-level metrics (relative differences, covariances, tail-weighted
products), and cold-start latency flows obtained by weighting request
counts with the extra latency of cold target functions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .cells import CellComplex
from .errors import FormatError
from .hodge import EdgeFlow

__all__ = [
    "WorkloadSpec",
    "ColdStartSpec",
    "NodeMetricSeries",
    "poisson_flow",
    "node_diff_flow",
    "covariance_flow",
    "weighted_flow",
    "coldstart_flow",
    "node_vector",
    "parse_workload_spec",
    "parse_coldstart_spec",
    "load_workload_spec",
    "load_coldstart_spec",
]


@dataclass(frozen=True)
class WorkloadSpec:
    """Poisson request workload: base rate per window plus per-edge boosts."""

    base_rate: float
    edge_increments: Mapping[str, float] = field(default_factory=dict)
    seed: int = 0
    windows: int = 1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.base_rate) and self.base_rate > 0):
            raise ValueError(f"base_rate must be finite and > 0, got {self.base_rate}")
        for edge_id, delta in self.edge_increments.items():
            if not (math.isfinite(delta) and delta >= 0):
                raise ValueError(
                    f"edge increment for '{edge_id}' must be finite and >= 0, got {delta}"
                )
        if self.windows < 1:
            raise ValueError(f"windows must be >= 1, got {self.windows}")


@dataclass(frozen=True)
class ColdStartSpec:
    """Extra latency (ms) of cold functions, keyed by node id; absent = warm."""

    cold_latency: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for node_id, latency in self.cold_latency.items():
            if not (math.isfinite(latency) and latency >= 0):
                raise ValueError(
                    f"cold latency for '{node_id}' must be finite and >= 0, got {latency}"
                )


@dataclass(frozen=True)
class NodeMetricSeries:
    """Per-node time series of one metric, equal lengths, >= 2 samples."""

    samples: Mapping[str, Sequence[float]]
    metric_label: str = ""

    def __post_init__(self) -> None:
        lengths = {len(series) for series in self.samples.values()}
        if len(lengths) > 1:
            raise ValueError(f"series lengths differ across nodes: {sorted(lengths)}")
        if lengths and min(lengths) < 2:
            raise ValueError("each node series needs at least 2 samples for covariance")
        for node_id, series in self.samples.items():
            if not all(math.isfinite(x) for x in series):
                raise ValueError(f"series for '{node_id}' contains non-finite values")


def poisson_flow(c: CellComplex, w: WorkloadSpec) -> list[EdgeFlow]:
    """One Poisson-distributed request flow per window.

    Each edge draws from Poisson(base_rate + increment). Windows use
    independent substreams derived from (seed, window index), so the
    output is reproducible for a fixed seed and windows may be generated
    concurrently without changing the result.
    """
    unknown = [edge_id for edge_id in w.edge_increments if edge_id not in c.edge_index]
    if unknown:
        raise ValueError(f"edge increments reference unknown edge ids: {sorted(unknown)}")
    rates = np.full(c.num_edges, float(w.base_rate))
    for edge_id, delta in w.edge_increments.items():
        rates[c.edge_index[edge_id]] += float(delta)
    seed = int(w.seed) & 0xFFFFFFFFFFFFFFFF
    flows = []
    for window in range(w.windows):
        rng = np.random.default_rng([seed, window])
        counts = rng.poisson(rates).astype(np.float64)
        flows.append(EdgeFlow(counts, metric_label="requests/T"))
    return flows


def node_diff_flow(c: CellComplex, x: np.ndarray) -> EdgeFlow:
    """Relative node-metric difference on each edge.

    For edge i -> j the value is (x_i - x_j) / max(x_i, x_j), which lies
    in [-1, 1]; when both endpoint metrics are zero the edge gets 0.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (c.num_nodes,):
        raise ValueError(f"expected {c.num_nodes} node values, got shape {x.shape}")
    if np.any(x < 0):
        raise ValueError("node metric values must be non-negative")
    tails, heads = c.edge_endpoint_indices()
    xi, xj = x[tails], x[heads]
    denom = np.maximum(xi, xj)
    values = np.zeros(c.num_edges)
    nonzero = denom > 0
    values[nonzero] = (xi[nonzero] - xj[nonzero]) / denom[nonzero]
    return EdgeFlow(values, metric_label="relative node difference")


def covariance_flow(c: CellComplex, s: NodeMetricSeries) -> EdgeFlow:
    """Sample covariance (n-1 denominator) of tail and head series per edge.

    Covariance is symmetric while 1-cochains are alternating; the value
    is stored on the canonical orientation, so reversing an edge leaves
    its stored magnitude unchanged.
    """
    endpoints = {e.tail for e in c.edges} | {e.head for e in c.edges}
    missing = sorted(endpoints - set(s.samples))
    if missing:
        raise ValueError(f"metric series missing for nodes: {missing}")
    unknown = sorted(n for n in s.samples if n not in c.node_index)
    if unknown:
        raise ValueError(f"metric series reference unknown node ids: {unknown}")
    values = np.zeros(c.num_edges)
    for i, edge in enumerate(c.edges):
        a = np.asarray(s.samples[edge.tail], dtype=np.float64)
        b = np.asarray(s.samples[edge.head], dtype=np.float64)
        values[i] = float(np.cov(a, b, ddof=1)[0, 1])
    label = f"cov({s.metric_label})" if s.metric_label else "covariance"
    return EdgeFlow(values, metric_label=label)


def weighted_flow(c: CellComplex, y: EdgeFlow, x: np.ndarray) -> EdgeFlow:
    """Edge metric weighted by the caller's node metric: y(e) * x(tail(e))."""
    if len(y.values) != c.num_edges:
        raise ValueError(
            f"edge flow has {len(y.values)} values but the complex has {c.num_edges} edges"
        )
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (c.num_nodes,):
        raise ValueError(f"expected {c.num_nodes} node values, got shape {x.shape}")
    tails, _ = c.edge_endpoint_indices()
    return EdgeFlow(y.values * x[tails], metric_label=y.metric_label)


def coldstart_flow(c: CellComplex, f_req: EdgeFlow, cs: ColdStartSpec) -> EdgeFlow:
    """Cold-start latency flow: request counts times target-node latency.

    Cold start is a node property whose cost lands on the calls into the
    node, so each edge is weighted by the cold latency of its head (0
    when warm) and multiplied entrywise with the request flow.
    """
    if len(f_req.values) != c.num_edges:
        raise ValueError(
            f"request flow has {len(f_req.values)} values but the complex has "
            f"{c.num_edges} edges"
        )
    unknown = sorted(n for n in cs.cold_latency if n not in c.node_index)
    if unknown:
        raise ValueError(f"cold-start spec references unknown node ids: {unknown}")
    weights = np.array(
        [float(cs.cold_latency.get(e.head, 0.0)) for e in c.edges], dtype=np.float64
    )
    return EdgeFlow(f_req.values * weights, metric_label="ms·requests/T")


def node_vector(
    c: CellComplex, values: Mapping[str, float], default: float | None = None
) -> np.ndarray:
    """Node-id-keyed mapping to a vector in node declaration order.

    With ``default=None`` every node must be present; otherwise absent
    nodes take the default. Unknown ids are always rejected.
    """
    unknown = sorted(n for n in values if n not in c.node_index)
    if unknown:
        raise ValueError(f"unknown node ids: {unknown}")
    out = np.zeros(c.num_nodes)
    for i, node in enumerate(c.nodes):
        if node.id in values:
            out[i] = float(values[node.id])
        elif default is None:
            raise ValueError(f"missing value for node '{node.id}'")
        else:
            out[i] = default
    return out


def _load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _check_fields(doc: Any, allowed: set[str], what: str) -> Mapping[str, Any]:
    if not isinstance(doc, Mapping):
        raise FormatError(f"{what} must be an object")
    for key in doc:
        if key not in allowed:
            raise FormatError(f"unknown field '{key}' in {what}")
    return doc


def parse_workload_spec(doc: Any) -> WorkloadSpec:
    doc = _check_fields(
        doc, {"base_rate", "edge_increments", "seed", "windows"}, "workload spec"
    )
    try:
        return WorkloadSpec(
            base_rate=float(doc.get("base_rate", 0.0)),
            edge_increments=dict(doc.get("edge_increments", {})),
            seed=int(doc.get("seed", 0)),
            windows=int(doc.get("windows", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def parse_coldstart_spec(doc: Any) -> ColdStartSpec:
    doc = _check_fields(doc, {"cold_latency"}, "cold-start spec")
    try:
        return ColdStartSpec(cold_latency=dict(doc.get("cold_latency", {})))
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def load_workload_spec(path: str | Path) -> WorkloadSpec:
    return parse_workload_spec(_load_json(path))


def load_coldstart_spec(path: str | Path) -> ColdStartSpec:
    return parse_coldstart_spec(_load_json(path))
