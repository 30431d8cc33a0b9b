"""Oriented cellular complexes for service call graphs.

A complex is built from a declarative description: named nodes
(functions), directed edges (calls) stored once in a canonical
orientation, and faces (sagas / multi-function workflows) attached along
closed chains of edges. Declaration order is significant: it fixes the
row/column indexing of every matrix derived downstream.

Cochain values on an edge are always expressed relative to the canonical
orientation; a negative value means flow against the declared direction.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ComplexValidationError, FormatError

__all__ = [
    "Node",
    "Edge",
    "Face",
    "CellComplex",
    "IncidenceMatrices",
    "build_complex",
    "load_complex",
    "incidence_node_edge",
    "incidence_edge_face",
    "incidence",
    "laplacian",
]


@dataclass(frozen=True)
class Node:
    id: str
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class CellComplex:
    """Validated, immutable cellular complex.

    Construction runs full structural validation and raises
    :class:`ComplexValidationError` listing every violation, so any
    instance in circulation satisfies the invariants: endpoints exist,
    no self-loops, no duplicate (tail, head) pairs, and every face
    boundary is a closed chain of at least 3 distinct edges.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...] = ()
    node_index: dict[str, int] = field(init=False, repr=False, compare=False)
    edge_index: dict[str, int] = field(init=False, repr=False, compare=False)
    face_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "faces", tuple(self.faces))
        findings: list[str] = []

        node_index: dict[str, int] = {}
        for i, node in enumerate(self.nodes):
            if node.id in node_index:
                findings.append(f"duplicate node id '{node.id}'")
            else:
                node_index[node.id] = i

        edge_index: dict[str, int] = {}
        seen_pairs: dict[tuple[str, str], str] = {}
        for i, edge in enumerate(self.edges):
            if edge.id in edge_index:
                findings.append(f"duplicate edge id '{edge.id}'")
                continue
            edge_index[edge.id] = i
            for endpoint, role in ((edge.tail, "tail"), (edge.head, "head")):
                if endpoint not in node_index:
                    findings.append(
                        f"edge '{edge.id}': {role} '{endpoint}' is not a declared node"
                    )
            if edge.tail == edge.head:
                findings.append(f"edge '{edge.id}': self-loop on node '{edge.tail}'")
            pair = (edge.tail, edge.head)
            if pair in seen_pairs:
                findings.append(
                    f"edge '{edge.id}': duplicate pair {pair} already declared as "
                    f"'{seen_pairs[pair]}'"
                )
            else:
                seen_pairs[pair] = edge.id

        face_index: dict[str, int] = {}
        for i, face in enumerate(self.faces):
            if face.id in face_index:
                findings.append(f"duplicate face id '{face.id}'")
                continue
            face_index[face.id] = i
            findings.extend(self._validate_face(face, edge_index))

        object.__setattr__(self, "node_index", node_index)
        object.__setattr__(self, "edge_index", edge_index)
        object.__setattr__(self, "face_index", face_index)
        if findings:
            raise ComplexValidationError(findings)

    def _validate_face(self, face: Face, edge_index: dict[str, int]) -> list[str]:
        findings: list[str] = []
        if len(face.boundary) < 3:
            findings.append(
                f"face '{face.id}': boundary has {len(face.boundary)} edges, need >= 3"
            )
        seen_edges: set[str] = set()
        walk: list[str] = []
        broken = False
        for edge_id, sign in face.boundary:
            if sign not in (1, -1):
                findings.append(
                    f"face '{face.id}': edge '{edge_id}' has sign {sign}, must be +1 or -1"
                )
                broken = True
                continue
            if edge_id not in edge_index:
                findings.append(
                    f"face '{face.id}': boundary references unknown edge '{edge_id}'"
                )
                broken = True
                continue
            if edge_id in seen_edges:
                findings.append(
                    f"face '{face.id}': edge '{edge_id}' appears twice in the boundary"
                )
                broken = True
                continue
            seen_edges.add(edge_id)
            edge = self.edges[edge_index[edge_id]]
            src, dst = (edge.tail, edge.head) if sign == 1 else (edge.head, edge.tail)
            if walk and walk[-1] != src:
                findings.append(
                    f"face '{face.id}' does not close: edge '{edge_id}' continues from "
                    f"'{src}' but the walk is at '{walk[-1]}'"
                )
                broken = True
                break
            if not walk:
                walk.append(src)
            walk.append(dst)
        if not broken and len(walk) > 1:
            if walk[-1] != walk[0]:
                findings.append(
                    f"face '{face.id}' does not close: walk ends at '{walk[-1]}' "
                    f"but started at '{walk[0]}'"
                )
            else:
                interior = walk[:-1]
                if len(set(interior)) != len(interior):
                    warnings.warn(
                        f"face '{face.id}' traverses a node more than once "
                        f"(non-simple closed chain)",
                        UserWarning,
                        stacklevel=4,
                    )
        return findings

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def node_ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge_endpoint_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """(tail_indices, head_indices) arrays aligned with edge order."""
        tails = np.array([self.node_index[e.tail] for e in self.edges], dtype=np.intp)
        heads = np.array([self.node_index[e.head] for e in self.edges], dtype=np.intp)
        return tails, heads

    def isolated_node_ids(self) -> tuple[str, ...]:
        touched = {e.tail for e in self.edges} | {e.head for e in self.edges}
        return tuple(n.id for n in self.nodes if n.id not in touched)


@dataclass(frozen=True)
class IncidenceMatrices:
    """Signed node-edge (b1) and edge-face (b2) incidence, integer entries."""

    b1: np.ndarray
    b2: np.ndarray


def _parse_record(record: Any, allowed: dict[str, bool], what: str) -> dict[str, Any]:
    """Check a JSON object against allowed fields (name -> required)."""
    if not isinstance(record, Mapping):
        raise FormatError(f"{what} must be an object, got {type(record).__name__}")
    for key in record:
        if key not in allowed:
            raise FormatError(f"unknown field '{key}' in {what}")
    for key, required in allowed.items():
        if required and key not in record:
            raise FormatError(f"missing field '{key}' in {what}")
    return dict(record)


def _require_str(value: Any, what: str) -> str:
    if not isinstance(value, str) or not value:
        raise FormatError(f"{what} must be a non-empty string, got {value!r}")
    return value


def build_complex(description: Mapping[str, Any]) -> CellComplex:
    """Build a validated complex from a parsed description document.

    Raises :class:`FormatError` for malformed documents and
    :class:`ComplexValidationError` for structural violations.
    """
    doc = _parse_record(description, {"nodes": True, "edges": False, "faces": False},
                        "complex description")

    nodes = []
    for raw in doc.get("nodes", []):
        rec = _parse_record(raw, {"id": True, "label": False}, "node record")
        label = rec.get("label")
        if label is not None:
            label = _require_str(label, "node 'label'")
        nodes.append(Node(id=_require_str(rec["id"], "node 'id'"), label=label))

    edges = []
    for raw in doc.get("edges", []):
        rec = _parse_record(raw, {"id": True, "tail": True, "head": True}, "edge record")
        edges.append(
            Edge(
                id=_require_str(rec["id"], "edge 'id'"),
                tail=_require_str(rec["tail"], "edge 'tail'"),
                head=_require_str(rec["head"], "edge 'head'"),
            )
        )

    faces = []
    for raw in doc.get("faces", []):
        rec = _parse_record(raw, {"id": True, "boundary": True}, "face record")
        face_id = _require_str(rec["id"], "face 'id'")
        boundary = []
        if not isinstance(rec["boundary"], (list, tuple)):
            raise FormatError(f"face '{face_id}': 'boundary' must be a list")
        for entry in rec["boundary"]:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise FormatError(
                    f"face '{face_id}': boundary entries must be [edgeId, sign] pairs"
                )
            edge_id, sign = entry
            edge_id = _require_str(edge_id, f"face '{face_id}' boundary edge id")
            if not isinstance(sign, int) or isinstance(sign, bool):
                raise FormatError(
                    f"face '{face_id}': sign for edge '{edge_id}' must be an integer"
                )
            boundary.append((edge_id, sign))
        faces.append(Face(id=face_id, boundary=tuple(boundary)))

    return CellComplex(nodes=tuple(nodes), edges=tuple(edges), faces=tuple(faces))


def load_complex(path: str | Path) -> CellComplex:
    """Read a complex description JSON file and build the complex."""
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return build_complex(doc)


def incidence_node_edge(c: CellComplex) -> np.ndarray:
    """Node-edge incidence: +1 at the head of each edge, -1 at the tail."""
    b1 = np.zeros((c.num_nodes, c.num_edges), dtype=np.int64)
    for j, edge in enumerate(c.edges):
        b1[c.node_index[edge.tail], j] = -1
        b1[c.node_index[edge.head], j] = 1
    return b1


def incidence_edge_face(c: CellComplex) -> np.ndarray:
    """Edge-face incidence: the orientation sign of each boundary edge."""
    b2 = np.zeros((c.num_edges, c.num_faces), dtype=np.int64)
    for j, face in enumerate(c.faces):
        for edge_id, sign in face.boundary:
            b2[c.edge_index[edge_id], j] = sign
    return b2


def incidence(c: CellComplex) -> IncidenceMatrices:
    return IncidenceMatrices(b1=incidence_node_edge(c), b2=incidence_edge_face(c))


def laplacian(c: CellComplex, k: int) -> np.ndarray:
    """Combinatorial Hodge Laplacian of degree ``k`` as a dense float matrix.

    ``L0 = B1 B1^T`` acts on node values, ``L1 = B1^T B1 + B2 B2^T`` on
    edge flows, ``L2 = B2^T B2`` on face values. All three are symmetric
    positive semidefinite.
    """
    if k not in (0, 1, 2):
        raise ValueError(f"Laplacian degree must be 0, 1 or 2, got {k}")
    b1 = incidence_node_edge(c).astype(np.float64)
    b2 = incidence_edge_face(c).astype(np.float64)
    if k == 0:
        return b1 @ b1.T
    if k == 1:
        return b1.T @ b1 + b2 @ b2.T
    return b2.T @ b2
