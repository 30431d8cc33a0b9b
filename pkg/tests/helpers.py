"""Shared test utilities: random valid complexes, random flows, and an
exact-rational rank oracle independent of the SVD route."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from hodgefaas import CellComplex, EdgeFlow, build_complex


def random_complex(
    rng: np.random.Generator,
    max_nodes: int = 30,
    max_edges: int = 80,
    max_faces: int = 10,
) -> CellComplex:
    """A random valid complex within the given size bounds.

    Faces are generated first as simple cycles over distinct nodes
    (creating the edges they need, with random canonical orientations),
    then extra edges are sprinkled in, so every face boundary closes by
    construction.
    """
    n_nodes = int(rng.integers(3, max_nodes + 1))
    node_ids = [f"n{i}" for i in range(n_nodes)]
    pairs: dict[tuple[str, str], str] = {}
    edges: list[dict] = []

    def ensure_edge(a: str, b: str) -> tuple[str, int]:
        """Edge id and traversal sign for walking a -> b."""
        if (a, b) in pairs:
            return pairs[(a, b)], 1
        if (b, a) in pairs:
            return pairs[(b, a)], -1
        if rng.random() < 0.5:
            tail, head, sign = a, b, 1
        else:
            tail, head, sign = b, a, -1
        edge_id = f"e{len(edges)}"
        pairs[(tail, head)] = edge_id
        edges.append({"id": edge_id, "tail": tail, "head": head})
        return edge_id, sign

    faces = []
    for fi in range(int(rng.integers(0, max_faces + 1))):
        k = int(rng.integers(3, min(6, n_nodes) + 1))
        cycle = [node_ids[i] for i in rng.choice(n_nodes, size=k, replace=False)]
        boundary = []
        for j in range(k):
            edge_id, sign = ensure_edge(cycle[j], cycle[(j + 1) % k])
            boundary.append([edge_id, sign])
        faces.append({"id": f"f{fi}", "boundary": boundary})

    lo = min(n_nodes - 1, max_edges)
    target_edges = max(len(edges), int(rng.integers(lo, max_edges + 1)))
    attempts = 0
    while len(edges) < min(target_edges, max_edges) and attempts < 2000:
        attempts += 1
        i, j = rng.integers(0, n_nodes, size=2)
        if i == j:
            continue
        a, b = node_ids[int(i)], node_ids[int(j)]
        if (a, b) in pairs:
            continue
        edge_id = f"e{len(edges)}"
        pairs[(a, b)] = edge_id
        edges.append({"id": edge_id, "tail": a, "head": b})

    return build_complex(
        {"nodes": [{"id": nid} for nid in node_ids], "edges": edges, "faces": faces}
    )


def random_flow(rng: np.random.Generator, c: CellComplex, scale: float = 10.0) -> EdgeFlow:
    return EdgeFlow(scale * rng.standard_normal(c.num_edges))


def exact_rank(matrix: np.ndarray) -> int:
    """Rank of an integer matrix by Gaussian elimination over the rationals."""
    matrix = np.asarray(matrix)
    n_rows, n_cols = matrix.shape
    if n_rows == 0 or n_cols == 0:
        return 0
    rows = [[Fraction(int(x)) for x in row] for row in matrix]
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pivot_value = rows[rank][col]
        for r in range(n_rows):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / pivot_value
                rows[r] = [rows[r][cc] - factor * rows[rank][cc] for cc in range(n_cols)]
        rank += 1
        if rank == n_rows:
            break
    return rank


def make_synthetic(
    rng: np.random.Generator, n_nodes: int, n_edges: int, n_faces: int
) -> CellComplex:
    """A larger synthetic complex with exact edge/face counts for scale tests."""
    node_ids = [f"n{i}" for i in range(n_nodes)]
    pairs: dict[tuple[str, str], str] = {}
    edges: list[dict] = []

    def ensure_edge(a: str, b: str) -> tuple[str, int]:
        if (a, b) in pairs:
            return pairs[(a, b)], 1
        if (b, a) in pairs:
            return pairs[(b, a)], -1
        edge_id = f"e{len(edges)}"
        pairs[(a, b)] = edge_id
        edges.append({"id": edge_id, "tail": a, "head": b})
        return edge_id, 1

    faces = []
    while len(faces) < n_faces:
        tri = [node_ids[i] for i in rng.choice(n_nodes, size=3, replace=False)]
        boundary = [list(ensure_edge(tri[j], tri[(j + 1) % 3])) for j in range(3)]
        if len({eid for eid, _ in boundary}) < 3:
            continue
        faces.append({"id": f"f{len(faces)}", "boundary": boundary})

    while len(edges) < n_edges:
        i, j = rng.integers(0, n_nodes, size=2)
        if i == j:
            continue
        a, b = node_ids[int(i)], node_ids[int(j)]
        if (a, b) in pairs:
            continue
        edge_id = f"e{len(edges)}"
        pairs[(a, b)] = edge_id
        edges.append({"id": edge_id, "tail": a, "head": b})

    return build_complex(
        {"nodes": [{"id": nid} for nid in node_ids], "edges": edges, "faces": faces}
    )
