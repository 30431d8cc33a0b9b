"""Topological invariants: Betti numbers, Laplacian spectra, spectral
gaps, and an orthonormal basis of the harmonic edge subspace.

Betti numbers are kernel dimensions of the three Hodge Laplacians:
beta0 counts weakly connected components (independent subsystems),
beta1 counts independent unfilled cycles (structural loops no saga
bounds), beta2 counts enclosed two-dimensional voids. Each call
cross-checks the kernel-dimension route against rank-nullity of the
incidence matrices and refuses to return numbers the two routes
disagree on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cells import CellComplex, incidence_edge_face, incidence_node_edge, laplacian
from .errors import NumericalInconsistencyError
from .hodge import EdgeFlow
from .linalg import RankTolerance, numerical_rank, sym_eigs

__all__ = [
    "BettiNumbers",
    "betti",
    "harmonic_basis",
    "spectrum",
    "spectral_gap",
    "connected_components",
]


@dataclass(frozen=True)
class BettiNumbers:
    beta0: int
    beta1: int
    beta2: int
    tol_used: RankTolerance

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.beta0, self.beta1, self.beta2)


def betti(c: CellComplex, tol: RankTolerance = RankTolerance()) -> BettiNumbers:
    """Kernel dimensions of L0, L1, L2, cross-checked via rank-nullity."""
    rank_b1 = numerical_rank(incidence_node_edge(c), tol)
    rank_b2 = numerical_rank(incidence_edge_face(c), tol)
    via_rank = (
        c.num_nodes - rank_b1,
        c.num_edges - rank_b1 - rank_b2,
        c.num_faces - rank_b2,
    )
    dims = (c.num_nodes, c.num_edges, c.num_faces)
    via_kernel = tuple(dims[k] - numerical_rank(laplacian(c, k), tol) for k in (0, 1, 2))
    if via_kernel != via_rank:
        raise NumericalInconsistencyError(
            f"Betti numbers disagree between kernel dimensions {via_kernel} and "
            f"incidence rank-nullity {via_rank}; adjust the rank tolerance"
        )
    return BettiNumbers(*via_kernel, tol_used=tol)


def harmonic_basis(c: CellComplex, tol: RankTolerance = RankTolerance()) -> list[EdgeFlow]:
    """Orthonormal basis of the harmonic edge subspace ker L1.

    Taken from the eigenvectors of L1 whose eigenvalues are numerically
    zero, then re-orthonormalized. Deterministic for a given complex up
    to sign and rotation within the subspace, so tests should compare
    projectors rather than raw vectors. Signs are normalized so each
    vector's largest-magnitude entry is positive.
    """
    if c.num_edges == 0:
        return []
    l1 = laplacian(c, 1)
    kernel_dim = c.num_edges - numerical_rank(l1, tol)
    if kernel_dim == 0:
        return []
    _, vectors = sym_eigs(l1)
    basis, _ = np.linalg.qr(vectors[:, :kernel_dim])
    flows = []
    for i in range(kernel_dim):
        vec = basis[:, i].copy()
        lead = int(np.argmax(np.abs(vec)))
        if vec[lead] < 0:
            vec = -vec
        flows.append(EdgeFlow(vec, metric_label="harmonic basis"))
    return flows


def spectrum(c: CellComplex, k: int) -> np.ndarray:
    """Ascending eigenvalues of the degree-``k`` Laplacian."""
    values, _ = sym_eigs(laplacian(c, k))
    return values


def spectral_gap(eigs: np.ndarray, tol: RankTolerance = RankTolerance()) -> float:
    """Smallest eigenvalue strictly above the numerically-zero threshold.

    Returns 0 when no such eigenvalue exists; small gaps flag fragile,
    near-degenerate structure.
    """
    eigs = np.asarray(eigs, dtype=np.float64)
    if eigs.size == 0:
        warnings.warn("empty spectrum: spectral gap defined as 0", UserWarning, stacklevel=2)
        return 0.0
    cutoff = tol.threshold(float(np.max(np.abs(eigs))), (eigs.size, eigs.size))
    above = eigs[eigs > cutoff]
    return float(above[0]) if above.size else 0.0


def connected_components(c: CellComplex) -> int:
    """Weakly connected components by union-find over the edge list.

    Edge direction is ignored, matching the direction-blind L0; this is
    the combinatorial oracle for beta0.
    """
    parent = list(range(c.num_nodes))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for edge in c.edges:
        a = find(c.node_index[edge.tail])
        b = find(c.node_index[edge.head])
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(c.num_nodes)})
