"""Dense numerical kernels: minimal-norm least squares, numerical rank,
and symmetric eigendecomposition.

All rank decisions in the package flow through a single
:class:`RankTolerance` so that pseudoinverse solves, rank counts, and
kernel dimensions are mutually consistent. Singular values (or
eigenvalues of positive semidefinite matrices) at or below

    max(absolute_floor, relative_factor * sigma_max)

are treated as zero. Backed by LAPACK via numpy; rank-deficient systems
are the normal case here, so everything goes through the SVD rather
than normal equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RankTolerance", "min_norm_lstsq", "numerical_rank", "sym_eigs"]


@dataclass(frozen=True)
class RankTolerance:
    """Threshold policy separating numerically-zero from nonzero spectrum.

    ``relative_factor=None`` resolves to machine epsilon times the larger
    matrix dimension at evaluation time (the conventional SVD cutoff).
    """

    absolute_floor: float = 1e-10
    relative_factor: float | None = None

    def __post_init__(self) -> None:
        if not (self.absolute_floor > 0):
            raise ValueError(f"absolute_floor must be > 0, got {self.absolute_floor}")
        if self.relative_factor is not None and not (self.relative_factor > 0):
            raise ValueError(f"relative_factor must be > 0, got {self.relative_factor}")

    def resolved_relative_factor(self, shape: tuple[int, ...]) -> float:
        if self.relative_factor is not None:
            return self.relative_factor
        return float(np.finfo(np.float64).eps) * max(*shape, 1)

    def threshold(self, sigma_max: float, shape: tuple[int, ...]) -> float:
        """Cutoff below which a singular value counts as zero."""
        return max(self.absolute_floor, self.resolved_relative_factor(shape) * sigma_max)


def _as_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def min_norm_lstsq(
    a: np.ndarray, b: np.ndarray, tol: RankTolerance = RankTolerance()
) -> np.ndarray:
    """Minimal-Euclidean-norm minimizer of ``|a @ x - b|``.

    Equivalent to applying the Moore-Penrose pseudoinverse of ``a`` to
    ``b``, with small singular values zeroed per ``tol``.
    """
    a = _as_matrix(a)
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (a.shape[0],):
        raise ValueError(f"shape mismatch: matrix {a.shape} vs vector {b.shape}")
    m, n = a.shape
    if n == 0:
        return np.zeros(0)
    if m == 0:
        return np.zeros(n)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    cutoff = tol.threshold(float(s[0]) if s.size else 0.0, a.shape)
    keep = s > cutoff
    if not np.any(keep):
        return np.zeros(n)
    return vt[keep].T @ ((u[:, keep].T @ b) / s[keep])


def numerical_rank(m: np.ndarray, tol: RankTolerance = RankTolerance()) -> int:
    """Number of singular values of ``m`` above the tolerance threshold."""
    m = _as_matrix(m)
    if min(m.shape) == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    cutoff = tol.threshold(float(s[0]) if s.size else 0.0, m.shape)
    return int(np.count_nonzero(s > cutoff))


def sym_eigs(m: np.ndarray, rel_asymmetry: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors orthonormal in columns. Rejects input whose relative
    asymmetry ``|m - m.T| / |m|`` exceeds ``rel_asymmetry``.
    """
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix is not square: {m.shape}")
    if m.size:
        scale = float(np.linalg.norm(m))
        asym = float(np.linalg.norm(m - m.T))
        if asym > rel_asymmetry * max(scale, 1e-300):
            raise ValueError(
                f"matrix is not symmetric: relative asymmetry {asym / max(scale, 1e-300):.3e}"
            )
    values, vectors = np.linalg.eigh((m + m.T) / 2.0)
    return values, vectors
