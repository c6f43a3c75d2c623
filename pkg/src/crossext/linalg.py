"""Dense complex linear algebra with explicit tolerances.

Rank decisions go through the compiled elimination kernel; eigenvalues and
orthonormal bases come from numpy/scipy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .kernels import eliminate


class DegenerateRank(ArithmeticError):
    """Pivot magnitudes too close to the threshold to decide the rank."""


class Unsplittable(ArithmeticError):
    """Eigenvalue clusters cannot be separated at the configured tolerance."""


@dataclass(frozen=True)
class Tolerance:
    pivot_eps: float = 1e-9
    round_eps: float = 1e-6
    cluster_eps: float = 1e-7

    def __post_init__(self):
        for name in ("pivot_eps", "round_eps", "cluster_eps"):
            v = getattr(self, name)
            if not (v > 0 and np.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.round_eps < self.pivot_eps:
            raise ValueError("round_eps must be >= pivot_eps")

    def as_dict(self) -> dict:
        return {"pivot_eps": self.pivot_eps, "round_eps": self.round_eps,
                "cluster_eps": self.cluster_eps}


DEFAULT_TOL = Tolerance()


def as_cmatrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def rref(M, tol: Tolerance = DEFAULT_TOL, scale: float | None = None):
    """Reduced row echelon form ``(R, pivot_cols)`` with the degenerate-rank gate.

    ``scale`` is the magnitude of the data ``M`` was computed from; entries below
    it by more than the roundoff margin are treated as exact zeros.
    """
    A = as_cmatrix(M).copy()
    eps = tol.pivot_eps
    # rows are rescaled before elimination, so roundoff-level entries must be
    # flushed against the global scale first or they turn into unit pivots
    if A.size:
        ref = max(np.abs(A).max(), scale or 0.0)
        A[np.abs(A) <= 1e-3 * eps * ref] = 0
        rowmax = np.abs(A).max(axis=1) if A.shape[1] else np.zeros(A.shape[0])
        weak = (rowmax > 0) & (rowmax < 10 * eps * ref)
        if weak.any():
            raise DegenerateRank(f"row {int(np.flatnonzero(weak)[0])} has magnitude "
                                 f"{rowmax[weak].max() / ref:.3e} relative to the data, too close to {eps:.1e}")
    R, piv, accepted, rejected = eliminate(np.ascontiguousarray(A), eps)
    if accepted and min(accepted) < 10 * eps:
        raise DegenerateRank(f"accepted pivot {min(accepted):.3e} within 10x of threshold {eps:.1e}")
    if rejected > eps / 10:
        raise DegenerateRank(f"rejected pivot {rejected:.3e} within 10x of threshold {eps:.1e}")
    return R, piv


def rank(M, tol: Tolerance = DEFAULT_TOL) -> int:
    return len(rref(M, tol)[1])


def nullspace(M, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Columns spanning ker(M), one per free column of the echelon form."""
    A = as_cmatrix(M)
    n = A.shape[1]
    R, piv = rref(A, tol, scale)
    free = [j for j in range(n) if j not in set(piv)]
    N = np.zeros((n, len(free)), dtype=np.complex128)
    for k, f in enumerate(free):
        N[f, k] = 1.0
        for i, p in enumerate(piv):
            N[p, k] = -R[i, f]
    if N.shape[1]:
        N /= np.linalg.norm(N, axis=0)
    return N


def orthonormal_columns(B, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column span of ``B`` (rank from singular values)."""
    B = as_cmatrix(B)
    if B.shape[1] == 0:
        return B
    U, s, _ = np.linalg.svd(B, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return B[:, :0]
    r = int(np.sum(s > tol.pivot_eps * s[0] * max(B.shape)))
    return U[:, :r]


def _clusters(vals: np.ndarray, radius: float) -> list[list[int]]:
    # single linkage on the complex plane
    n = len(vals)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def random_combination(mats, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(mats)) + 1j * rng.standard_normal(len(mats))
    return sum(c * as_cmatrix(m) for c, m in zip(coeffs, mats))


def gen_eigensplit(M, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    """Generalized eigenspaces of ``M`` grouped by eigenvalue cluster.

    ``M`` may be a list of commuting matrices, in which case a seeded random
    combination is split. Returns ``[(orthonormal basis, eigenvalue), ...]``
    ordered by eigenvalue (real part, then imaginary part).
    """
    if isinstance(M, (list, tuple)) and np.asarray(M).ndim == 3:
        M = random_combination(M, seed)
    A = as_cmatrix(M)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("gen_eigensplit needs a square matrix")
    if n == 0:
        return []
    vals = np.linalg.eigvals(A)
    scale = max(1.0, float(np.abs(vals).max()))
    radius = tol.cluster_eps * scale
    groups = _clusters(vals, radius)
    centers = [complex(vals[g].mean()) for g in groups]
    if len(groups) > 1:
        gap = min(abs(vals[i] - vals[j]) for a, ga in enumerate(groups)
                  for gb in groups[a + 1:] for i in ga for j in gb)
        if gap < 10 * radius:
            raise Unsplittable(f"eigenvalue clusters {gap:.2e} apart at radius {radius:.2e}")
    order = sorted(range(len(groups)), key=lambda k: (centers[k].real, centers[k].imag))
    if len(groups) == 1:
        return [(np.eye(n, dtype=np.complex128), centers[0])]
    out = []
    for k in order:
        lam, size = centers[k], len(groups[k])
        sel = (lambda z, lam=lam: abs(z - lam) <= 5 * radius)
        T, Z, sdim = sla.schur(A, output="complex", sort=sel)
        if sdim != size:
            raise Unsplittable(f"Schur reordering found {sdim} eigenvalues near {lam}, expected {size}")
        out.append((Z[:, :size], lam))
    return out


def kron(A, B) -> np.ndarray:
    return np.kron(as_cmatrix(A), as_cmatrix(B))
