"""Small dense linear-algebra kernel.

Everything here works on tiny matrices (dimension at most ~16) and takes an
explicit tolerance for rank and activity decisions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Default tolerance for rank, activity and membership decisions.
EPS = 1e-9


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``a = left @ diag(singular_values) @ right.T``."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray


def as_matrix(vectors, dim: int | None = None) -> np.ndarray:
    """Stack ``vectors`` as the rows of a float matrix.

    An empty collection becomes a ``(0, dim)`` array.  Ragged input raises
    ``ValueError``.
    """
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        if dim is None:
            raise ValueError("cannot infer dimension of an empty collection")
        return np.zeros((0, dim))
    lengths = {r.size for r in rows}
    if len(lengths) != 1 or (dim is not None and lengths != {dim}):
        expected = dim if dim is not None else rows[0].size
        for i, r in enumerate(rows):
            if r.size != expected:
                raise ValueError(f"vector {i} has length {r.size}, expected {expected}")
    out = np.vstack(rows)
    if not np.all(np.isfinite(out)):
        raise ValueError("non-finite entry in input vectors")
    return out


def svd_small(a) -> SvdResult:
    """Thin singular value decomposition of a small dense matrix.

    Singular values come back nonincreasing.  Zero-sized inputs give empty
    factors of the right shapes.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite entry in matrix")
    m, n = a.shape
    k = min(m, n)
    if k == 0:
        return SvdResult(np.zeros(0), np.zeros((m, 0)), np.zeros((n, 0)))
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return SvdResult(s, u, vt.T)


def _rank_cutoff(s: np.ndarray, tol: float) -> float:
    return tol * max(1.0, float(s[0]) if s.size else 0.0)


def orthonormal_basis(vectors, tol: float = EPS, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis of ``span(vectors)``, returned as matrix rows.

    The number of rows is the numerical rank at relative cutoff ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_matrix(vectors, dim)
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]))
    res = svd_small(a.T)
    r = int(np.sum(res.singular_values > _rank_cutoff(res.singular_values, tol)))
    basis = res.left_vectors[:, :r].T.copy()
    # sign convention: first significant entry positive, for reproducibility
    for row in basis:
        j = np.flatnonzero(np.abs(row) > 1e-12)
        if j.size and row[j[0]] < 0:
            row *= -1.0
    return basis


def nullspace(a, tol: float = EPS, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis (rows) of ``{x : a @ x = 0}``."""
    a = as_matrix(a, dim) if not isinstance(a, np.ndarray) else np.asarray(a, dtype=float)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    r = int(np.sum(s > _rank_cutoff(s, tol)))
    return vt[r:].copy()


def matrix_rank(a, tol: float = EPS) -> int:
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > _rank_cutoff(s, tol)))


def solve_nnls(g, x, tol: float = EPS, max_iter: int | None = None):
    """Nonnegative least squares ``min ||g @ lam - x||`` over ``lam >= 0``.

    Active-set method in the style of Lawson and Hanson.  The column entering
    the passive set is the one with the largest gradient component; ties go
    to the smallest index.

    Parameters
    ----------
    g : array_like, shape (n, m)
        Columns are the generators.
    x : array_like, shape (n,)
        Target vector.
    tol : float
        Optimality tolerance on the dual vector ``g.T @ (x - g @ lam)``.

    Returns
    -------
    lam : ndarray, shape (m,)
    residual : float
        ``||g @ lam - x||``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = np.asarray(g, dtype=float)
    x = np.asarray(x, dtype=float).ravel()
    if g.ndim != 2 or g.shape[0] != x.size:
        raise ValueError(f"dimension mismatch: matrix has {g.shape[0] if g.ndim == 2 else '?'} rows, vector has {x.size}")
    m = g.shape[1]
    lam = np.zeros(m)
    if m == 0:
        return lam, float(np.linalg.norm(x))
    if max_iter is None:
        max_iter = 30 * m + 30

    scale = max(1.0, float(np.linalg.norm(x))) * max(1.0, float(np.abs(g).max()))
    dual_tol = tol * scale
    passive = np.zeros(m, dtype=bool)
    resid = x.copy()
    w = g.T @ resid
    it = 0
    while it < max_iter:
        cand = np.where(passive, -np.inf, w)
        j = int(np.argmax(cand))
        if cand[j] <= dual_tol:
            break
        passive[j] = True
        while True:
            it += 1
            idx = np.flatnonzero(passive)
            z = np.zeros(m)
            z[idx] = np.linalg.lstsq(g[:, idx], x, rcond=None)[0]
            if np.all(z[idx] > 0) or it >= max_iter:
                lam = np.where(passive, np.maximum(z, 0.0), 0.0)
                break
            # step back toward lam until the first passive coordinate hits 0
            neg = idx[z[idx] <= 0]
            alpha = np.min(lam[neg] / (lam[neg] - z[neg]))
            lam = lam + alpha * (z - lam)
            passive &= lam > tol * max(1.0, float(lam.max(initial=0.0)))
            lam[~passive] = 0.0
            if not passive.any():
                break
        resid = x - g @ lam
        w = g.T @ resid
    return lam, float(np.linalg.norm(g @ lam - x))
