"""Metric projection onto polyhedral cones and the Moreau decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import PolyhedralCone, polar
from .linalg import EPS, solve_nnls


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray  # P_K x
    residual: np.ndarray  # x - P_K x, a member of the polar cone
    inner: float  # <P_K x, x - P_K x>, zero up to rounding


def _as_point(k: PolyhedralCone, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != k.dim:
        raise ValueError(f"dimension mismatch: vector has {x.size} entries, cone dim {k.dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite entry in vector")
    return x


def project(k: PolyhedralCone, x, tol: float = EPS) -> ProjectionResult:
    """Nearest point of ``k`` to ``x``.

    Solved in the V-representation as ``G @ lam`` with ``lam`` from NNLS over
    the generators ``G`` (lineality vectors enter with both signs).
    """
    x = _as_point(k, x)
    if k.is_zero:
        p = np.zeros_like(x)
    elif k.is_full:
        p = x.copy()
    else:
        g = k.generators.T
        lam, _ = solve_nnls(g, x, tol)
        p = g @ lam
    r = x - p
    return ProjectionResult(p, r, float(p @ r))


def moreau_decompose(k: PolyhedralCone, x, tol: float = EPS) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(P_K x, P_{K polar} x)``; the two parts sum to ``x`` and are orthogonal.

    Both projections are solved independently so that the identity
    ``x = p + q`` is a genuine check rather than a definition.
    """
    x = _as_point(k, x)
    p = project(k, x, tol).point
    q = project(polar(k), x, tol).point
    return p, q
