"""Dixmier and Friedrichs cosines between polyhedral cones.

Three routes to the Dixmier cosine ``c0(K1, K2)``:

``cos_dixmier_exact``
    face-pair enumeration; every maximizing pair is a singular pair of the
    spans of two faces, and membership of a whole singular subspace is
    decided by a small double description run.
``cos_dixmier_iterative``
    monotone ascent ``x <- P_K1(P_K2 x) / ||.||`` from a set of starts.
``cos_dixmier_oracle``
    lower bound from a deterministic low-discrepancy grid on the unit
    sphere of ``span(K1)``, followed by a short ascent polish.

The Friedrichs cosine removes the common part first:
``c(K1, K2) = c0(K1 ∩ J°, K2 ∩ J°)`` with ``J = K1 ∩ K2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .cone import PolyhedralCone, double_description, intersect, polar
from .linalg import EPS, orthonormal_basis, svd_small
from .projection import project

#: Singular values closer than this are treated as one (possibly degenerate) group.
GROUP_TOL = 1e-7
#: Disagreement between exact and oracle values that flags a result.
FLAG_TOL = 1e-4


@dataclass(frozen=True)
class AngleResult:
    cosine: float
    angle: float
    x_star: np.ndarray | None
    y_star: np.ndarray | None
    method: str  # "exact" | "iterative" | "oracle"
    attained: bool
    flagged: bool = False

    def to_dict(self) -> dict:
        return {
            "cosine": self.cosine,
            "angle_radians": self.angle,
            "certificates": None
            if self.x_star is None
            else {"x": self.x_star.tolist(), "y": self.y_star.tolist()},
            "method": self.method,
            "attained": self.attained,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class FaceDescriptor:
    active_set: frozenset  # indices into the cone's facets
    span_basis: np.ndarray  # orthonormal rows spanning the face
    ray_indices: frozenset = frozenset()


@dataclass
class IterationTrace:
    iterates: list = field(default_factory=list)  # (x_k, alpha_k)
    converged: bool = False


def _result(cos: float, x, y, method: str, attained: bool, flagged: bool = False) -> AngleResult:
    cos = float(min(1.0, max(0.0, cos)))
    return AngleResult(cos, math.acos(cos), x, y, method, attained, flagged)


def support_width(k: PolyhedralCone, x) -> float:
    """``sup{<x, y> : y in K, ||y|| <= 1}``, which equals ``||P_K x||``."""
    return float(np.linalg.norm(project(k, x).point))


# ---------------------------------------------------------------------------
# iterative ascent


def _unit(v: np.ndarray) -> np.ndarray | None:
    n = np.linalg.norm(v)
    return None if n <= 1e-14 else v / n


def _ascend(k1, k2, x, max_iter, tol, trace: IterationTrace | None):
    x = _unit(project(k1, x).point)
    if x is None:
        return 0.0, None, None
    p = project(k2, x).point
    alpha = float(np.linalg.norm(p))
    if trace is not None:
        trace.iterates.append((x, alpha))
    for _ in range(max_iter):
        y = _unit(p)
        if y is None:
            break
        x_new = _unit(project(k1, y).point)
        if x_new is None:
            break
        p_new = project(k2, x_new).point
        a_new = float(np.linalg.norm(p_new))
        if a_new < alpha:
            # rounding; keep the better iterate
            if trace is not None:
                trace.converged = True
            break
        done = a_new - alpha < tol
        x, p, alpha = x_new, p_new, a_new
        if trace is not None:
            trace.iterates.append((x, alpha))
        if done:
            if trace is not None:
                trace.converged = True
            break
    y = _unit(p)
    return alpha, x, y


def cos_dixmier_iterative(
    k1: PolyhedralCone,
    k2: PolyhedralCone,
    starts=None,
    max_iter: int = 2000,
    tol: float = 1e-15,
) -> tuple[AngleResult, IterationTrace]:
    """Best value of the monotone sequence ``alpha_k = ||P_K2 x_k||`` over all starts.

    Default starts are the generators of both cones (projected onto ``K1``).
    Returns the result and the trace of the winning start.
    """
    if k1.dim != k2.dim:
        raise ValueError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
    if k1.is_zero or k2.is_zero:
        return _result(0.0, None, None, "iterative", True), IterationTrace([], True)
    if starts is None:
        starts = list(k1.generators) + list(k2.generators)
    best = (-1.0, None, None, IterationTrace())
    for s in starts:
        tr = IterationTrace()
        a, x, y = _ascend(k1, k2, np.asarray(s, dtype=float), max_iter, tol, tr)
        if a > best[0] + 1e-15:
            best = (a, x, y, tr)
    a, x, y, tr = best
    if a <= 0.0 or y is None:
        return _result(0.0, None, None, "iterative", False), tr
    return _result(a, x, y, "iterative", tr.converged), tr


# ---------------------------------------------------------------------------
# exact: face-pair enumeration


def enumerate_faces(k: PolyhedralCone, tol: float = EPS) -> list[FaceDescriptor]:
    """All nonzero faces of ``k``, each with its maximal active facet set.

    Faces are found by intersecting known faces with one more facet
    hyperplane at a time, starting from ``k`` itself.
    """
    lin = k.lineality_basis
    rays = k.rays
    facets = k.facets
    if rays.shape[0] == 0:
        if lin.shape[0] == 0:
            return []
        return [FaceDescriptor(frozenset(range(facets.shape[0])), lin.copy())]
    inc = np.abs(facets @ rays.T) <= tol  # facet x ray incidence
    tight = [frozenset(np.flatnonzero(row)) for row in inc]
    start = frozenset(range(rays.shape[0]))
    seen = {start}
    queue = [start]
    while queue:
        f = queue.pop()
        for t in tight:
            g = f & t
            if g != f and g not in seen:
                if g or lin.shape[0]:
                    seen.add(g)
                    queue.append(g)
    faces = []
    for f in sorted(seen, key=lambda s: (-len(s), sorted(s))):
        act = frozenset(i for i, t in enumerate(tight) if f <= t)
        vecs = np.vstack([rays[sorted(f)], lin]) if f else lin
        faces.append(FaceDescriptor(act, orthonormal_basis(vecs, tol, k.dim), f))
    return faces


def _feasible_direction(c: np.ndarray, m: int, tol: float) -> np.ndarray | None:
    """A unit ``w`` with ``c @ w <= tol`` (rows of ``c`` unit), or ``None``."""
    if c.shape[0] == 0:
        w = np.zeros(m)
        w[0] = 1.0
        return w
    if m == 1:
        for w in (np.ones(1), -np.ones(1)):
            if np.all(c @ w <= tol):
                return w
        return None
    rays, lin = double_description(c, m, tol)
    if rays.shape[0]:
        return rays[0]
    if lin.shape[0]:
        return lin[0]
    return None


def _candidates(k1, k2, faces1, faces2):
    """Positive singular-value groups of all face pairs, largest first."""
    out = []
    for i, f1 in enumerate(faces1):
        for j, f2 in enumerate(faces2):
            res = svd_small(f1.span_basis @ f2.span_basis.T)
            s = res.singular_values
            start = 0
            while start < s.size and s[start] > EPS:
                stop = start + 1
                while stop < s.size and s[start] - s[stop] <= GROUP_TOL:
                    stop += 1
                out.append((float(s[start]), i, j, res.left_vectors[:, start:stop], res.right_vectors[:, start:stop]))
                start = stop
    out.sort(key=lambda t: (-t[0], t[1], t[2]))
    return out


def _normalized_rows(c: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(c, axis=1)
    keep = n > 1e-12
    return c[keep] / n[keep, None]


def cos_dixmier_exact(
    k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS, cross_check: bool = False
) -> AngleResult:
    """Exact Dixmier cosine for polyhedral cones.

    A maximizing pair ``(x, y)`` lies in the relative interiors of some face
    pair ``(F1, F2)`` and is then a singular pair of ``B1 @ B2.T`` for
    orthonormal span bases.  Candidates are visited by decreasing singular
    value; the first group containing a pair of cone members wins.  The
    winner is polished by the iterative ascent.

    With ``cross_check`` the grid oracle is also run (dimension <= 4) and the
    result is flagged when the two disagree by more than ``FLAG_TOL``.
    """
    if k1.dim != k2.dim:
        raise ValueError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
    if k1.is_zero or k2.is_zero:
        return _result(0.0, None, None, "exact", True)
    common = intersect(k1, k2, tol)
    if not common.is_zero:
        g = common.generators[0]
        return _result(1.0, g.copy(), g.copy(), "exact", True)

    faces1 = enumerate_faces(k1, tol)
    faces2 = enumerate_faces(k2, tol)
    h1, h2 = k1.halfspaces, k2.halfspaces
    best = None
    for sigma, i, j, u, v in _candidates(k1, k2, faces1, faces2):
        b1, b2 = faces1[i].span_basis, faces2[j].span_basis
        xmap = b1.T @ u  # columns: x-directions of the group
        ymap = b2.T @ v
        c = _normalized_rows(np.vstack([h1 @ xmap, h2 @ ymap]))
        w = _feasible_direction(c, u.shape[1], tol)
        if w is None:
            continue
        x = xmap @ w
        y = ymap @ w
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        best = (float(x @ y), x, y)
        break
    if best is None:
        res = _result(0.0, None, None, "exact", True)
    else:
        val, x, y = best
        pol, _ = cos_dixmier_iterative(k1, k2, starts=[x], max_iter=200)
        if pol.x_star is not None and pol.cosine > val:
            val, x, y = pol.cosine, pol.x_star, pol.y_star
        res = _result(val, x, y, "exact", True)
    if cross_check and k1.dim <= 4:
        orc = cos_dixmier_oracle(k1, k2)
        if abs(orc.cosine - res.cosine) > FLAG_TOL:
            res = AngleResult(res.cosine, res.angle, res.x_star, res.y_star, "exact", res.attained, True)
    return res


def cos_friedrichs(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> AngleResult:
    """Friedrichs cosine ``c0(K1 ∩ J°, K2 ∩ J°)`` with ``J = K1 ∩ K2``."""
    if k1.dim != k2.dim:
        raise ValueError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
    j = intersect(k1, k2, tol)
    if j.is_zero:
        return cos_dixmier_exact(k1, k2, tol)
    p = polar(j)
    return cos_dixmier_exact(intersect(k1, p, tol), intersect(k2, p, tol), tol)


# ---------------------------------------------------------------------------
# grid oracle

_GRID_CACHE: dict[tuple[int, int], np.ndarray] = {}


def sphere_grid(dim: int, samples: int) -> np.ndarray:
    """Deterministic low-discrepancy points on the unit sphere of R^dim."""
    key = (dim, samples)
    if key not in _GRID_CACHE:
        from scipy.stats import norm, qmc

        h = qmc.Halton(d=dim, scramble=False).random(samples + 1)[1:]
        z = norm.ppf(np.clip(h, 1e-12, 1 - 1e-12))
        nz = np.linalg.norm(z, axis=1)
        z = z[nz > 1e-12] / nz[nz > 1e-12, None]
        z.setflags(write=False)
        _GRID_CACHE[key] = z
    return _GRID_CACHE[key]


def _independent_subsets(g: np.ndarray, dim: int):
    """Column subsets of the generators with full column rank (size <= dim)."""
    m = g.shape[0]
    for size in range(1, min(m, dim) + 1):
        for sub in itertools.combinations(range(m), size):
            a = g[list(sub)]
            s = np.linalg.svd(a, compute_uv=False)
            if s[-1] > 1e-8:
                yield list(sub)


def _batched_support_width(k: PolyhedralCone, pts: np.ndarray):
    """``||P_K x||`` for each row of ``pts``, with the attaining unit ``y``.

    For any generator subset ``S`` with linearly independent members whose
    least-squares coefficients are nonnegative, ``p_S`` lies in ``K`` and
    ``||p_S|| <= ||P_K x||``; the projection itself is one such ``p_S``.
    Maximizing over subsets therefore gives the exact value.
    """
    n = pts.shape[0]
    best = np.zeros(n)
    arg = np.zeros((n, k.dim))
    if k.is_zero:
        return best, arg
    g = k.generators
    for sub in _independent_subsets(g, k.dim):
        a = g[sub].T  # dim x s
        q, r = np.linalg.qr(a)
        coef = np.linalg.solve(r, q.T @ pts.T)  # s x n
        ok = np.all(coef >= 0.0, axis=0)
        proj = (a @ coef).T
        val = np.where(ok, np.linalg.norm(proj, axis=1), 0.0)
        upd = val > best
        best[upd] = val[upd]
        arg[upd] = proj[upd]
    return best, arg


def cos_dixmier_oracle(
    k1: PolyhedralCone,
    k2: PolyhedralCone,
    samples: int = 200_000,
    polish: bool = True,
    n_polish: int = 8,
) -> AngleResult:
    """Certified lower bound on ``c0`` from a sphere grid, optionally polished.

    Grid points live on the unit sphere of ``span(K1)``; those in ``K1``
    (together with the generators of ``K1``) are scored by their support
    width against ``K2``.  The best few are polished by alternating
    projections.  ``attained`` is always false: the value is a lower bound.
    """
    if k1.dim != k2.dim:
        raise ValueError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
    if k1.is_zero or k2.is_zero:
        return _result(0.0, None, None, "oracle", False)
    basis = orthonormal_basis(k1.generators, EPS, k1.dim)
    z = sphere_grid(basis.shape[0], samples) @ basis
    h = k1.halfspaces
    if h.shape[0]:
        z = z[np.all(z @ h.T <= 1e-12, axis=1)]
    pts = np.vstack([z, k1.generators])
    if pts.shape[0] == 0:
        return _result(0.0, None, None, "oracle", False)
    vals, ys = _batched_support_width(k2, pts)
    order = np.argsort(-vals, kind="stable")
    i = int(order[0])
    val = float(vals[i])
    x = pts[i]
    y = _unit(ys[i])
    if polish and val > 0:
        starts = [pts[j] for j in order[:n_polish]]
        pol, _ = cos_dixmier_iterative(k1, k2, starts=starts, max_iter=5000)
        if pol.x_star is not None and pol.cosine > val:
            val, x, y = pol.cosine, pol.x_star, pol.y_star
    if val <= 0 or y is None:
        return _result(0.0, None, None, "oracle", False)
    return _result(val, x, y, "oracle", False)
