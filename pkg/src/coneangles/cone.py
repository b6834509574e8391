"""Polyhedral convex cones in R^n and their polar/dual calculus.

A :class:`PolyhedralCone` always carries both descriptions:

* V-representation: extreme rays of the pointed part (orthogonal to the
  lineality space) plus an orthonormal basis of the lineality space;
* H-representation: facet normals ``a`` (meaning ``<a, x> <= 0``) lying in
  ``span(K)`` plus an orthonormal basis of ``span(K)^perp`` (equalities).

The two halves are exactly swapped by :func:`polar`, which is therefore free.
Conversions go through the double description method in floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import EPS, as_matrix, matrix_rank, nullspace, orthonormal_basis, solve_nnls

MAX_DIM = 8
MAX_RAYS = 32
MAX_FACETS = 32


class ConeTooLargeError(ValueError):
    """Raised when a cone exceeds the ray, facet or dimension caps."""


@dataclass(frozen=True)
class ConeSpec:
    """Serializable raw description of a cone: ``cone(generators)`` in R^dim."""

    dim: int
    generators: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        for i, g in enumerate(self.generators):
            if len(g) != self.dim:
                raise ValueError(f"generator {i} has length {len(g)}, expected {self.dim}")
            if not all(np.isfinite(v) for v in g):
                raise ValueError(f"generator {i} has a non-finite entry")

    @classmethod
    def from_dict(cls, data: dict) -> ConeSpec:
        if not isinstance(data, dict) or "dim" not in data or "generators" not in data:
            raise ValueError('cone JSON must be an object with keys "dim" and "generators"')
        dim = data["dim"]
        if isinstance(dim, bool) or not isinstance(dim, int):
            raise ValueError(f"dim must be an integer, got {dim!r}")
        gens = data["generators"]
        if not isinstance(gens, list):
            raise ValueError('"generators" must be a list of vectors')
        rows = []
        for i, g in enumerate(gens):
            if not isinstance(g, list):
                raise ValueError(f"generator {i} is not a list")
            for j, v in enumerate(g):
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise ValueError(f"generator {i} entry {j} is not a number: {v!r}")
            rows.append(tuple(float(v) for v in g))
        return cls(dim, tuple(rows))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in self.generators]}

    def to_json(self) -> str:
        return dumps_json(self.to_dict())


def dumps_json(obj) -> str:
    """JSON with floats written to 17 significant digits (lossless round trip)."""
    return json.dumps(_round17(obj), sort_keys=False)


def _round17(obj):
    if isinstance(obj, float):
        return float(f"{obj:.17g}")
    if isinstance(obj, dict):
        return {k: _round17(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round17(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round17(obj.tolist())
    if isinstance(obj, np.floating):
        return float(f"{float(obj):.17g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


# ---------------------------------------------------------------------------
# double description


def _unit_rows(a: np.ndarray, tol: float) -> np.ndarray:
    if a.shape[0] == 0:
        return a
    norms = np.linalg.norm(a, axis=1)
    keep = norms > tol
    return a[keep] / norms[keep, None]


def _project_out(rows: np.ndarray, basis: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0 or basis.shape[0] == 0:
        return rows
    return rows - (rows @ basis.T) @ basis


def _dedupe_rays(rays: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Drop rays parallel (cosine > 1 - tol) to an earlier one."""
    if rays.shape[0] <= 1:
        return rays
    keep: list[int] = []
    for i in range(rays.shape[0]):
        if all(rays[i] @ rays[j] <= 1.0 - tol for j in keep):
            keep.append(i)
    return rays[keep]


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] <= 1:
        return rows
    keys = np.round(rows, 9)
    order = np.lexsort(keys.T[::-1])
    return rows[order]


def double_description(a: np.ndarray, dim: int, tol: float = EPS) -> tuple[np.ndarray, np.ndarray]:
    """Generators of ``{x in R^dim : a @ x <= 0}``.

    Returns ``(rays, lineality)``: unit extreme rays of the pointed part,
    orthogonal to the lineality space, and an orthonormal lineality basis.
    Constraints are inserted one at a time; adjacency of rays is decided
    combinatorially from their incidence sets.
    """
    a = _unit_rows(np.asarray(a, dtype=float).reshape(-1, dim), tol)
    lin = np.eye(dim)
    rays = np.zeros((0, dim))
    zsets: list[int] = []
    done = 0  # bitmask of processed constraints
    for i, row in enumerate(a):
        bit = 1 << i
        s = lin @ row if lin.shape[0] else np.zeros(0)
        if s.size and np.max(np.abs(s)) > tol:
            k = int(np.argmax(np.abs(s)))
            l = lin[k] if s[k] < 0 else -lin[k]
            sk = -abs(s[k])
            others = np.delete(lin, k, axis=0)
            # l' - (<a,l'>/<a,l>) l stays in the lineality and satisfies <a,.> = 0
            if others.shape[0]:
                others = others - np.outer((others @ row) / sk, l)
                # still linearly independent, so a QR re-orthonormalizes them
                lin = np.linalg.qr(others.T)[0].T
            else:
                lin = np.zeros((0, dim))
            if rays.shape[0]:
                rays = rays - np.outer((rays @ row) / sk, l)
            new_ray = l
            rays = np.vstack([rays, new_ray[None, :]]) if rays.shape[0] else new_ray[None, :].copy()
            zsets = [z | bit for z in zsets] + [done]
            rays = _project_out(rays, lin)
            rays /= np.linalg.norm(rays, axis=1)[:, None]
            done |= bit
            continue
        if rays.shape[0] == 0:
            done |= bit
            continue
        vals = rays @ row
        pos = np.flatnonzero(vals > tol)
        neg = np.flatnonzero(vals < -tol)
        zero = np.flatnonzero(np.abs(vals) <= tol)
        if pos.size == 0:
            zsets = [z | bit if abs(vals[j]) <= tol else z for j, z in enumerate(zsets)]
            done |= bit
            continue
        need = dim - lin.shape[0] - 2
        new_rays = []
        new_z = []
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                if need > 0 and bin(common).count("1") < need:
                    continue
                adjacent = True
                for r in range(len(zsets)):
                    if r != p and r != q and (zsets[r] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                v = vals[p] * rays[q] - vals[q] * rays[p]
                nv = np.linalg.norm(v)
                if nv <= tol:
                    continue
                new_rays.append(v / nv)
                new_z.append(common | bit)
        keep = np.concatenate([neg, zero]).astype(int)
        kept_z = [zsets[j] | bit if abs(vals[j]) <= tol else zsets[j] for j in keep]
        parts = [rays[keep]]
        if new_rays:
            parts.append(np.array(new_rays))
        rays = np.vstack(parts)
        zsets = kept_z + new_z
        done |= bit
    rays = _project_out(rays, lin)
    if rays.shape[0]:
        norms = np.linalg.norm(rays, axis=1)
        rays = rays[norms > tol] / norms[norms > tol, None]
    return _dedupe_rays(rays), lin


def _extreme_rays(cands: np.ndarray, constraints: np.ndarray, lin: np.ndarray, tol: float) -> np.ndarray:
    """Select the extreme rays of ``cone(cands)`` modulo ``span(lin)``.

    ``constraints`` is an H-description of the same cone; a candidate is
    extreme when its active constraints have rank ``n - dim(lin) - 1``.
    """
    n = cands.shape[1]
    r = _unit_rows(_project_out(cands, lin), tol)
    if r.shape[0] == 0:
        return r
    r = _dedupe_rays(r)
    need = n - lin.shape[0] - 1
    if need == 0:
        # pointed part is a single ray; every candidate is parallel to it
        return r[:1]
    keep = []
    for v in r:
        act = constraints[np.abs(constraints @ v) <= tol]
        if act.shape[0] >= need and matrix_rank(act, tol) >= need:
            keep.append(v)
    return np.array(keep) if keep else np.zeros((0, n))


# ---------------------------------------------------------------------------
# the cone type


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float) + 0.0  # no negative zeros
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """A closed polyhedral convex cone in R^dim, in double representation.

    Do not construct directly; use :func:`cone_from_generators`,
    :func:`cone_from_halfspaces` or one of the helpers.
    """

    dim: int
    rays: np.ndarray  # extreme rays of the pointed part, orthogonal to lineality
    lineality_basis: np.ndarray
    facets: np.ndarray  # facet normals inside span(K)
    equality_basis: np.ndarray  # orthonormal basis of span(K)^perp

    @property
    def generators(self) -> np.ndarray:
        """All V-generators: extreme rays plus both signs of each lineality vector."""
        return np.vstack([self.rays, self.lineality_basis, -self.lineality_basis]) + 0.0

    @property
    def halfspaces(self) -> np.ndarray:
        """Unit normals ``a`` with ``K = {x : <a, x> <= 0 for all a}``."""
        return np.vstack([self.facets, self.equality_basis, -self.equality_basis]) + 0.0

    @property
    def is_zero(self) -> bool:
        return self.rays.shape[0] == 0 and self.lineality_basis.shape[0] == 0

    @property
    def is_full(self) -> bool:
        return self.lineality_basis.shape[0] == self.dim

    @property
    def is_pointed(self) -> bool:
        return self.lineality_basis.shape[0] == 0

    @property
    def span_dim(self) -> int:
        return self.dim - self.equality_basis.shape[0]

    def to_spec(self) -> ConeSpec:
        return ConeSpec(self.dim, tuple(tuple(float(v) for v in g) for g in self.generators))

    def __repr__(self) -> str:
        return (
            f"PolyhedralCone(dim={self.dim}, rays={self.rays.shape[0]}, "
            f"lineality={self.lineality_basis.shape[0]}, facets={self.facets.shape[0]}, "
            f"equalities={self.equality_basis.shape[0]})"
        )


def _make(dim, rays, lin, facets, eq) -> PolyhedralCone:
    if rays.shape[0] > MAX_RAYS:
        raise ConeTooLargeError(f"cone has {rays.shape[0]} extreme rays, cap is {MAX_RAYS}")
    if facets.shape[0] > MAX_FACETS:
        raise ConeTooLargeError(f"cone has {facets.shape[0]} facets, cap is {MAX_FACETS}")
    # canonical encodings of the full space and the zero cone
    if lin.shape[0] == dim:
        lin, rays, facets, eq = np.eye(dim), rays[:0], facets[:0], eq[:0]
    elif eq.shape[0] == dim:
        lin, rays, facets, eq = lin[:0], rays[:0], facets[:0], np.eye(dim)
    return PolyhedralCone(
        dim, _frozen(_sorted_rows(rays)), _frozen(lin), _frozen(_sorted_rows(facets)), _frozen(eq)
    )


def _check_dim(dim: int):
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if dim > MAX_DIM:
        raise ConeTooLargeError(f"dimension {dim} exceeds cap {MAX_DIM}")


def _build_from_generators(g: np.ndarray, dim: int, tol: float) -> PolyhedralCone:
    g = _unit_rows(g, tol)
    if g.shape[0] == 0:
        return zero_cone(dim)
    # H-rep from the generators of the polar {y : g @ y <= 0}
    prays, plin = double_description(g, dim, tol)
    halfspaces = np.vstack([prays, plin, -plin])
    lin = nullspace(halfspaces, tol, dim) if halfspaces.shape[0] else np.eye(dim)
    lin = orthonormal_basis(lin, tol, dim) if lin.shape[0] else lin
    rays = _extreme_rays(g, halfspaces, lin, tol)
    return _make(dim, rays, lin, prays, plin)


def _build_from_halfspaces(a: np.ndarray, dim: int, tol: float) -> PolyhedralCone:
    a = _unit_rows(a, tol)
    if a.shape[0] == 0:
        return full_space(dim)
    rays, lin = double_description(a, dim, tol)
    gens = np.vstack([rays, lin, -lin])
    eq = nullspace(gens, tol, dim) if gens.shape[0] else np.eye(dim)
    eq = orthonormal_basis(eq, tol, dim) if eq.shape[0] else eq
    facets = _extreme_rays(a, gens, eq, tol)
    return _make(dim, rays, lin, facets, eq)


def cone_from_generators(spec: ConeSpec | Sequence, tol: float = EPS, dim: int | None = None) -> PolyhedralCone:
    """Canonical cone ``cone(generators)``.

    Accepts a :class:`ConeSpec` or a sequence of vectors (then ``dim`` is
    needed when the sequence is empty).  Zero vectors are dropped, duplicate
    and redundant generators removed, and the H-representation computed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(spec, ConeSpec):
        dim = spec.dim
        vecs = spec.generators
    else:
        vecs = spec
    g = as_matrix(vecs, dim)
    dim = g.shape[1]
    _check_dim(dim)
    return _build_from_generators(g, dim, tol)


def cone_from_halfspaces(normals: Sequence, dim: int | None = None, tol: float = EPS) -> PolyhedralCone:
    """Canonical cone ``{x : <a, x> <= 0 for every a in normals}``."""
    a = as_matrix(normals, dim)
    dim = a.shape[1]
    _check_dim(dim)
    return _build_from_halfspaces(a, dim, tol)


def zero_cone(dim: int) -> PolyhedralCone:
    _check_dim(dim)
    e = np.zeros((0, dim))
    return _make(dim, e, e, e, np.eye(dim))


def full_space(dim: int) -> PolyhedralCone:
    _check_dim(dim)
    e = np.zeros((0, dim))
    return _make(dim, e, np.eye(dim), e, e)


def subspace(vectors: Sequence, dim: int | None = None, tol: float = EPS) -> PolyhedralCone:
    """The linear span of ``vectors`` as a cone."""
    b = as_matrix(vectors, dim)
    dim = b.shape[1]
    _check_dim(dim)
    basis = orthonormal_basis(b, tol, dim)
    if basis.shape[0] == 0:
        return zero_cone(dim)
    if basis.shape[0] == dim:
        return full_space(dim)
    e = np.zeros((0, dim))
    eq = orthonormal_basis(nullspace(basis, tol, dim), tol, dim)
    return _make(dim, e, basis, e, eq)


def nonnegative_orthant(dim: int) -> PolyhedralCone:
    return cone_from_generators(np.eye(dim))


# ---------------------------------------------------------------------------
# calculus


def polar(k: PolyhedralCone) -> PolyhedralCone:
    """``K^polar = {y : <x, y> <= 0 for all x in K}``; swaps the two representations."""
    return PolyhedralCone(k.dim, k.facets, k.equality_basis, k.rays, k.lineality_basis)


def negate(k: PolyhedralCone) -> PolyhedralCone:
    return _make(k.dim, -k.rays, k.lineality_basis, -k.facets, k.equality_basis)


def dual(k: PolyhedralCone) -> PolyhedralCone:
    """``K^dual = -K^polar``."""
    return negate(polar(k))


def _same_dim(k1: PolyhedralCone, k2: PolyhedralCone):
    if k1.dim != k2.dim:
        raise ValueError(f"dimension mismatch: {k1.dim} vs {k2.dim}")


def cone_sum(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> PolyhedralCone:
    """Minkowski sum ``K1 + K2`` (closed for polyhedral cones)."""
    _same_dim(k1, k2)
    if k1.is_zero:
        return k2
    if k2.is_zero:
        return k1
    return _build_from_generators(np.vstack([k1.generators, k2.generators]), k1.dim, tol)


def difference(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> PolyhedralCone:
    """``K1 - K2 = K1 + (-K2)``."""
    return cone_sum(k1, negate(k2), tol)


def intersect(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> PolyhedralCone:
    _same_dim(k1, k2)
    if k1.is_full:
        return k2
    if k2.is_full:
        return k1
    return _build_from_halfspaces(np.vstack([k1.halfspaces, k2.halfspaces]), k1.dim, tol)


def orthogonal_complement(k: PolyhedralCone) -> PolyhedralCone:
    """``span(K)^perp`` as a cone (equals the polar when K is a subspace)."""
    e = np.zeros((0, k.dim))
    return _make(k.dim, e, k.equality_basis, e, orthonormal_basis(k.generators, EPS, k.dim) if not k.is_zero else e)


def contains(k: PolyhedralCone, x, tol: float = EPS) -> bool:
    """Membership test ``<a, x> <= tol * ||x||`` for all halfspace normals."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != k.dim:
        raise ValueError(f"dimension mismatch: vector has {x.size} entries, cone dim {k.dim}")
    h = k.halfspaces
    if h.shape[0] == 0:
        return True
    return bool(np.all(h @ x <= tol * np.linalg.norm(x)))


def contains_vrep(k: PolyhedralCone, x, tol: float = EPS) -> bool:
    """Membership through the generators: NNLS residual ``<= tol * ||x||``."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != k.dim:
        raise ValueError(f"dimension mismatch: vector has {x.size} entries, cone dim {k.dim}")
    # solve to full precision; tol only judges the residual
    _, res = solve_nnls(k.generators.T, x, min(tol, EPS))
    return res <= tol * max(np.linalg.norm(x), 1e-300)


def lineality_space(k: PolyhedralCone) -> np.ndarray:
    return k.lineality_basis.copy()


def is_linear_subspace(k: PolyhedralCone, tol: float = EPS) -> bool:
    return all(contains(k, -g, tol) for g in k.rays)


def is_subset(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> bool:
    """``K1 <= K2`` by generator membership."""
    _same_dim(k1, k2)
    return all(contains(k2, g, tol) for g in k1.generators)


def equals(k1: PolyhedralCone, k2: PolyhedralCone, tol: float = EPS) -> bool:
    """Set equality by mutual generator membership."""
    return is_subset(k1, k2, tol) and is_subset(k2, k1, tol)
