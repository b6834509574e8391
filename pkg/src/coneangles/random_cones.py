"""Deterministic random polyhedral cones for property checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import MAX_DIM, PolyhedralCone, cone_from_generators, subspace


@dataclass(frozen=True)
class RandomConeParams:
    """Parameters of :func:`gen_random_cone`.

    ``lineality_dim`` of ``None`` draws it at random (zero half the time);
    ``0`` forces a pointed cone.  ``lattice`` draws directions from
    ``{-1, 0, 1}^dim``, which produces the degenerate configurations
    (shared boundary lines, coordinate halfspaces) that Gaussian directions
    miss with probability one.
    """

    dim: int
    generator_count: int
    seed: int
    subspace_mode: bool = False
    lineality_dim: int | None = None
    lattice: bool = False

    def validate(self):
        if not 2 <= self.dim <= MAX_DIM:
            raise ValueError(f"dim must be in [2, {MAX_DIM}], got {self.dim}")
        if not 1 <= self.generator_count <= 32:
            raise ValueError(f"generator_count must be in [1, 32], got {self.generator_count}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.lineality_dim is not None and not 0 <= self.lineality_dim < self.dim:
            raise ValueError("lineality_dim must be in [0, dim)")


def _directions(rng: np.random.Generator, count: int, dim: int, lattice: bool) -> np.ndarray:
    if not lattice:
        return rng.standard_normal((count, dim))
    out = np.zeros((count, dim))
    for i in range(count):
        while not out[i].any():
            out[i] = rng.integers(-1, 2, size=dim)
    return out


def gen_random_cone(params: RandomConeParams) -> PolyhedralCone:
    """Random canonical cone with at most ``generator_count`` extreme rays."""
    params.validate()
    rng = np.random.default_rng(params.seed)
    n = params.dim
    if params.subspace_mode:
        k = int(rng.integers(1, n))
        while True:
            s = subspace(_directions(rng, k, n, params.lattice))
            if s.lineality_basis.shape[0] == k:
                return s
    lin_dim = params.lineality_dim
    if lin_dim is None:
        lin_dim = 0 if rng.random() < 0.5 else int(rng.integers(1, n))
    lin = _directions(rng, lin_dim, n, params.lattice)
    rays = _directions(rng, params.generator_count, n, params.lattice)
    gens = np.vstack([rays, lin, -lin])
    return cone_from_generators(gens, dim=n)


def pointed_cone_pair(dim: int, seed: int, max_rays: int = 4) -> tuple[PolyhedralCone, PolyhedralCone]:
    """Two random pointed cones, each with 1..max_rays generators."""
    rng = np.random.default_rng(seed)
    c1, c2 = (int(v) for v in rng.integers(1, max_rays + 1, size=2))
    s1, s2 = (int(v) for v in rng.integers(0, 2**63, size=2))
    return (
        gen_random_cone(RandomConeParams(dim, c1, s1, lineality_dim=0)),
        gen_random_cone(RandomConeParams(dim, c2, s2, lineality_dim=0)),
    )


def subspace_pair(dim: int, seed: int) -> tuple[PolyhedralCone, PolyhedralCone]:
    rng = np.random.default_rng(seed)
    s1, s2 = (int(v) for v in rng.integers(0, 2**63, size=2))
    return (
        gen_random_cone(RandomConeParams(dim, 1, s1, subspace_mode=True)),
        gen_random_cone(RandomConeParams(dim, 1, s2, subspace_mode=True)),
    )
