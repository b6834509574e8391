"""Executable checks of the angle and cone-calculus theorems.

Every check returns a :class:`TheoremReport`.  Hypotheses are tested first;
when any fails the conclusion is reported as ``None`` (not applicable) and
nothing is asserted.  Set identities that involve closures are evaluated
without them, since sums of polyhedral cones are closed; each report says
so in its ``notes``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cone as cm
from .angles import cos_dixmier_exact, cos_friedrichs
from .cone import (
    PolyhedralCone,
    cone_sum,
    contains,
    difference,
    dual,
    equals,
    intersect,
    is_linear_subspace,
    is_subset,
    negate,
    orthogonal_complement,
    polar,
)
from .linalg import EPS
from .random_cones import RandomConeParams, gen_random_cone

#: Margin for strict inequalities such as ``c0 < 1``.
STRICT_MARGIN = 1e-9
#: Slack allowed on angle equalities and inequalities between theorem terms.
ANGLE_SLACK = 1e-7
#: Slack on sampled inner-product bounds.
SAMPLE_SLACK = 1e-8

CLOSURE_NOTE = "closures dropped: sums of polyhedral cones are closed"


@dataclass
class TheoremReport:
    theorem_id: str
    hypotheses: list[tuple[str, bool]]
    conclusion: bool | None
    witness: dict = field(default_factory=dict)
    tolerance: float = ANGLE_SLACK
    notes: str = ""

    @property
    def hypotheses_hold(self) -> bool:
        return all(h for _, h in self.hypotheses)

    @property
    def passed(self) -> bool:
        """False only when the hypotheses hold and the conclusion fails."""
        return self.conclusion is not False

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "hypotheses": [{"name": n, "holds": bool(h)} for n, h in self.hypotheses],
            "conclusion": self.conclusion,
            "witness": self.witness,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }


def _report(theorem_id, hypotheses, conclude, witness=None, tolerance=ANGLE_SLACK, notes=""):
    """Evaluate ``conclude()`` only when every hypothesis holds."""
    witness = {} if witness is None else witness
    ok = all(h for _, h in hypotheses)
    conclusion = bool(conclude()) if ok else None
    return TheoremReport(theorem_id, list(hypotheses), conclusion, witness, tolerance, notes)


def is_zero(k: PolyhedralCone) -> bool:
    return k.is_zero


def is_whole_space(k: PolyhedralCone, tol: float = EPS) -> bool:
    """``K = R^n`` tested as ``±e_i in K`` for every ``i``."""
    eye = np.eye(k.dim)
    return all(contains(k, e, tol) and contains(k, -e, tol) for e in eye)


def c0(k1, k2) -> float:
    return cos_dixmier_exact(k1, k2).cosine


def cf(k1, k2) -> float:
    return cos_friedrichs(k1, k2).cosine


def _close(*vals, tol=ANGLE_SLACK) -> bool:
    return max(vals) - min(vals) <= tol


def _sample_members(k: PolyhedralCone, count: int, rng: np.random.Generator) -> np.ndarray:
    g = k.generators
    if g.shape[0] == 0:
        return np.zeros((count, k.dim))
    lam = rng.exponential(size=(count, g.shape[0]))
    lam *= rng.random((count, g.shape[0])) < 0.7  # also hit lower-dimensional faces
    return lam @ g


# ---------------------------------------------------------------------------
# basic facts


def check_basic_facts(k1: PolyhedralCone, k2: PolyhedralCone, samples: int = 1000, seed: int = 0, polar_op=polar) -> list[TheoremReport]:
    """Polar/dual calculus, angle properties and intersection dichotomies.

    ``polar_op`` is injectable so that a deliberately broken polar can be
    shown to make the calculus reports fail.
    """
    rng = np.random.default_rng(seed)
    dual_op = lambda k: negate(polar_op(k))  # noqa: E731
    reports = []

    reports.append(_report(
        "polar_bipolar", [],
        lambda: equals(polar_op(polar_op(k1)), k1) and equals(polar_op(polar_op(k2)), k2),
        tolerance=EPS,
    ))
    reports.append(_report(
        "dual_bidual", [],
        lambda: all(
            equals(dual_op(dual_op(k)), k)
            and equals(polar_op(negate(k)), negate(polar_op(k)))
            and equals(negate(polar_op(k)), dual(k))
            for k in (k1, k2)
        ),
        tolerance=EPS,
    ))
    reports.append(_report(
        "dual_sum", [],
        lambda: equals(polar_op(intersect(k1, k2)), cone_sum(polar_op(k1), polar_op(k2))),
        tolerance=EPS, notes=CLOSURE_NOTE,
    ))

    def sum_facts():
        for k in (k1, k2):
            if not equals(cone_sum(k, k), k):
                return False
            if is_subset(negate(k), k) and not is_linear_subspace(k):
                return False
        return True

    reports.append(_report("cone_sum_idempotent", [], sum_facts, tolerance=EPS))

    a = cos_dixmier_exact(k1, k2)
    b = cos_dixmier_exact(k2, k1)
    f = cos_friedrichs(k1, k2)
    x = _sample_members(k1, samples, rng)
    y = _sample_members(k2, samples, rng)
    lhs = np.einsum("ij,ij->i", x, y)
    rhs = a.cosine * np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
    worst = float(np.max(lhs - rhs)) if samples else 0.0
    neg_c0 = c0(negate(k1), negate(k2))
    neg_cf = cf(negate(k1), negate(k2))
    mixed = (c0(negate(k1), k2), c0(k1, negate(k2)))
    wit = {"c0": a.cosine, "c0_swapped": b.cosine, "c": f.cosine, "c0_negated": neg_c0,
           "c_negated": neg_cf, "c0_mixed": list(mixed), "worst_sample_excess": worst}
    reports.append(_report(
        "angle_properties", [],
        lambda: 0.0 <= f.cosine <= a.cosine + ANGLE_SLACK
        and a.cosine <= 1.0
        and _close(a.cosine, b.cosine)
        and _close(a.cosine, neg_c0)
        and _close(f.cosine, neg_cf)
        and _close(*mixed)
        and worst <= SAMPLE_SLACK,
        wit,
    ))

    j = intersect(k1, k2)
    meet = not j.is_zero
    reports.append(_report(
        "nonzero_intersection_c0_one", [("K1 ∩ K2 != {0}", meet)],
        lambda: abs(a.cosine - 1.0) <= STRICT_MARGIN, {"c0": a.cosine},
    ))
    polar_sum = cone_sum(polar_op(k1), polar_op(k2))
    reports.append(_report(
        "trivial_intersection_iff_polar_sum_full", [],
        lambda: (not meet) == is_whole_space(polar_sum),
        {"intersection_zero": not meet}, tolerance=EPS, notes=CLOSURE_NOTE,
    ))
    reports.append(_report(
        "finite_dim_dichotomy", [],
        lambda: meet == (a.cosine >= 1.0 - STRICT_MARGIN)
        and (not meet) == (abs(a.cosine - f.cosine) <= STRICT_MARGIN)
        and (not meet) == (a.cosine < 1.0 - STRICT_MARGIN),
        {"c0": a.cosine, "c": f.cosine, "intersection_zero": not meet}, tolerance=STRICT_MARGIN,
    ))
    reports.append(_report(
        "polar_dual_intersections_nonzero",
        [("K1 ∩ K2 = {0}", not meet), ("K1 not linear", not is_linear_subspace(k1))],
        lambda: not intersect(polar_op(k1), dual_op(k2)).is_zero
        and not intersect(dual_op(k1), polar_op(k2)).is_zero,
        tolerance=EPS,
    ))
    return reports


# ---------------------------------------------------------------------------
# positive results


def check_subspace_bound(k: PolyhedralCone, m: PolyhedralCone, samples: int = 1000, seed: int = 0) -> TheoremReport:
    """``|<x, y>| <= c0(K, M) ||x|| ||y||`` for a cone ``K`` and subspace ``M``."""
    rng = np.random.default_rng(seed)
    value = c0(k, m)

    def conclude():
        x = _sample_members(k, samples, rng)
        y = _sample_members(m, samples, rng)
        lhs = np.abs(np.einsum("ij,ij->i", x, y))
        rhs = value * np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
        return bool(np.all(lhs <= rhs + SAMPLE_SLACK))

    return _report("subspace_two_sided_bound", [("M linear", is_linear_subspace(m))], conclude,
                   {"c0": value}, tolerance=SAMPLE_SLACK)


def check_nested(k1: PolyhedralCone, k2: PolyhedralCone) -> TheoremReport:
    """``K1 ⊆ K2`` forces both ``c(K1, K2)`` and ``c(K1°, K2°)`` to vanish."""
    wit = {}

    def conclude():
        wit["c"] = cf(k1, k2)
        wit["c_polars"] = cf(polar(k1), polar(k2))
        return wit["c"] <= SAMPLE_SLACK and wit["c_polars"] <= SAMPLE_SLACK

    return _report("nested_cones", [("K1 ⊆ K2", is_subset(k1, k2))], conclude, wit, tolerance=SAMPLE_SLACK)


def hundal_terms(k1: PolyhedralCone, k2: PolyhedralCone, x_cone: PolyhedralCone | None = None) -> tuple[float, float, float]:
    """``(c0(K1, K2), c0(K1⊕ ∩ X, K2° ∩ X), c0(K1⊕, K2°))``."""
    x = difference(k1, k2) if x_cone is None else x_cone
    d1, p2 = dual(k1), polar(k2)
    return c0(k1, k2), c0(intersect(d1, x), intersect(p2, x)), c0(d1, p2)


def check_hundal_extension(k1: PolyhedralCone, k2: PolyhedralCone, x_cone: PolyhedralCone | None = None) -> TheoremReport:
    """Conical Hundal chain ``c0(K1,K2) <= c0(K1⊕∩X, K2°∩X) <= c0(K1⊕, K2°)``.

    ``X`` defaults to ``K1 - K2``, the smallest admissible choice.
    """
    x = difference(k1, k2) if x_cone is None else x_cone
    base = c0(k1, k2)
    wit = {"c0": base, "X": "K1 - K2" if x_cone is None else "given"}

    def conclude():
        _, mid, top = hundal_terms(k1, k2, x)
        wit.update(c0_restricted=mid, c0_dual_polar=top)
        return base <= mid + ANGLE_SLACK and mid <= top + ANGLE_SLACK

    hyps = [("c0(K1,K2) < 1", base < 1.0 - STRICT_MARGIN), ("K1 - K2 ⊆ X", is_subset(difference(k1, k2), x))]
    return _report("hundal_conical", hyps, conclude, wit)


# ---------------------------------------------------------------------------
# negative results


def check_difference_lemma(k1: PolyhedralCone, k2: PolyhedralCone) -> TheoremReport:
    """With ``K1 ∩ K2 = {0}``: ``K1 - K2`` linear, ``(-K1) ∪ K2 ⊆ K1 - K2``
    and "both cones linear" are equivalent."""
    wit = {}

    def conclude():
        d = difference(k1, k2)
        wit["difference_linear"] = is_linear_subspace(d)
        wit["superset"] = is_subset(negate(k1), d) and is_subset(k2, d)
        wit["both_linear"] = is_linear_subspace(k1) and is_linear_subspace(k2)
        return wit["difference_linear"] == wit["superset"] == wit["both_linear"]

    return _report("difference_lemma", [("K1 ∩ K2 = {0}", intersect(k1, k2).is_zero)], conclude, wit, tolerance=EPS)


def check_kkm_conical(k1: PolyhedralCone, k2: PolyhedralCone) -> TheoremReport:
    """``K1 ∩ K2 = {0}`` and ``K1 - K2 = R^n`` force linearity and a four-way c0 equality."""
    wit = {}

    def conclude():
        wit["K1_linear"] = is_linear_subspace(k1)
        wit["K2_linear"] = is_linear_subspace(k2)
        vals = [
            c0(k1, k2),
            c0(dual(k1), polar(k2)),
            c0(polar(k1), dual(k2)),
            c0(orthogonal_complement(k1), orthogonal_complement(k2)),
        ]
        wit["cosines"] = vals
        return wit["K1_linear"] and wit["K2_linear"] and _close(*vals)

    hyps = [("K1 ∩ K2 = {0}", intersect(k1, k2).is_zero), ("K1 - K2 = R^n", is_whole_space(difference(k1, k2)))]
    return _report("kkm_conical", hyps, conclude, wit)


def cEQ_hypotheses(k1: PolyhedralCone, k2: PolyhedralCone, short_circuit: bool = False) -> list[tuple[str, bool]]:
    """Hypotheses of the conical Solmon inequality, cheapest first.

    With ``short_circuit`` evaluation stops at the first failure.
    """
    out = []
    j = intersect(k1, k2)
    out.append(("K1 ∩ K2 linear", is_linear_subspace(j)))
    if short_circuit and not out[-1][1]:
        return out
    d1, p2 = dual(k1), polar(k2)
    out.append(("K1⊕ ∩ K2° linear", is_linear_subspace(intersect(d1, p2))))
    if short_circuit and not out[-1][1]:
        return out
    jperp = orthogonal_complement(j)
    out.append(("(K1⊕ + K1∩K2) ∩ (K1∩K2)⊥ = K1⊕", equals(intersect(cone_sum(d1, j), jperp), d1)))
    if short_circuit and not out[-1][1]:
        return out
    out.append(("(K2° + K1∩K2) ∩ (K1∩K2)⊥ = K2°", equals(intersect(cone_sum(p2, j), jperp), p2)))
    if short_circuit and not out[-1][1]:
        return out
    out.append(("c(K1,K2) < 1", cf(k1, k2) < 1.0 - STRICT_MARGIN))
    return out


def check_theorem_cEQ(k1: PolyhedralCone, k2: PolyhedralCone) -> TheoremReport:
    """Conical Solmon: ``c(K1, K2) <= c(K1⊕, K2°)``, with equality under extra hypotheses."""
    hyps = cEQ_hypotheses(k1, k2)
    wit = {}

    def conclude():
        c_orig = cf(k1, k2)
        d1, p2 = dual(k1), polar(k2)
        c_dp = cf(d1, p2)
        wit.update(c=c_orig, c_dual_polar=c_dp)
        b = intersect(d1, p2)
        bperp = orthogonal_complement(b)
        eq_hyps = [
            ("c(K1⊕,K2°) < 1", c_dp < 1.0 - STRICT_MARGIN),
            ("(K1 + K1⊕∩K2°) ∩ (K1⊕∩K2°)⊥ = K1", equals(intersect(cone_sum(k1, b), bperp), k1)),
            ("(K2 + K1⊕∩K2°) ∩ (K1⊕∩K2°)⊥ = K2", equals(intersect(cone_sum(k2, b), bperp), k2)),
        ]
        wit["equality_hypotheses"] = [{"name": n, "holds": bool(h)} for n, h in eq_hyps]
        ok = c_orig <= c_dp + ANGLE_SLACK
        if all(h for _, h in eq_hyps):
            wit["equality_case"] = True
            ok = ok and abs(c_orig - c_dp) <= ANGLE_SLACK
        else:
            wit["equality_case"] = False
        return ok

    return _report("solmon_conical", hyps, conclude, wit, notes=CLOSURE_NOTE)


def check_lemma_KMperp(a: PolyhedralCone, b: PolyhedralCone) -> TheoremReport:
    """``0 in B`` and ``A ⊆ B⊥`` give ``(A + B) ∩ B° = A``; for linear ``B`` also with ``B⊥``."""
    perp = orthogonal_complement(b)
    hyps = [("0 in B", True), ("A ⊆ B⊥", is_subset(a, perp))]
    wit = {}

    def conclude():
        s = cone_sum(a, b)
        ok = equals(intersect(s, polar(b)), a)
        wit["polar_form"] = ok
        if is_linear_subspace(b):
            wit["perp_form"] = equals(intersect(s, perp), a)
            ok = ok and wit["perp_form"]
        return ok

    return _report("sum_polar_lemma", hyps, conclude, wit, tolerance=EPS)


def check_cor_Rn(k1: PolyhedralCone, k2: PolyhedralCone) -> TheoremReport:
    """Finite-dimensional corollary: trivial intersections give a four-way equality."""
    d1, p2 = dual(k1), polar(k2)
    hyps = [("K1 ∩ K2 = {0}", intersect(k1, k2).is_zero), ("K1⊕ ∩ K2° = {0}", intersect(d1, p2).is_zero)]
    wit = {}

    def conclude():
        vals = [c0(k1, k2), cf(k1, k2), cf(d1, p2), c0(d1, p2)]
        wit["cosines"] = vals
        return _close(*vals)

    return _report("finite_dim_corollary", hyps, conclude, wit)


# ---------------------------------------------------------------------------
# open question explorer


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def _trial_pair(dim: int, seed: int, trial: int) -> tuple[PolyhedralCone, PolyhedralCone]:
    rng = _trial_rng(seed, trial)
    while True:
        cones = []
        for _ in range(2):
            p = RandomConeParams(
                dim,
                int(rng.integers(1, min(dim + 2, 5))),
                int(rng.integers(0, 2**63)),
                lattice=bool(rng.random() < 0.5),
            )
            cones.append(gen_random_cone(p))
        if not (is_linear_subspace(cones[0]) and is_linear_subspace(cones[1])):
            return cones[0], cones[1]


def explore_open_question(dim: int, trials: int, seed: int = 0, max_samples: int = 5) -> dict:
    """Search random pairs (at least one nonlinear) meeting every hypothesis of
    the conical Solmon inequality.

    Evidence only: a zero count says nothing about existence in general.
    Any hit is re-verified with :func:`check_theorem_cEQ` before it is
    counted.
    """
    if not 2 <= dim <= cm.MAX_DIM:
        raise ValueError(f"dim must be in [2, {cm.MAX_DIM}]")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    hits = 0
    samples = []
    for t in range(trials):
        k1, k2 = _trial_pair(dim, seed, t)
        if not all(h for _, h in cEQ_hypotheses(k1, k2, short_circuit=True)):
            continue
        rep = check_theorem_cEQ(k1, k2)
        if not rep.hypotheses_hold:
            continue
        hits += 1
        if len(samples) < max_samples:
            samples.append({
                "trial": t,
                "K1": k1.to_spec().to_dict(),
                "K2": k2.to_spec().to_dict(),
                "report": rep.to_dict(),
            })
    return {
        "dim": dim,
        "trials": trials,
        "seed": seed,
        "hits": hits,
        "sample_hits": samples,
        "note": "randomized evidence only; does not settle the question",
    }

