import json

import numpy as np
import pytest

from coneangles import theorems as th
from coneangles.cone import (
    cone_from_generators,
    cone_sum,
    dumps_json,
    full_space,
    negate,
    nonnegative_orthant,
    orthogonal_complement,
    polar,
    subspace,
    zero_cone,
)
from coneangles.random_cones import RandomConeParams, gen_random_cone, pointed_cone_pair, subspace_pair

R2 = 1 / np.sqrt(2)


def by_id(reports):
    return {r.theorem_id: r for r in reports}


class TestBasicFacts:
    def test_quadrant_pair_all_pass(self, quadrant_pair):
        reps = by_id(th.check_basic_facts(*quadrant_pair, samples=500))
        assert all(r.passed for r in reps.values())
        assert reps["trivial_intersection_iff_polar_sum_full"].conclusion is True
        assert reps["trivial_intersection_iff_polar_sum_full"].witness["intersection_zero"] is True
        assert reps["nonzero_intersection_c0_one"].conclusion is None

    def test_random_dim3(self):
        for seed in range(1, 101):
            k1 = gen_random_cone(RandomConeParams(3, 3, 2 * seed))
            k2 = gen_random_cone(RandomConeParams(3, 3, 2 * seed + 1))
            for r in th.check_basic_facts(k1, k2, samples=200, seed=seed):
                assert r.passed, (seed, r.to_dict())

    def test_corrupted_polar_fails(self, quadrant_pair):
        def broken_polar(k):
            p = polar(k)
            g = p.generators.copy()
            if g.shape[0]:
                g[0] = -g[0]
            return cone_from_generators(g, dim=k.dim)

        k1 = cone_from_generators([[1, 0], [1, 1]])
        k2 = cone_from_generators([[0, 1], [-1, 1]])
        reps = by_id(th.check_basic_facts(k1, k2, samples=100, polar_op=broken_polar))
        assert reps["dual_sum"].conclusion is False
        assert reps["polar_bipolar"].conclusion is False


class TestPositiveResults:
    def test_nested(self):
        r = th.check_nested(cone_from_generators([[1, 0]]), nonnegative_orthant(2))
        assert r.hypotheses_hold and r.conclusion is True
        assert r.witness["c"] == pytest.approx(0, abs=1e-12) and r.witness["c_polars"] == pytest.approx(0, abs=1e-12)
        q = nonnegative_orthant(3)
        assert th.check_nested(q, q).conclusion is True
        r = th.check_nested(nonnegative_orthant(2), negate(nonnegative_orthant(2)))
        assert not r.hypotheses_hold and r.conclusion is None

    def test_hundal_quadrant(self, quadrant_pair):
        k1, k2 = quadrant_pair
        r = th.check_hundal_extension(k1, k2, full_space(2))
        assert r.conclusion is True
        assert r.witness["c0"] == pytest.approx(R2)
        assert r.witness["c0_restricted"] == pytest.approx(1) and r.witness["c0_dual_polar"] == pytest.approx(1)

    def test_hundal_subspaces(self):
        hits = 0
        for s in range(40):
            m, n = subspace_pair(4, s)
            r = th.check_hundal_extension(m, n, cone_sum(m, n))
            assert r.passed
            hits += r.conclusion is True
        assert hits > 10

    def test_hundal_not_applicable(self):
        q = nonnegative_orthant(2)
        r = th.check_hundal_extension(q, q)
        assert r.conclusion is None and r.hypotheses[0] == ("c0(K1,K2) < 1", False)

    def test_subspace_bound(self):
        for s in range(30):
            k, _ = pointed_cone_pair(3, s)
            m = gen_random_cone(RandomConeParams(3, 1, s, subspace_mode=True))
            r = th.check_subspace_bound(k, m, samples=2000, seed=s)
            assert r.conclusion is True


class TestNegativeResults:
    def test_difference_lemma(self, quadrant_pair, line_pair):
        r = th.check_difference_lemma(*quadrant_pair)
        assert r.conclusion is True
        assert r.witness == {"difference_linear": False, "superset": False, "both_linear": False}
        r = th.check_difference_lemma(*line_pair)
        assert r.conclusion is True and all(r.witness.values())
        q = nonnegative_orthant(2)
        assert th.check_difference_lemma(q, q).conclusion is None

    def test_kkm(self, quadrant_pair, line_pair):
        r = th.check_kkm_conical(*line_pair)
        assert r.conclusion is True
        np.testing.assert_allclose(r.witness["cosines"], [R2] * 4, atol=1e-9)
        r = th.check_kkm_conical(*quadrant_pair)
        assert r.conclusion is None
        assert dict(r.hypotheses)["K1 - K2 = R^n"] is False
        r = th.check_kkm_conical(subspace([[1, 0, 0], [0, 1, 0]]), subspace([[0, 0, 1]]))
        assert r.conclusion is True
        np.testing.assert_allclose(r.witness["cosines"], 0, atol=1e-12)

    def test_solmon_km_counterexample(self, km_pair):
        k, m = km_pair
        r = th.check_theorem_cEQ(m, k)
        h = dict(r.hypotheses)
        assert h["K1⊕ ∩ K2° linear"] is False
        assert r.conclusion is None

    def test_solmon_subspaces(self):
        for s in range(30):
            m, n = subspace_pair(int(4 + s % 3), s)
            r = th.check_theorem_cEQ(m, n)
            if not r.hypotheses_hold:  # only c(M, N) < 1 can fail
                assert [n for n, v in r.hypotheses if not v] == ["c(K1,K2) < 1"]
                continue
            assert r.conclusion is True and r.witness["equality_case"] is True
            assert r.witness["c"] == pytest.approx(r.witness["c_dual_polar"], abs=1e-7)

    def test_solmon_identical_pointed(self):
        k = cone_from_generators([[1, 0, 0], [1, 1, 0], [1, 0, 1]])
        r = th.check_theorem_cEQ(k, k)
        assert len(r.hypotheses) == 5
        assert r.passed
        json.loads(dumps_json(r.to_dict()))

    def test_kmperp(self):
        a = cone_from_generators([[0, 1]])
        b = subspace([[1, 0]])
        r = th.check_lemma_KMperp(a, b)
        assert r.conclusion is True and r.witness["perp_form"] is True
        assert th.check_lemma_KMperp(zero_cone(2), nonnegative_orthant(2)).conclusion is True
        r = th.check_lemma_KMperp(nonnegative_orthant(2), b)
        assert r.conclusion is None

    def test_cor_rn(self, line_pair, quadrant_pair):
        r = th.check_cor_Rn(*line_pair)
        assert r.conclusion is True
        np.testing.assert_allclose(r.witness["cosines"], [R2] * 4, atol=1e-9)
        r = th.check_cor_Rn(*quadrant_pair)
        assert dict(r.hypotheses)["K1⊕ ∩ K2° = {0}"] is False and r.conclusion is None
        # pointed pairs never qualify: the two trivial intersections force
        # K1 - K2 = R^n, hence both cones linear
        for s in range(30):
            r = th.check_cor_Rn(*pointed_cone_pair(3, s))
            assert r.conclusion is None
        applicable = 0
        for s in range(30):
            r = th.check_cor_Rn(*subspace_pair(4, s))
            assert r.passed
            applicable += r.conclusion is True
        assert applicable > 0

    def test_polar_dual_intersections(self):
        # case of a linear K2 with K1 nonlinear and K1 ∩ K2 = {0}
        checked = 0
        for s in range(60):
            k1 = gen_random_cone(RandomConeParams(3, 2, s, lineality_dim=0))
            k2 = gen_random_cone(RandomConeParams(3, 1, s, subspace_mode=True))
            r = by_id(th.check_basic_facts(k1, k2, samples=10))["polar_dual_intersections_nonzero"]
            assert r.passed
            checked += r.conclusion is True
        assert checked > 10


class TestReports:
    def test_schema(self, quadrant_pair):
        d = th.check_nested(*quadrant_pair).to_dict()
        assert set(d) == {"theorem_id", "hypotheses", "conclusion", "witness", "tolerance", "notes"}
        assert d["hypotheses"] == [{"name": "K1 ⊆ K2", "holds": False}]
        assert d["conclusion"] is None

    def test_gating(self):
        calls = []
        r = th._report("x", [("h", False)], lambda: calls.append(1) or True)
        assert r.conclusion is None and not calls and r.passed


class TestExplorer:
    def test_zero_trials(self):
        out = th.explore_open_question(2, 0, seed=3)
        assert out["hits"] == 0 and out["sample_hits"] == []

    def test_deterministic(self):
        a = dumps_json(th.explore_open_question(3, 150, seed=42))
        b = dumps_json(th.explore_open_question(3, 150, seed=42))
        assert a == b
        assert "does not settle" in json.loads(a)["note"]

    def test_pairs_nonlinear(self):
        from coneangles.cone import is_linear_subspace

        for t in range(100):
            k1, k2 = th._trial_pair(2, 7, t)
            assert not (is_linear_subspace(k1) and is_linear_subspace(k2))

    def test_hypotheses_accept_subspaces(self):
        # the evaluator is not vacuous: linear pairs with c < 1 meet every hypothesis
        m, n = subspace([[1, 0, 0]]), subspace([[1, 1, 0], [0, 0, 1]])
        assert all(h for _, h in th.cEQ_hypotheses(m, n))
        assert orthogonal_complement(m).lineality_basis.shape[0] == 2

    def test_invalid(self):
        with pytest.raises(ValueError):
            th.explore_open_question(1, 10)
        with pytest.raises(ValueError):
            th.explore_open_question(3, -1)
