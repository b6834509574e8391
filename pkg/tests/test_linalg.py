import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import nnls as scipy_nnls

from coneangles.linalg import as_matrix, matrix_rank, nullspace, orthonormal_basis, solve_nnls, svd_small

# well-scaled entries: exact zeros or magnitudes in [1e-3, 10]
finite = st.one_of(st.just(0.0), st.floats(1e-3, 10), st.floats(-10, -1e-3))


class TestOrthonormalBasis:
    def test_axis_scaling(self):
        b = orthonormal_basis([[2, 0], [0, 3]])
        # order follows the singular values; compare as a set
        got = sorted(tuple(np.round(r, 12)) for r in b)
        assert got == [(0.0, 1.0), (1.0, 0.0)]

    def test_rank_one_duplicate(self):
        b = orthonormal_basis([[1, 1], [2, 2]])
        assert b.shape == (1, 2)
        np.testing.assert_allclose(b[0], np.array([1, 1]) / np.sqrt(2), atol=1e-12)

    def test_triangular_spans_r3(self):
        b = orthonormal_basis([[1, 0, 0], [1, 1, 0], [1, 1, 1]])
        assert b.shape == (3, 3)
        assert np.max(np.abs(b @ b.T - np.eye(3))) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="vector 1 has length 3, expected 2"):
            orthonormal_basis([[1, 0], [1, 0, 0]])

    def test_random_gram(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            m = int(rng.integers(1, 9))
            a = rng.standard_normal((m, n))
            if rng.random() < 0.3:
                a[-1] = a[0] * 2.0  # force rank deficiency
            b = orthonormal_basis(a)
            assert np.max(np.abs(b @ b.T - np.eye(b.shape[0]))) <= 1e-10
            assert b.shape[0] == np.linalg.matrix_rank(a)
            # same span: projecting the input onto span(b) is lossless
            np.testing.assert_allclose(a @ b.T @ b, a, atol=1e-9)


class TestSvd:
    def test_identity(self):
        np.testing.assert_allclose(svd_small(np.eye(2)).singular_values, [1, 1])

    def test_zero(self):
        np.testing.assert_allclose(svd_small(np.zeros((2, 2))).singular_values, [0, 0])

    def test_det_frobenius(self):
        s = svd_small([[1, 1], [0, 1]]).singular_values
        assert s[0] * s[1] == pytest.approx(1.0, abs=1e-12)
        assert s @ s == pytest.approx(3.0, abs=1e-12)

    def test_nonfinite(self):
        with pytest.raises(ValueError):
            svd_small([[np.nan, 0], [0, 1]])

    def test_reconstruction(self):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            a = rng.standard_normal((int(rng.integers(1, 9)), int(rng.integers(1, 9))))
            r = svd_small(a)
            s = r.singular_values
            assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
            np.testing.assert_allclose(np.linalg.norm(r.left_vectors, axis=0), 1, atol=1e-12)
            np.testing.assert_allclose(np.linalg.norm(r.right_vectors, axis=0), 1, atol=1e-12)
            rec = r.left_vectors @ np.diag(s) @ r.right_vectors.T
            assert np.linalg.norm(a - rec) <= 1e-10 * (1 + np.linalg.norm(a))


def test_nullspace_and_rank():
    ns = nullspace(np.array([[1.0, 1.0, 0.0]]))
    assert ns.shape == (2, 3)
    np.testing.assert_allclose(ns @ [1, 1, 0], 0, atol=1e-12)
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert as_matrix([], 3).shape == (0, 3)


@st.composite
def nnls_problems(draw):
    n = draw(st.integers(1, 8))
    m = draw(st.integers(1, 12))
    return draw(arrays(float, (n, m), elements=finite)), draw(arrays(float, (n,), elements=finite))


class TestNnls:
    def test_orthant_clamp(self):
        lam, res = solve_nnls(np.eye(2), [-1, 2])
        np.testing.assert_allclose(lam, [0, 2])
        assert res == pytest.approx(1.0)

    def test_line(self):
        lam, res = solve_nnls(np.array([[1.0], [1.0]]), [1, 0])
        np.testing.assert_allclose(lam, [0.5])
        assert res == pytest.approx(1 / np.sqrt(2))

    def test_polar_point(self):
        g = np.array([[0.0, 1.0], [1.0, 1.0]])  # columns (0,1), (1,1)
        # halfspace oracle: x = (0,-1) has <g_i, x> <= 0 for both columns
        assert np.all(g.T @ [0, -1] <= 0)
        lam, res = solve_nnls(g, [0, -1])
        np.testing.assert_allclose(lam, [0, 0])
        assert res == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            solve_nnls(np.eye(2), [1, 2, 3])

    def test_empty_matrix(self):
        lam, res = solve_nnls(np.zeros((2, 0)), [3, 4])
        assert lam.shape == (0,) and res == pytest.approx(5.0)

    @settings(max_examples=300, deadline=None)
    @given(nnls_problems())
    def test_kkt_and_scipy_agreement(self, gx):
        g, x = gx
        tol = 1e-9
        lam, res = solve_nnls(g, x, tol)
        assert np.all(lam >= 0)
        grad = g.T @ (g @ lam) - g.T @ x
        scale = (1 + np.linalg.norm(x)) * (1 + np.abs(g).max()) ** 2
        assert np.all(grad >= -1e-7 * scale)
        assert np.all(np.abs(lam * grad) <= 1e-7 * scale * (1 + lam.max()))
        _, ref = scipy_nnls(g, x)
        assert res == pytest.approx(ref, abs=1e-7 * (1 + np.linalg.norm(x)))
