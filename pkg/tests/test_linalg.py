import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from archefit import (
    ArgumentError,
    BasisSpec,
    NotPositiveDefiniteError,
    SolverOptions,
    cholesky_spd,
    gram_matrix,
    nnls_brute_force,
    nnls_solve,
    simplex_ls,
)


class TestNnls:
    def test_identity_design(self):
        w = nnls_solve(np.eye(3), [1.0, 2.0, 3.0])
        np.testing.assert_allclose(w, [1.0, 2.0, 3.0], atol=1e-12)

    def test_clips_negative_target(self):
        w = nnls_solve(np.eye(2), [-1.0, 2.0])
        np.testing.assert_allclose(w, [0.0, 2.0], atol=1e-12)

    def test_matches_subset_enumeration_oracle(self):
        rng = np.random.default_rng(1234)
        for _ in range(25):
            T = rng.normal(size=(5, 3))
            u = rng.normal(size=5)
            w = nnls_solve(T, u)
            w_ref = nnls_brute_force(T, u)
            np.testing.assert_allclose(w, w_ref, atol=1e-8)

    def test_kkt_conditions(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            T = rng.normal(size=(8, 5))
            u = rng.normal(size=8)
            w = nnls_solve(T, u)
            grad = T.T @ (T @ w - u)
            tol = 1e-8 * max(1.0, np.abs(T.T @ u).max())
            assert np.all(w >= 0)
            assert np.all(np.abs(grad[w > 0]) <= tol)
            assert np.all(grad[w == 0] >= -tol)

    def test_never_beaten_by_random_feasible_points(self):
        rng = np.random.default_rng(99)
        for _ in range(5):
            T = rng.normal(size=(6, 4))
            u = rng.normal(size=6)
            w = nnls_solve(T, u)
            best = np.sum((u - T @ w) ** 2)
            trials = rng.exponential(size=(1000, 4))
            costs = np.sum((u[None, :] - trials @ T.T) ** 2, axis=1)
            assert best <= costs.min() + 1e-6

    def test_zero_column_is_fine(self):
        T = np.array([[0.0, 1.0], [0.0, 2.0]])
        w = nnls_solve(T, [1.0, 2.0])
        assert w[1] == pytest.approx(1.0, abs=1e-10)

    @given(
        arrays(np.float64, (4, 3), elements=st.floats(-10, 10)),
        arrays(np.float64, (4,), elements=st.floats(-10, 10)),
    )
    @settings(max_examples=150, deadline=None)
    def test_output_always_nonnegative(self, T, u):
        w = nnls_solve(T, u)
        assert np.all(w >= 0)


class TestSimplexLs:
    def test_single_column_exact(self):
        u = np.array([0.3, -0.7, 1.1])
        w = simplex_ls(u[:, None], u)
        assert w[0] == pytest.approx(1.0, abs=1e-8)

    def test_symmetric_target_splits_evenly(self):
        T = np.array([[0.0, 1.0], [1.0, 0.0]])
        w = simplex_ls(T, [0.5, 0.5])
        np.testing.assert_allclose(w, [0.5, 0.5], atol=1e-6)

    def test_zero_column_takes_up_slack(self):
        # One useless column plus one useful one; the line-search oracle
        # over w2 with w1 = 1 - w2 puts the optimum at w = (0.75, 0.25).
        T = np.array([[0.0, 1.0], [0.0, 1.0]])
        u = np.array([0.25, 0.25])
        w = simplex_ls(T, u)
        grid = np.linspace(0.0, 1.0, 1_000_001)
        H = SolverOptions().huge_weight
        costs = 2 * (0.25 - grid) ** 2 + H * H * (1 - (1 - grid) - grid) ** 2
        assert grid[np.argmin(costs)] == pytest.approx(w[1], abs=1e-4)
        np.testing.assert_allclose(w, [0.75, 0.25], atol=1e-8)

    def test_sum_defect_and_h_scaling(self):
        rng = np.random.default_rng(42)
        T = rng.normal(size=(6, 4))
        u = rng.normal(size=6)
        w200 = simplex_ls(T, u, SolverOptions(huge_weight=200.0))
        defect200 = abs(w200.sum() - 1.0)
        assert defect200 <= 1e-4
        w2000 = simplex_ls(T, u, SolverOptions(huge_weight=2000.0))
        defect2000 = abs(w2000.sum() - 1.0)
        assert defect2000 <= defect200

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_weights_near_simplex(self, seed):
        # worst-case unit-scale draws can push the defect slightly past the
        # typical 1e-4 (it is ~|residual| * |T| / H^2), hence the headroom
        rng = np.random.default_rng(seed)
        T = rng.normal(size=(5, 3))
        u = rng.normal(size=5)
        w = simplex_ls(T, u)
        assert np.all(w >= 0)
        assert abs(w.sum() - 1.0) <= 2.5e-4


class TestCholesky:
    def test_identity(self):
        np.testing.assert_array_equal(cholesky_spd(np.eye(4)), np.eye(4))

    def test_diagonal(self):
        L = cholesky_spd(np.diag([4.0, 9.0]))
        np.testing.assert_allclose(L, np.diag([2.0, 3.0]), atol=1e-14)

    def test_bspline_gram_roundtrip(self):
        W = gram_matrix(BasisSpec.bspline(8, (0.0, 1.0), order=4)).values
        L = cholesky_spd(W)
        assert np.linalg.norm(L @ L.T - W) <= 1e-10

    def test_random_spd_roundtrip(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            A = rng.normal(size=(6, 6))
            W = A @ A.T + 1e-3 * np.eye(6)
            L = cholesky_spd(W)
            assert np.tril(L, -1).size  # lower triangular by construction
            assert np.all(np.triu(L, 1) == 0)
            rel = np.linalg.norm(L @ L.T - W) / np.linalg.norm(W)
            assert rel <= 1e-10

    def test_indefinite_reports_pivot(self):
        W = np.diag([1.0, -1.0, 2.0])
        with pytest.raises(NotPositiveDefiniteError) as err:
            cholesky_spd(W)
        assert err.value.index == 1

    def test_jitter_retry(self):
        W = np.diag([1.0, -1e-9, 2.0])
        with pytest.raises(NotPositiveDefiniteError):
            cholesky_spd(W)
        L = cholesky_spd(W, jitter=1e-6)
        assert np.isfinite(L).all()

    def test_asymmetric_rejected(self):
        W = np.array([[1.0, 0.5], [0.2, 1.0]])
        with pytest.raises(ArgumentError):
            cholesky_spd(W)
