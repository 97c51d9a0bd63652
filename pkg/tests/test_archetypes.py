import numpy as np
import pytest

from archefit import (
    ArgumentError,
    BasisSpec,
    DataError,
    FitOptions,
    GramMatrix,
    design_matrix,
    elbow_scan,
    fit_archetypes,
    gram_matrix,
    rss,
)

QUICK = FitOptions(restarts=5, seed=0)


def planted_data(rng, gens, copies=10, noise=0.0):
    X = np.repeat(gens, copies, axis=0)
    if noise:
        X = X + rng.normal(scale=noise, size=X.shape)
    return X


class TestFitArchetypes:
    def test_k1_is_column_mean(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            X = rng.normal(size=(rng.integers(3, 40), rng.integers(1, 8)))
            model = fit_archetypes(X, 1)
            assert np.abs(model.archetypes[0] - X.mean(axis=0)).max() <= 1e-6
            assert model.rss == pytest.approx(
                np.sum((X - X.mean(axis=0)) ** 2), rel=1e-9
            )

    def test_recovers_planted_generators(self):
        gens = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        X = planted_data(np.random.default_rng(1), gens)
        model = fit_archetypes(X, 4, QUICK)
        assert model.rss <= 1e-8
        # each archetype sits on one distinct generator
        d = np.linalg.norm(model.archetypes[:, None, :] - gens[None], axis=2)
        matched = d.min(axis=1)
        assert matched.max() <= 1e-4
        assert len(set(d.argmin(axis=1))) == 4

    def test_square_corners(self):
        rng = np.random.default_rng(12)
        X = rng.uniform(-1.0, 1.0, size=(200, 2))
        model = fit_archetypes(X, 4, FitOptions(restarts=10, seed=0, rel_tol=1e-9))
        corners = np.array([[-1, -1], [-1, 1], [1, -1], [1, 1]], dtype=float)
        # compare against the corners of the empirical hull
        hull_pts = X[_hull_vertices(X)]
        emp = np.array([
            hull_pts[np.argmin(np.linalg.norm(hull_pts - c, axis=1))] for c in corners
        ])
        d = np.linalg.norm(model.archetypes[:, None, :] - emp[None], axis=2)
        assert d.min(axis=1).max() <= 0.15
        assert len(set(d.argmin(axis=1))) == 4

    def test_invalid_arguments(self):
        X = np.ones((4, 2))
        with pytest.raises(ArgumentError):
            fit_archetypes(X, 0)
        with pytest.raises(ArgumentError):
            fit_archetypes(X, 5)
        with pytest.raises(DataError):
            fit_archetypes(np.array([[1.0, np.nan]]), 1)

    def test_simplex_feasibility_of_result(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(30, 4))
        model = fit_archetypes(X, 3, QUICK)
        assert np.all(model.alpha >= 0)
        assert np.all(model.beta >= 0)
        assert np.abs(model.alpha.sum(axis=1) - 1.0).max() <= 1e-4
        assert np.abs(model.beta.sum(axis=1) - 1.0).max() <= 1e-4
        assert np.abs(model.beta @ X - model.archetypes).max() <= 1e-8

    def test_monotone_descent_and_feasibility_per_sweep(self):
        rng = np.random.default_rng(77)
        for trial in range(10):
            X = rng.normal(size=(rng.integers(8, 40), rng.integers(2, 6)))
            k = int(rng.integers(2, 5))
            trace = []
            fit_archetypes(X, k, FitOptions(restarts=3, seed=trial), trace=trace)
            assert trace
            for run in trace:
                rss_path = [rec["rss"] for rec in run]
                diffs = np.diff(rss_path)
                assert np.all(diffs <= 1e-9)
                for rec in run:
                    assert rec["alpha_min"] >= 0
                    assert rec["beta_min"] >= 0
                    assert rec["alpha_sum_err"] <= 1e-4
                    assert rec["beta_sum_err"] <= 1e-4

    def test_metric_reduction_is_exact(self):
        rng = np.random.default_rng(9)
        spec = BasisSpec.bspline(6, (0.0, 1.0), order=3)
        W = gram_matrix(spec)
        from archefit.linalg import cholesky_spd

        X = rng.normal(size=(15, 6))
        L = cholesky_spd(W.values)
        m1 = fit_archetypes(X, 3, QUICK, metric=W)
        m2 = fit_archetypes(X @ L, 3, QUICK)
        assert np.abs(m1.alpha - m2.alpha).max() <= 1e-10
        assert np.abs(m1.beta - m2.beta).max() <= 1e-10
        assert m1.rss == pytest.approx(m2.rss, abs=1e-10)

    def test_standardize_flag(self):
        rng = np.random.default_rng(21)
        X = rng.normal(size=(25, 3)) * np.array([1.0, 10.0, 100.0]) + 5.0
        m = fit_archetypes(X, 2, FitOptions(restarts=3, seed=0, standardize=True))
        from archefit import standardize_columns

        Xs, _, _ = standardize_columns(X)
        m_ref = fit_archetypes(Xs, 2, FitOptions(restarts=3, seed=0))
        assert m.rss == pytest.approx(m_ref.rss, abs=1e-12)


def _hull_vertices(X):
    from scipy.spatial import ConvexHull

    return ConvexHull(X).vertices


class TestRss:
    def test_exact_representation_is_zero(self):
        rng = np.random.default_rng(2)
        Z = rng.normal(size=(3, 4))
        alpha = rng.dirichlet(np.ones(3), size=10)
        X = alpha @ Z
        assert rss(X, alpha, Z) <= 1e-20

    def test_unit_example(self):
        assert rss(np.array([[1.0, 0.0]]), np.ones((1, 1)), np.zeros((1, 2))) == 1.0

    def test_metric_matches_grid_quadrature(self):
        rng = np.random.default_rng(3)
        spec = BasisSpec.bspline(8, (0.0, 1.0), order=4)
        W = gram_matrix(spec)
        X = rng.normal(size=(6, 8))
        alpha = rng.dirichlet(np.ones(2), size=6)
        Z = rng.dirichlet(np.ones(6), size=2) @ X
        val = rss(X, alpha, Z, metric=W)
        grid = np.linspace(0.0, 1.0, 100_001)
        B = design_matrix(spec, grid)
        resid_curves = (X - alpha @ Z) @ B.T
        ref = np.trapezoid(resid_curves**2, grid, axis=1).sum()
        assert val == pytest.approx(ref, rel=1e-4)

    def test_shape_mismatch(self):
        with pytest.raises(ArgumentError):
            rss(np.ones((3, 2)), np.ones((3, 2)), np.ones((2, 3)))


class TestElbowScan:
    def test_single_k_equals_total_variance(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(20, 3))
        report = elbow_scan(X, [1], QUICK)
        assert report.rows[0].rss == pytest.approx(
            np.sum((X - X.mean(axis=0)) ** 2), rel=1e-9
        )

    def test_planted_k_drops_to_zero(self):
        gens = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        X = planted_data(np.random.default_rng(6), gens, copies=8)
        report = elbow_scan(X, [1, 2, 3], QUICK)
        assert report.rows[-1].rss <= 1e-6
        assert report.rows[0].rss > report.rows[-1].rss

    def test_nonincreasing_in_k(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(30, 4))
        report = elbow_scan(X, range(1, 7), FitOptions(restarts=8, seed=0))
        values = report.rss_values()
        assert all(b <= a + 1e-6 * max(a, 1.0) for a, b in zip(values, values[1:]))

    def test_requires_increasing_ks(self):
        with pytest.raises(ArgumentError):
            elbow_scan(np.ones((5, 2)), [2, 2], QUICK)
