import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archefit import (
    ArgumentError,
    BasisSpec,
    DomainError,
    SampledCurve,
    UnderdeterminedFitError,
    design_matrix,
    evaluate_basis,
    evaluate_curve,
    fit_coefficients,
    gram_matrix,
)


@pytest.fixture
def cubic_8():
    return BasisSpec.bspline(8, (0.0, 1.0), order=4)


@pytest.fixture
def fourier_12():
    return BasisSpec.fourier(12, (0.0, 12.0))


class TestEvaluateBasis:
    def test_bspline_partition_of_unity(self, cubic_8):
        for t in np.linspace(0.0, 1.0, 57):
            vals = evaluate_basis(cubic_8, t)
            assert np.all(vals >= 0)
            assert vals.sum() == pytest.approx(1.0, abs=1e-12)

    def test_fourier_constant_term(self, fourier_12):
        for t in [0.0, 3.7, 12.0]:
            vals = evaluate_basis(fourier_12, t)
            assert vals[0] == pytest.approx(1.0 / np.sqrt(12.0), abs=1e-15)

    def test_linear_hats_by_hand(self):
        spec = BasisSpec.bspline(3, (0.0, 1.0), order=2, interior_knots=[0.5])
        np.testing.assert_allclose(
            evaluate_basis(spec, 0.25), [0.5, 0.5, 0.0], atol=1e-15
        )
        np.testing.assert_allclose(
            evaluate_basis(spec, 1.0), [0.0, 0.0, 1.0], atol=1e-15
        )

    def test_outside_domain_raises(self, cubic_8):
        with pytest.raises(DomainError):
            evaluate_basis(cubic_8, 1.5)

    @given(st.floats(0.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_partition_of_unity_property(self, t):
        spec = BasisSpec.bspline(7, (0.0, 1.0), order=3)
        vals = evaluate_basis(spec, t)
        assert np.all(vals >= 0)
        assert abs(vals.sum() - 1.0) <= 1e-12


class TestGramMatrix:
    def test_fourier_is_identity(self, fourier_12):
        W = gram_matrix(fourier_12)
        assert W.is_identity()

    def test_fourier_identity_any_size(self):
        for m in (1, 2, 5, 13):
            assert gram_matrix(BasisSpec.fourier(m, (0.0, 2.0))).is_identity()

    def test_partition_of_unity_sum(self):
        for size, order, dom in [(8, 4, (0.0, 1.0)), (32, 4, (1960.0, 2013.0)),
                                 (5, 2, (-1.0, 3.0))]:
            W = gram_matrix(BasisSpec.bspline(size, dom, order=order)).values
            assert W.sum() == pytest.approx(dom[1] - dom[0], abs=1e-10)

    def test_against_dense_trapezoid(self, cubic_8):
        W = gram_matrix(cubic_8).values
        grid = np.linspace(0.0, 1.0, 1_000_001)
        B = design_matrix(cubic_8, grid)
        W_ref = np.trapezoid(B[:, :, None] * B[:, None, :], grid, axis=0)
        assert np.abs(W - W_ref).max() <= 1e-8

    def test_symmetric_and_near_psd(self):
        for spec in [
            BasisSpec.bspline(6, (0.0, 2.0), order=3),
            BasisSpec.bspline(12, (-1.0, 1.0), order=4),
            BasisSpec.bspline(4, (0.0, 1.0), order=1),
        ]:
            W = gram_matrix(spec).values
            assert np.array_equal(W, W.T)
            assert np.linalg.eigvalsh(W).min() > -1e-12

    def test_fourier_inner_products_match_quadrature(self, fourier_12):
        rng = np.random.default_rng(0)
        grid = np.linspace(0.0, 12.0, 200_001)
        B = design_matrix(fourier_12, grid)
        for _ in range(5):
            a = rng.normal(size=12)
            b = rng.normal(size=12)
            dot_l2 = np.trapezoid((B @ a) * (B @ b), grid)
            assert dot_l2 == pytest.approx(a @ b, abs=1e-8)


class TestFitCoefficients:
    def test_constant_function(self, cubic_8):
        ts = np.linspace(0.0, 1.0, 20)
        curve = SampledCurve(ts, np.ones_like(ts), id="const")
        coef = fit_coefficients(cubic_8, curve)
        np.testing.assert_allclose(coef, np.ones(8), atol=1e-10)

    def test_sine_in_fourier_span(self, fourier_12):
        ts = np.linspace(0.0, 12.0, 50)
        vals = np.sin(2 * np.pi * ts / 12.0)
        coef = fit_coefficients(fourier_12, SampledCurve(ts, vals, id="sine"))
        recon = evaluate_curve(fourier_12, coef, ts)
        assert np.abs(recon - vals).max() <= 1e-10

    def test_cubic_polynomial_reproduced_exactly(self):
        rng = np.random.default_rng(11)
        poly = np.polynomial.Polynomial([0.3, -1.2, 2.0, 0.7])
        for interior in (None, [0.2, 0.4, 0.9]):
            size = 4 + (3 if interior else 2)
            spec = BasisSpec.bspline(
                size, (0.0, 1.0), order=4,
                interior_knots=interior if interior else [0.3, 0.7],
            )
            ts = np.sort(rng.uniform(0.0, 1.0, 60))
            curve = SampledCurve(ts, poly(ts), id="cubic")
            coef = fit_coefficients(spec, curve)
            assert np.abs(evaluate_curve(spec, coef, ts) - poly(ts)).max() <= 1e-9

    def test_too_few_points_names_curve(self, cubic_8):
        curve = SampledCurve([0.1, 0.5, 0.9], [1.0, 2.0, 3.0], id="shorty")
        with pytest.raises(UnderdeterminedFitError) as err:
            fit_coefficients(cubic_8, curve)
        assert err.value.curve_id == "shorty"
        assert "shorty" in str(err.value)

    def test_clustered_points_rank_deficient(self, cubic_8):
        ts = np.linspace(0.01, 0.02, 10)  # all in the first knot span
        curve = SampledCurve(ts, np.ones_like(ts), id="clustered")
        with pytest.raises(UnderdeterminedFitError):
            fit_coefficients(cubic_8, curve)

    def test_span_functions_fit_exactly(self, cubic_8):
        # any function already in the span is recovered at >= m generic points
        rng = np.random.default_rng(3)
        coef_true = rng.normal(size=8)
        ts = np.sort(rng.uniform(0.0, 1.0, 25))
        vals = evaluate_curve(cubic_8, coef_true, ts)
        coef = fit_coefficients(cubic_8, SampledCurve(ts, vals, id="span"))
        recon = evaluate_curve(cubic_8, coef, ts)
        assert np.abs(recon - vals).max() <= 1e-9


class TestEvaluateCurve:
    def test_zero_coefficients(self, cubic_8):
        out = evaluate_curve(cubic_8, np.zeros(8), np.linspace(0, 1, 9))
        np.testing.assert_array_equal(out, np.zeros(9))

    def test_round_trip(self, fourier_12):
        ts = np.linspace(0.0, 12.0, 30)
        vals = 2.0 + np.cos(2 * np.pi * ts / 12.0)
        coef = fit_coefficients(fourier_12, SampledCurve(ts, vals, id="rt"))
        assert np.abs(evaluate_curve(fourier_12, coef, ts) - vals).max() <= 1e-9

    def test_single_bspline_matches_recursion(self, cubic_8):
        grid = np.linspace(0.0, 1.0, 41)
        for j in (0, 3, 7):
            coef = np.zeros(8)
            coef[j] = 1.0
            direct = np.array([evaluate_basis(cubic_8, t)[j] for t in grid])
            np.testing.assert_allclose(
                evaluate_curve(cubic_8, coef, grid), direct, atol=1e-14
            )

    def test_wrong_length_raises(self, cubic_8):
        with pytest.raises(ArgumentError):
            evaluate_curve(cubic_8, np.zeros(5), [0.5])


class TestSpecValidation:
    def test_bad_domain(self):
        with pytest.raises(ArgumentError):
            BasisSpec.fourier(5, (1.0, 1.0))

    def test_bspline_needs_order_many_functions(self):
        with pytest.raises(ArgumentError):
            BasisSpec.bspline(3, (0.0, 1.0), order=4)

    def test_wrong_interior_knot_count(self):
        with pytest.raises(ArgumentError):
            BasisSpec.bspline(8, (0.0, 1.0), order=4, interior_knots=[0.5])

    def test_fourier_period_must_divide_domain(self):
        with pytest.raises(ArgumentError):
            BasisSpec.fourier(5, (0.0, 10.0), period=3.0)
        BasisSpec.fourier(5, (0.0, 10.0), period=5.0)  # two full cycles is fine

    def test_curve_validation(self):
        with pytest.raises(ArgumentError):
            SampledCurve([0.0, 0.0, 1.0], [1.0, 2.0, 3.0], id="dup")
        with pytest.raises(ArgumentError):
            SampledCurve([0.0, 1.0], [1.0], id="ragged")
