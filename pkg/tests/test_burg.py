import numpy as np
import pytest

from windcast import (
    ArModel,
    InsufficientHistory,
    NonFiniteInput,
    OrderCriterion,
    TooShort,
    fit_burg,
    is_stable,
    predict_multi,
    predict_one,
    select_order,
)

from oracles import ols_ar_fit


def ar_draw(coeffs, n, seed, mean=0.0):
    rng = np.random.RandomState(seed)
    p = len(coeffs)
    x = np.zeros(n + 200)
    eps = rng.standard_normal(n + 200)
    for t in range(p, n + 200):
        x[t] = np.dot(coeffs, x[t - p: t][::-1]) + eps[t]
    return x[200:] + mean


class TestFitBurg:
    def test_alternating_series_is_perfectly_predicted(self):
        x = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]
        model = fit_burg(x, 1)
        assert model.coefficients[0] == pytest.approx(-1.0)
        assert model.noise_variance == pytest.approx(0.0)
        assert model.mean == pytest.approx(0.0)

    def test_constant_series_degenerates(self):
        model = fit_burg([5.0, 5.0, 5.0, 5.0], 2)
        assert model.order == 0
        assert model.mean == 5.0
        assert model.noise_variance == 0.0
        assert predict_one(model, []) == 5.0

    def test_recovers_seeded_ar2(self):
        x = ar_draw([0.75, -0.5], 10000, seed=3)
        model = fit_burg(x, 2)
        assert np.allclose(model.coefficients, [0.75, -0.5], atol=0.05)
        assert np.allclose(model.coefficients, ols_ar_fit(x, 2), atol=0.01)

    def test_mean_is_removed_and_restored(self):
        x = ar_draw([0.6], 5000, seed=4, mean=9.0)
        model = fit_burg(x, 1)
        assert model.mean == pytest.approx(np.mean(x))
        shifted = fit_burg(x + 3.0, 1)
        assert np.allclose(shifted.coefficients, model.coefficients,
                           atol=1e-10)
        assert shifted.mean == pytest.approx(model.mean + 3.0)

    def test_noise_variance_non_increasing_in_order(self):
        x = ar_draw([0.7, -0.2], 2000, seed=5)
        variances = [fit_burg(x, p).noise_variance for p in range(1, 11)]
        assert all(a >= b - 1e-12 for a, b in zip(variances, variances[1:]))

    def test_reflection_bounded(self):
        rng = np.random.RandomState(6)
        for _ in range(300):
            n = rng.randint(3, 60)
            x = rng.standard_normal(n) * rng.uniform(0.1, 10)
            model = fit_burg(x, rng.randint(1, min(6, n)))
            assert np.all(np.abs(model.reflection) <= 1.0)

    def test_too_short(self):
        with pytest.raises(TooShort):
            fit_burg([1.0, 2.0], 2)

    def test_non_finite(self):
        with pytest.raises(NonFiniteInput):
            fit_burg([1.0, np.nan, 2.0], 1)


class TestSelectOrder:
    def test_fixed_passes_through(self):
        crit = OrderCriterion.fixed(3)
        assert select_order(np.arange(20.0), crit) == 3

    def test_aic_finds_ar1(self):
        # AIC over-selects by one order with small probability, so judge the
        # batch rather than a single draw
        crit = OrderCriterion.aic(max_order=10)
        picks = [select_order(ar_draw([0.9], 5000, seed=s), crit) for s in range(12)]
        assert picks.count(1) >= 8
        assert all(p in (1, 2) for p in picks)

    def test_fpe_indifferent_on_white_noise(self):
        rng = np.random.RandomState(8)
        x = rng.standard_normal(5000)
        p = select_order(x, OrderCriterion.fpe(max_order=10))
        s2_chosen = fit_burg(x, p).noise_variance
        s2_one = fit_burg(x, 1).noise_variance
        assert abs(s2_chosen - s2_one) / s2_one < 0.02

    def test_constant_selects_degenerate(self):
        assert select_order([4.0] * 50, OrderCriterion.aic()) == 0

    def test_cap_must_leave_data(self):
        with pytest.raises(TooShort):
            select_order(np.arange(10.0), OrderCriterion.aic(max_order=5))


class TestPredict:
    def test_one_step_ar1(self):
        model = ArModel(order=1, coefficients=[0.5], mean=0.0,
                        noise_variance=1.0)
        assert predict_one(model, [2.0]) == pytest.approx(1.0)

    def test_one_step_ar2(self):
        model = ArModel(order=2, coefficients=[0.75, -0.5], mean=0.0,
                        noise_variance=1.0)
        assert predict_one(model, [1.0, 2.0]) == pytest.approx(-0.25)

    def test_history_is_most_recent_first(self):
        model = ArModel(order=2, coefficients=[1.0, 0.0], mean=0.0,
                        noise_variance=1.0)
        assert predict_one(model, [3.0, 7.0]) == pytest.approx(3.0)

    def test_multi_step_geometric(self):
        model = ArModel(order=1, coefficients=[0.5], mean=0.0,
                        noise_variance=1.0)
        assert np.allclose(predict_multi(model, [2.0], 3), [1.0, 0.5, 0.25])

    def test_levels_off_to_mean(self):
        model = ArModel(order=1, coefficients=[0.5], mean=4.0,
                        noise_variance=1.0)
        path = predict_multi(model, [9.0], 50)
        assert abs(path[-1] - 4.0) < 1e-10

    def test_degenerate_predicts_mean_forever(self):
        model = fit_burg([5.0] * 10, 3)
        assert np.array_equal(predict_multi(model, [], 4), [5.0] * 4)

    def test_insufficient_history(self):
        model = ArModel(order=2, coefficients=[0.1, 0.1], mean=0.0,
                        noise_variance=1.0)
        with pytest.raises(InsufficientHistory):
            predict_one(model, [1.0])


class TestIsStable:
    def test_ar1_interval(self):
        stable = ArModel(order=1, coefficients=[0.99], mean=0.0,
                         noise_variance=1.0)
        boundary = ArModel(order=1, coefficients=[1.0], mean=0.0,
                           noise_variance=1.0)
        assert is_stable(stable)
        assert not is_stable(boundary)

    def test_ar2_triangle(self):
        inside = ArModel(order=2, coefficients=[0.5, 0.4], mean=0.0,
                         noise_variance=1.0)
        assert is_stable(inside)
        # alpha2 - alpha1 = 1.1 >= 1: explosive despite small |alpha1|
        outside = ArModel(order=2, coefficients=[-0.6, 0.5], mean=0.0,
                          noise_variance=1.0)
        assert not is_stable(outside)

    def test_degenerate_is_stable(self):
        assert is_stable(fit_burg([2.0, 2.0, 2.0], 0))

    def test_high_order_uses_roots(self):
        model = ArModel(order=3, coefficients=[0.2, 0.1, 0.05], mean=0.0,
                        noise_variance=1.0)
        assert is_stable(model)
        explosive = ArModel(order=3, coefficients=[0.0, 0.0, 1.2], mean=0.0,
                            noise_variance=1.0)
        assert not is_stable(explosive)

    def test_fitted_models_use_reflections(self):
        x = ar_draw([0.75, -0.5], 500, seed=9)
        assert is_stable(fit_burg(x, 2))
