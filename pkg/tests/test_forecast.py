import numpy as np
import pytest

from windcast import (
    ALL_METHODS,
    METHOD_PARTITIONED,
    METHOD_PERSISTENCE,
    METHOD_SIMPLE,
    DayForecast,
    EmptyList,
    EmptySeries,
    ForecastConfig,
    InvalidPeriod,
    LengthMismatch,
    MissingHistory,
    NotDivisible,
    NotEnoughDays,
    OrderCriterion,
    PartitionMatrix,
    SeriesTooShort,
    TimeSeries,
    UnknownMethod,
    averaged_rmse,
    backtest,
    forecast_day_partitioned,
    forecast_day_simple_ar,
    forecast_persistence,
    hourly_rmse,
    make_diurnal_corpus,
    partition,
)
from conftest import DAY_SECONDS

DT = 600.0


def matrix(rows, dt=DT, origin=0.0):
    return PartitionMatrix(data=np.asarray(rows, dtype=float), dt=dt, origin=origin)


def day_values(x, day):
    return x.values[day * 144:(day + 1) * 144]


class TestForecastConfig:
    def test_defaults(self):
        cfg = ForecastConfig()
        assert cfg.period_len == 144
        assert cfg.order_criterion.kind == "aic"
        assert cfg.order_criterion.max_order == 20
        assert cfg.training_days is None
        assert cfg.simple_window == 30 * 144
        assert cfg.clamp_negative

    def test_period_too_small(self):
        with pytest.raises(ValueError):
            ForecastConfig(period_len=1)

    def test_training_days_too_small(self):
        with pytest.raises(ValueError):
            ForecastConfig(training_days=2)

    def test_simple_window_below_period(self):
        with pytest.raises(ValueError):
            ForecastConfig(period_len=144, simple_ar_training_samples=100)


class TestDayForecast:
    def test_rejects_unknown_method(self):
        with pytest.raises(ValueError):
            DayForecast(values=np.ones(4), method="oracle", target_day_origin=0.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            DayForecast(values=np.array([1.0, np.nan]),
                        method=METHOD_PERSISTENCE, target_day_origin=0.0)

    def test_rejects_order_shape_mismatch(self):
        with pytest.raises(ValueError):
            DayForecast(values=np.ones(4), method=METHOD_PARTITIONED,
                        target_day_origin=0.0, per_slot_order=np.array([1, 2]))


class TestPartitioned:
    def test_constant_columns_predict_their_means(self):
        m = matrix([[3.0, 7.0], [3.0, 7.0], [3.0, 7.0], [3.0, 7.0]])
        f = forecast_day_partitioned(m, ForecastConfig(period_len=2))
        np.testing.assert_allclose(f.values, [3.0, 7.0])
        assert f.method == METHOD_PARTITIONED
        assert f.per_slot_order is not None and len(f.per_slot_order) == 2

    def test_periodic_series_repeats_last_period(self):
        row = np.array([4.0, 5.5, 6.0, 5.0])
        m = matrix(np.tile(row, (5, 1)))
        f = forecast_day_partitioned(m, ForecastConfig(period_len=4))
        assert np.max(np.abs(f.values - row)) < 1e-8

    def test_needs_three_days(self):
        with pytest.raises(NotEnoughDays):
            forecast_day_partitioned(matrix([[1.0, 2.0], [1.0, 2.0]]),
                                     ForecastConfig(period_len=2))

    def test_target_day_origin(self):
        m = matrix(np.ones((4, 2)), origin=1000.0)
        f = forecast_day_partitioned(m, ForecastConfig(period_len=2))
        assert f.target_day_origin == 1000.0 + 4 * 2 * DT

    def test_clamp_negative(self):
        # the first column's fixed AR(2) extrapolates below zero
        col = [0.7, 0.2, 3.4, 7.3, 2.3]
        m = matrix(np.column_stack([col, np.full(5, 5.0)]))
        cfg = ForecastConfig(period_len=2,
                             order_criterion=OrderCriterion.fixed(2))
        clamped = forecast_day_partitioned(m, cfg)
        assert clamped.values[0] == 0.0
        raw = forecast_day_partitioned(
            m, ForecastConfig(period_len=2,
                              order_criterion=OrderCriterion.fixed(2),
                              clamp_negative=False))
        assert raw.values[0] < 0.0
        np.testing.assert_allclose(clamped.values[1], raw.values[1])

    def test_training_days_window(self):
        rng = np.random.RandomState(9)
        data = rng.uniform(1.0, 9.0, size=(10, 2))
        data[-3:] = [5.0, 2.0]  # constant tail the window should isolate
        f = forecast_day_partitioned(matrix(data),
                                     ForecastConfig(period_len=2, training_days=3))
        np.testing.assert_allclose(f.values, [5.0, 2.0])

    def test_column_permutation_swaps_slots(self, corpus120):
        m = partition(corpus120, 144)
        cfg = ForecastConfig()
        base = forecast_day_partitioned(m, cfg)
        swapped_data = m.data.copy()
        swapped_data[:, [10, 77]] = swapped_data[:, [77, 10]]
        swapped = forecast_day_partitioned(
            PartitionMatrix(data=swapped_data, dt=m.dt, origin=m.origin), cfg)
        expect = base.values.copy()
        expect[[10, 77]] = expect[[77, 10]]
        np.testing.assert_array_equal(swapped.values, expect)

    def test_non_negative_by_default(self, corpus120):
        f = forecast_day_partitioned(partition(corpus120, 144), ForecastConfig())
        assert np.all(f.values >= 0)


class TestSimpleAr:
    def test_constant_series(self):
        x = TimeSeries(values=np.full(300, 5.0), dt=DT)
        f = forecast_day_simple_ar(
            x, ForecastConfig(period_len=6, simple_ar_training_samples=200))
        np.testing.assert_allclose(f.values, 5.0)
        assert f.method == METHOD_SIMPLE

    def test_too_short(self):
        x = TimeSeries(values=np.ones(100), dt=DT)
        with pytest.raises(SeriesTooShort):
            forecast_day_simple_ar(
                x, ForecastConfig(period_len=6, simple_ar_training_samples=200))

    def test_levels_off_to_window_mean(self):
        rng = np.random.RandomState(5)
        values = rng.standard_normal(5000) + 10.0
        cfg = ForecastConfig(period_len=144, simple_ar_training_samples=4320)
        f = forecast_day_simple_ar(TimeSeries(values=values, dt=DT), cfg)
        window_mean = values[-4320:].mean()
        assert abs(f.values[-1] - window_mean) / window_mean < 0.01

    def test_early_slots_beat_late_slots(self, corpus120):
        history = TimeSeries(values=corpus120.values[:119 * 144], dt=DT,
                             origin=corpus120.origin)
        f = forecast_day_simple_ar(history, ForecastConfig())
        actual = day_values(corpus120, 119)
        early = np.sqrt(np.mean((f.values[:6] - actual[:6]) ** 2))
        late = np.sqrt(np.mean((f.values[-6:] - actual[-6:]) ** 2))
        assert early <= late

    def test_forecast_length_is_period(self):
        x = TimeSeries(values=np.sin(np.arange(400.0)) + 2.0, dt=DT)
        f = forecast_day_simple_ar(
            x, ForecastConfig(period_len=12, simple_ar_training_samples=300))
        assert len(f.values) == 12


class TestPersistence:
    def test_repeats_last_value(self):
        x = TimeSeries(values=np.array([1.0, 4.2, 7.3]), dt=DT)
        f = forecast_persistence(x, 3)
        np.testing.assert_array_equal(f.values, [7.3, 7.3, 7.3])
        assert f.method == METHOD_PERSISTENCE

    def test_single_sample(self):
        f = forecast_persistence(TimeSeries(values=np.array([2.5]), dt=DT), 4)
        np.testing.assert_array_equal(f.values, [2.5, 2.5, 2.5, 2.5])

    def test_empty_series(self):
        with pytest.raises(EmptySeries):
            forecast_persistence(TimeSeries(values=np.array([]), dt=DT), 3)

    def test_invalid_period(self):
        with pytest.raises(InvalidPeriod):
            forecast_persistence(TimeSeries(values=np.array([1.0]), dt=DT), 0)


class TestHourlyRmse:
    def forecast(self, values):
        return DayForecast(values=np.asarray(values, dtype=float),
                           method=METHOD_PERSISTENCE, target_day_origin=0.0)

    def test_exact_prediction(self):
        f = self.forecast(np.arange(12.0))
        np.testing.assert_array_equal(hourly_rmse(f, np.arange(12.0)), [0.0, 0.0])

    def test_unit_errors(self):
        f = self.forecast(np.ones(12))
        np.testing.assert_allclose(hourly_rmse(f, np.zeros(12)), [1.0, 1.0])

    def test_mixed_hour(self):
        f = self.forecast([1.0, 1.0, 1.0, 1.0, 1.0, 7.0])
        assert hourly_rmse(f, np.zeros(6))[0] == pytest.approx(3.0)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            hourly_rmse(self.forecast(np.ones(12)), np.ones(10))

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            hourly_rmse(self.forecast(np.ones(10)), np.ones(10))


class TestAveragedRmse:
    def test_single_day(self):
        np.testing.assert_array_equal(averaged_rmse([[1.0, 3.0]]), [1.0, 3.0])

    def test_two_days(self):
        np.testing.assert_allclose(
            averaged_rmse([[1.0, 3.0], [3.0, 1.0]]), [2.0, 2.0])

    def test_empty_list(self):
        with pytest.raises(EmptyList):
            averaged_rmse([])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            averaged_rmse([[1.0, 2.0], [1.0]])


class TestBacktest:
    def flat_tail_series(self):
        # day 2 holds the last value of day 1, so persistence is exact
        day0 = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
        day1 = [6.0, 5.0, 4.0, 3.0, 4.0, 2.0]
        day2 = [2.0] * 6
        return TimeSeries(values=np.array(day0 + day1 + day2), dt=DT)

    def test_persistence_perfect_day(self):
        x = self.flat_tail_series()
        report = backtest(x, [x.origin + 12 * DT],
                          ForecastConfig(period_len=6), [METHOD_PERSISTENCE])
        score = report.per_method[METHOD_PERSISTENCE]
        assert score.overall_rmse == 0.0
        np.testing.assert_array_equal(score.per_hour_rmse, [0.0])
        assert report.days_evaluated == (x.origin + 12 * DT,)

    def test_missing_history(self):
        x = self.flat_tail_series()
        with pytest.raises(MissingHistory):
            backtest(x, [x.origin], ForecastConfig(period_len=6),
                     [METHOD_PERSISTENCE])

    def test_misaligned_day(self):
        x = self.flat_tail_series()
        with pytest.raises(MissingHistory):
            backtest(x, [x.origin + 7 * DT], ForecastConfig(period_len=6),
                     [METHOD_PERSISTENCE])

    def test_unknown_method(self):
        x = self.flat_tail_series()
        with pytest.raises(UnknownMethod):
            backtest(x, [x.origin + 12 * DT], ForecastConfig(period_len=6),
                     ["kalman"])

    def test_empty_requests(self):
        x = self.flat_tail_series()
        with pytest.raises(EmptyList):
            backtest(x, [], ForecastConfig(period_len=6), [METHOD_PERSISTENCE])
        with pytest.raises(EmptyList):
            backtest(x, [x.origin + 12 * DT], ForecastConfig(period_len=6), [])

    def test_method_order_is_canonical(self, corpus120):
        target = corpus120.origin + 119 * DAY_SECONDS
        report = backtest(corpus120, [target], ForecastConfig(),
                          ["simple-ar", "persistence", "partitioned-ar"])
        assert list(report.per_method) == list(ALL_METHODS)

    def test_partitioned_beats_simple_on_diurnal_corpus(self, report120):
        part = report120.per_method[METHOD_PARTITIONED]
        simple = report120.per_method[METHOD_SIMPLE]
        assert part.overall_rmse < simple.overall_rmse
        below = np.sum(part.per_hour_rmse < simple.per_hour_rmse)
        assert below >= 20

    def test_overall_matches_hourly_aggregation(self, report120):
        # pooled rmse^2 == mean over equal-sized hourly cells of rmse^2
        for name, score in report120.per_method.items():
            cells = np.concatenate(
                [h ** 2 for h in report120.per_day_hourly[name]])
            assert score.overall_rmse ** 2 == pytest.approx(np.mean(cells))

    def test_no_leakage_from_target_day(self):
        # spike the target day; forecasts must come from clean history only
        x = make_diurnal_corpus(12, 7)
        cfg = ForecastConfig(training_days=10,
                             simple_ar_training_samples=10 * 144)
        target = x.origin + 11 * DAY_SECONDS
        spiked_values = x.values.copy()
        spiked_values[11 * 144:] += 25.0
        report = backtest(
            TimeSeries(values=spiked_values, dt=x.dt, origin=x.origin),
            [target], cfg)
        history = TimeSeries(values=x.values[:11 * 144], dt=x.dt,
                             origin=x.origin)
        spiked_day = spiked_values[11 * 144:]
        manual = {
            METHOD_PARTITIONED: forecast_day_partitioned(
                partition(history, 144), cfg),
            METHOD_SIMPLE: forecast_day_simple_ar(history, cfg),
            METHOD_PERSISTENCE: forecast_persistence(history, 144),
        }
        for name in ALL_METHODS:
            np.testing.assert_array_equal(
                report.per_day_hourly[name][0],
                hourly_rmse(manual[name], spiked_day))

    def test_forecasts_ignore_future_days(self):
        # truncating the series after the target day must not change scores
        x = make_diurnal_corpus(14, 3)
        cfg = ForecastConfig(training_days=10,
                             simple_ar_training_samples=10 * 144)
        target = x.origin + 11 * DAY_SECONDS
        full = backtest(x, [target], cfg)
        trimmed = backtest(
            TimeSeries(values=x.values[:12 * 144], dt=x.dt, origin=x.origin),
            [target], cfg)
        for name in ALL_METHODS:
            np.testing.assert_array_equal(
                full.per_method[name].per_hour_rmse,
                trimmed.per_method[name].per_hour_rmse)
            assert (full.per_method[name].overall_rmse
                    == trimmed.per_method[name].overall_rmse)
