import numpy as np
import pytest

from daycast.evalharness import Band, compare, consecutive_within, rmse, run_single
from daycast.config import builtin_config_path, load_config
from daycast.series import Series

WIND_BAND = Band(1.0, 3.0, "m/s")


def wind_methods():
    cfg = load_config(builtin_config_path("table2_wind"))
    return cfg["methods"]


class TestRmse:
    def test_identical_series(self, wind24):
        assert rmse(wind24, wind24) == 0.0

    def test_constant_offset(self):
        a = Series([1.0, 2.0, 3.0])
        b = Series([2.0, 3.0, 4.0])
        assert rmse(a, b) == pytest.approx(1.0)

    def test_symmetry_and_shift_invariance(self, wind24, temp24):
        assert rmse(wind24, temp24) == rmse(temp24, wind24)
        shifted_a = Series(wind24.values + 5.0)
        shifted_b = Series(temp24.values + 5.0)
        assert rmse(shifted_a, shifted_b) == pytest.approx(rmse(wind24, temp24))

    def test_length_mismatch(self, wind24, wind):
        with pytest.raises(ValueError):
            rmse(wind24, wind)


class TestConsecutiveWithin:
    def test_run_stops_at_first_violation(self):
        target = Series([0.0, 0.0, 0.0, 0.0])
        pred = Series([0.5, 0.5, 2.0, 0.5])
        assert consecutive_within(pred, target, 1.0) == 2

    def test_immediate_violation(self):
        assert consecutive_within(Series([5.0, 0.0]), Series([0.0, 0.0]), 1.0) == 0

    def test_boundary_is_inclusive(self):
        assert consecutive_within(Series([1.0, 2.0]), Series([0.0, 1.0]), 1.0) == 2

    def test_all_inside(self):
        assert consecutive_within(Series([0.1] * 7), Series([0.0] * 7), 1.0) == 7

    def test_monotone_in_half_width(self, wind24, temp24):
        pred = Series(wind24.values)
        target = Series(wind24.values + np.linspace(0, 3, 24))
        runs = [consecutive_within(pred, target, hw) for hw in (0.5, 1.0, 2.0, 3.0, 5.0)]
        assert all(a <= b for a, b in zip(runs, runs[1:]))


class TestBand:
    def test_validation(self):
        with pytest.raises(ValueError):
            Band(3.0, 1.0)
        with pytest.raises(ValueError):
            Band(0.0, 1.0)


class TestCompare:
    def test_wind_table_reproduces_published_rows(self, wind):
        reports = compare(wind, wind_methods(), WIND_BAND)
        by_name = {r.method: r for r in reports}

        poly = by_name["polynomial"]
        assert poly.train_rmse == pytest.approx(0.9337, abs=1e-3)
        assert (poly.inner_run, poly.outer_run) == (2, 7)

        tree_row = by_name["tree"]
        assert tree_row.train_rmse == pytest.approx(1.2096, abs=1e-2)
        assert (tree_row.inner_run, tree_row.outer_run) == (2, 7)

        spline = by_name["spline"]
        assert spline.train_rmse == pytest.approx(0.9286, abs=5e-2)

        # Ridge, RBF and Nexting rows must at least produce healthy numbers.
        for name in ("ridge", "rbf", "nexting"):
            row = by_name[name]
            assert row.ok and row.train_rmse is not None
            assert 0 <= row.inner_run <= row.outer_run <= 24

    def test_seasonal_arima_needs_two_days_and_fails_cleanly_on_48(self, wind):
        reports = compare(wind, wind_methods(), WIND_BAND)
        arima_row = next(r for r in reports if r.method == "arima")
        assert not arima_row.ok
        assert arima_row.train_rmse is None
        assert "48 training samples" in arima_row.error

    def test_seasonal_arima_runs_on_72_samples(self, wind):
        # Three synthetic days: two to train on, one to forecast.
        rng = np.random.default_rng(3)
        day = wind.values[:24]
        data = np.concatenate([day + rng.normal(0, 0.2, 24) for _ in range(3)])
        dataset = Series(data, t0=1, period_hint=24, unit="m/s")
        params = {"name": "arima", "p": 0, "d": 0, "q": 1, "P": 1, "D": 1, "Q": 0,
                  "s": 24, "train_periods": 2}
        reports = compare(dataset, [params], WIND_BAND)
        row = reports[0]
        assert row.ok, row.error
        assert row.train_rmse is None          # no training-interval predictions
        assert 0 <= row.inner_run <= row.outer_run <= 24
        assert row.outer_run >= 10             # seasonal structure carries over

    def test_single_method_list(self, wind):
        reports = compare(wind, [{"name": "polynomial", "degree": 6}], WIND_BAND)
        assert len(reports) == 1 and reports[0].ok

    def test_failing_method_is_isolated(self, wind):
        methods = [
            {"name": "polynomial", "degree": 40},   # underdetermined on 24 samples
            {"name": "polynomial", "degree": 6},
        ]
        reports = compare(wind, methods, WIND_BAND)
        assert not reports[0].ok and reports[0].error
        assert reports[1].ok
        assert reports[1].train_rmse == pytest.approx(0.9337, abs=1e-3)

    def test_unknown_method_is_isolated(self, wind):
        reports = compare(wind, [{"name": "astrology"}], WIND_BAND)
        assert not reports[0].ok and "unknown method" in reports[0].error

    def test_kernel_method_stays_callable_even_if_unsuited(self, wind):
        # The smoother is excluded from the published comparison but the
        # harness can still run it on request.
        reports = compare(wind, [{"name": "kernel", "bandwidth": 2.0}], WIND_BAND)
        row = reports[0]
        assert row.ok and row.train_rmse is not None
        assert 0 <= row.inner_run <= row.outer_run <= 24
        assert row.settings["bandwidth"] == 2.0

    def test_output_order_and_determinism(self, wind):
        methods = wind_methods()
        a = compare(wind, methods, WIND_BAND)
        b = compare(wind, methods, WIND_BAND)
        assert [r.method for r in a] == [m["name"] for m in methods]
        for ra, rb in zip(a, b):
            assert ra == rb

    def test_dataset_too_short(self, wind24):
        with pytest.raises(ValueError):
            compare(wind24, [{"name": "polynomial", "degree": 2}], WIND_BAND)

    def test_ridge_fit_is_symmetric_about_its_peak(self, temp24):
        # The cosine-basis day fit must be mirror-symmetric around its argmax
        # hour, whatever phase convention produced it.
        run = run_single(
            Series(np.concatenate([temp24.values, temp24.values]), t0=1),
            {"name": "ridge", "reg_lambda": 0.1, "g1": {"period": 24, "phase": 0.0}},
        )
        curve = run.train_pred
        peak = int(np.argmax(curve))
        for k in range(1, min(peak, 23 - peak) + 1):
            assert curve[peak - k] == pytest.approx(curve[peak + k], abs=1e-9)


class TestRunSingle:
    def test_polynomial_windows(self, wind):
        run = run_single(wind, {"name": "polynomial", "degree": 6})
        assert len(run.train) == 24 and len(run.holdout) == 24
        assert run.holdout.t0 == 25
        assert run.forecast.shape == (24,)
        assert run.forecast[0] == pytest.approx(2.0308248, abs=1e-3)

    def test_nexting_settings_echo_alignment(self, wind):
        run = run_single(wind, {"name": "nexting", "gamma": 0.0, "alpha": 0.3,
                                "trace_lambda": 0.9, "freeze_after": 24})
        assert "align_scale" in run.settings and "align_shift" in run.settings

    def test_unknown_method_raises(self, wind):
        with pytest.raises(ValueError):
            run_single(wind, {"name": "nope"})
