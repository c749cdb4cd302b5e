"""Comparison protocol: training RMSE and consecutive-in-band forecast runs.

Every method trains on the day(s) immediately before a common forecast
window (one day by default), forecasts it, and is scored two ways: the
root mean square error over its own training window, and the number of
consecutive forecast hours whose absolute error stays inside an inner
and an outer tolerance band. Methods needing more history (seasonal
ARIMA asks for two training days) extend their window backwards; when
the dataset cannot supply it, the failure is captured in that method's
report row and the remaining methods are unaffected.
"""

from dataclasses import dataclass, field

import numpy as np

from . import arima, linmodels, nexting, smoothers, tree
from .series import Series


def rmse(pred: Series, target: Series) -> float:
    """Root mean square error between two equal-length series."""
    if len(pred) != len(target):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(target)}")
    d = pred.values - target.values
    return float(np.sqrt(np.mean(d * d)))


def consecutive_within(pred: Series, target: Series, half_width: float) -> int:
    """Length of the initial run of samples with |error| <= half_width.

    The run starts at the first sample; the bound is inclusive; samples
    after the first violation do not restart the count.
    """
    if len(pred) != len(target):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(target)}")
    if half_width <= 0:
        raise ValueError(f"half_width must be positive, got {half_width}")
    inside = np.abs(pred.values - target.values) <= half_width
    out = np.flatnonzero(~inside)
    return int(out[0]) if out.size else len(pred)


@dataclass(frozen=True)
class Band:
    """Inner and outer half-widths of the tolerance intervals."""

    inner: float
    outer: float
    unit: str = ""

    def __post_init__(self):
        if not 0 < self.inner < self.outer:
            raise ValueError(f"need outer > inner > 0, got {self.inner}, {self.outer}")


@dataclass(frozen=True)
class EvalReport:
    """One comparison row: a method's training error and band runs."""

    method: str
    train_rmse: float | None
    inner_run: int | None
    outer_run: int | None
    settings: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class _MethodOutput:
    train_pred: np.ndarray | None
    forecast: np.ndarray
    extra: dict = field(default_factory=dict)


def _run_polynomial(train, holdout, params):
    fit = linmodels.fit_polynomial(train, params["degree"])
    return _MethodOutput(fit.predict(train.times), fit.predict(holdout.times))


def _run_ridge(train, holdout, params):
    g1 = params["g1"]
    basis = (linmodels.Constant(), linmodels.Sinusoid(g1["period"], g1["phase"]))
    fit = linmodels.fit_basis(train, basis, reg_lambda=params["reg_lambda"])
    return _MethodOutput(fit.predict(train.times), fit.predict(holdout.times))


def _run_rbf(train, holdout, params):
    config = linmodels.RbfConfig(
        n_basis=params["n_basis"], sigma=params["sigma"],
        include_bias=params.get("include_bias", True),
        placement=params.get("placement", "even"),
    )
    fit = linmodels.fit_rbf(train, config)
    return _MethodOutput(fit.predict(train.times), fit.predict(holdout.times))


def _run_spline(train, holdout, params):
    fit = smoothers.fit_smoothing_spline(train, params["smooth_lambda"])
    return _MethodOutput(fit.predict(train.times), fit.predict(holdout.times))


def _run_kernel(train, holdout, params):
    bw = params.get("bandwidth") or smoothers.default_bandwidth(train)
    config = smoothers.KernelConfig(bandwidth=bw)
    tr = np.array([smoothers.kernel_predict(train, config, x) for x in train.times])
    fc = np.array([smoothers.kernel_predict(train, config, x) for x in holdout.times])
    return _MethodOutput(tr, fc, {"bandwidth": bw})


def _run_arima(train, holdout, params):
    seasonal = (params["P"], params["D"], params["Q"], params["s"]) \
        if params.get("s") else None
    order = arima.ArimaOrder(params["p"], params["d"], params["q"], seasonal)
    model = arima.css_estimate(train, order)
    fc = arima.forecast(model, train, len(holdout))
    # No training-interval predictions: the difference equation only runs forward.
    return _MethodOutput(None, fc.values, {"warnings": list(model.warnings)})


def _run_tree(train, holdout, params):
    config = tree.GrowConfig(min_node_size=params["min_node_size"],
                             max_leaves=params.get("max_leaves"))
    period = params["period"]
    if params.get("train_periods", 1) > 1:
        wrapper = tree.fit_periodic_ensemble(train, period, config)
    else:
        wrapper = tree.PeriodicWrapper(tree.grow(train, config), period, train.t0)
    # Training error over the day closest to the forecast window.
    last_day = Series(train.values[-period:], train.t0 + len(train) - period)
    return _MethodOutput(wrapper.predict(last_day.times), wrapper.predict(holdout.times))


def _run_nexting(train, holdout, params):
    full = train.with_values(np.concatenate([train.values, holdout.values]))
    coder = nexting.TileCoder(n_signals=1)
    run = nexting.run_online(
        [full], coder, gamma=params["gamma"], alpha=params["alpha"],
        trace_lambda=params["trace_lambda"], freeze_after=params.get("freeze_after"),
        norm_window=len(train),
    )
    preds = run.predictions[0]
    d = len(train)
    align = nexting.align_affine(
        Series(preds.values[:d], train.t0), train, max_shift=params.get("max_shift", 2))
    # Apply the training-window transform to the forecast window; the final
    # `shift` positions reuse the last available prediction.
    n = len(preds)
    idx = np.minimum(np.arange(d, d + len(holdout)) + align.shift, n - 1)
    fc = align.scale * preds.values[idx] + align.offset
    tr = align.scale * preds.values[np.minimum(np.arange(d) + align.shift, n - 1)] \
        + align.offset
    return _MethodOutput(tr, fc, {
        "align_scale": align.scale, "align_offset": align.offset,
        "align_shift": align.shift, "bounds": run.bounds[0],
    })


_RUNNERS = {
    "polynomial": _run_polynomial,
    "ridge": _run_ridge,
    "rbf": _run_rbf,
    "spline": _run_spline,
    "kernel": _run_kernel,
    "arima": _run_arima,
    "tree": _run_tree,
    "nexting": _run_nexting,
}


@dataclass(frozen=True)
class SingleRun:
    """Fit/forecast of one method, with its windows attached."""

    method: str
    train: Series
    holdout: Series
    train_pred: np.ndarray | None
    forecast: np.ndarray
    settings: dict


def run_single(dataset: Series, params: dict, *, train_samples: int = 24,
               forecast_samples: int = 24) -> SingleRun:
    """Run one method under the comparison protocol; failures propagate."""
    name = params.get("name", "?")
    runner = _RUNNERS.get(name)
    if runner is None:
        raise ValueError(f"unknown method {name!r}")
    boundary = len(dataset) - forecast_samples
    window = params.get("train_periods", 1) * train_samples
    if boundary - window < 0:
        raise ValueError(
            f"{name} needs {window} training samples before the forecast window "
            f"but only {boundary} are available"
        )
    holdout = Series(dataset.values[boundary:], dataset.t0 + boundary,
                     dataset.period_hint, dataset.unit)
    train = Series(dataset.values[boundary - window:boundary],
                   dataset.t0 + boundary - window, dataset.period_hint, dataset.unit)
    out = runner(train, holdout, params)
    settings = dict(params)
    settings.update(out.extra)
    return SingleRun(name, train, holdout, out.train_pred, out.forecast, settings)


def compare(dataset: Series, methods: list, band: Band, *,
            train_samples: int = 24, forecast_samples: int = 24) -> list[EvalReport]:
    """Run every method against one shared forecast window.

    The holdout is the final forecast_samples of the dataset; a method
    trains on the train_periods * train_samples samples right before it
    (train_periods defaults to 1). Per-method failures are captured in
    their report row rather than raised, and rows come back in input
    order. Reruns are bit-identical.
    """
    if len(dataset) < train_samples + forecast_samples:
        raise ValueError(
            f"dataset of length {len(dataset)} cannot supply {train_samples} training "
            f"and {forecast_samples} forecast samples"
        )
    reports = []
    for params in methods:
        name = params.get("name", "?")
        try:
            run = run_single(dataset, params, train_samples=train_samples,
                             forecast_samples=forecast_samples)
            train_rmse = None
            if run.train_pred is not None:
                m = len(run.train_pred)
                target = Series(run.train.values[-m:], run.train.t0 + len(run.train) - m)
                train_rmse = rmse(Series(run.train_pred, target.t0), target)
            fc = Series(run.forecast, run.holdout.t0)
            reports.append(EvalReport(
                method=name, train_rmse=train_rmse,
                inner_run=consecutive_within(fc, run.holdout, band.inner),
                outer_run=consecutive_within(fc, run.holdout, band.outer),
                settings=run.settings,
            ))
        except Exception as exc:  # isolation: one bad method must not kill the run
            reports.append(EvalReport(method=name, train_rmse=None, inner_run=None,
                                      outer_run=None, settings=dict(params),
                                      error=str(exc)))
    return reports
