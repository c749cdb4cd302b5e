"""Command-line entry point.

Subcommands:
    synth        emit a sampled sine as two-column t,value data
    fit          fit one configured method, print training-window predictions
    forecast     fit one configured method, print holdout forecasts
    compare      run every configured method and print the comparison table
    nexting-run  stream the online learner over the whole dataset
    acf          print sample autocorrelation and partial autocorrelation

Exit status: 0 on success, 1 on usage or configuration errors, 2 on
data or estimation errors.
"""

import argparse
import sys

from . import __version__
from .arima import acf_pacf
from .config import band_from_config, load_config, load_dataset
from .errors import ConfigError, DaycastError
from .evalharness import compare, run_single
from .fixtures import fixture
from .nexting import TileCoder, run_online
from .reportio import export_report, export_series, format_report_table, read_series_csv, write_series
from .series import Series, make_sine

USAGE_ERROR, DATA_ERROR = 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="daycast", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"daycast {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="emit a sampled sine signal")
    synth.add_argument("--amplitude", type=float, default=1.0)
    synth.add_argument("--period", type=float, required=True)
    synth.add_argument("--count", type=int, required=True)
    synth.add_argument("--phase", type=float, default=0.0)
    _io_flags(synth)

    for name, help_text in (("fit", "print training-window predictions of one method"),
                            ("forecast", "print holdout forecasts of one method")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="run config JSON (one method)")
        p.add_argument("--data", help="TMY3 CSV overriding the config's data path")
        _io_flags(p)

    cmp_p = sub.add_parser("compare", help="full comparison over all configured methods")
    cmp_p.add_argument("--config", required=True, help="run config JSON")
    cmp_p.add_argument("--data", help="TMY3 CSV overriding the config's data path")
    _io_flags(cmp_p)

    nx = sub.add_parser("nexting-run", help="stream the online learner")
    nx.add_argument("--config", required=True, help="run config JSON (one nexting method)")
    nx.add_argument("--data", help="TMY3 CSV overriding the config's data path")
    _io_flags(nx)

    acf_p = sub.add_parser("acf", help="autocorrelation identification aid")
    acf_p.add_argument("--fixture", help="embedded signal name (wind48, temp48, dni48)")
    acf_p.add_argument("--data", help="two-column t,value CSV")
    acf_p.add_argument("--max-lag", type=int, default=24)
    acf_p.add_argument("--out")
    return parser


def _io_flags(p):
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _emit_series(series: Series, args) -> None:
    if args.out:
        export_series(series, args.out, args.format)
    else:
        write_series(series, sys.stdout, args.format)


def _load(args) -> tuple[dict, Series]:
    cfg = load_config(args.config)
    dataset = load_dataset(cfg, data_path=getattr(args, "data", None))
    return cfg, dataset


def _one_method(cfg: dict, command: str) -> dict:
    if len(cfg["methods"]) != 1:
        raise ConfigError(f"{command} needs a config with exactly one method, "
                          f"found {len(cfg['methods'])}")
    return cfg["methods"][0]


def _cmd_synth(args) -> int:
    _emit_series(make_sine(args.amplitude, args.period, args.count, args.phase), args)
    return 0


def _cmd_fit(args) -> int:
    cfg, dataset = _load(args)
    result = run_single(dataset, _one_method(cfg, "fit"),
                        train_samples=cfg["train_samples"],
                        forecast_samples=cfg["forecast_samples"])
    if result.train_pred is None:
        raise DaycastError(
            f"{result.method} provides no training-interval predictions; use forecast")
    _emit_series(Series(result.train_pred, result.train.t0), args)
    return 0


def _cmd_forecast(args) -> int:
    cfg, dataset = _load(args)
    result = run_single(dataset, _one_method(cfg, "forecast"),
                        train_samples=cfg["train_samples"],
                        forecast_samples=cfg["forecast_samples"])
    _emit_series(Series(result.forecast, result.holdout.t0), args)
    return 0


def _cmd_compare(args) -> int:
    cfg, dataset = _load(args)
    band = band_from_config(cfg)
    reports = compare(dataset, cfg["methods"], band,
                      train_samples=cfg["train_samples"],
                      forecast_samples=cfg["forecast_samples"])
    print(format_report_table(reports, band))
    if args.out:
        export_report(reports, args.format, args.out)
    return 0


def _cmd_nexting_run(args) -> int:
    cfg, dataset = _load(args)
    params = _one_method(cfg, "nexting-run")
    if params["name"] != "nexting":
        raise ConfigError("nexting-run needs a nexting method block")
    run = run_online(
        [dataset], TileCoder(n_signals=1),
        gamma=params["gamma"], alpha=params["alpha"],
        trace_lambda=params["trace_lambda"], freeze_after=params.get("freeze_after"),
        norm_window=cfg["train_samples"],
    )
    lo, hi = run.bounds[0]
    # Undo the [0, 1] normalization so the stream is in signal units.
    scaled = run.predictions[0].with_values(lo + run.predictions[0].values * (hi - lo))
    _emit_series(scaled, args)
    return 0


def _cmd_acf(args) -> int:
    if (args.fixture is None) == (args.data is None):
        raise _UsageError("acf needs exactly one of --fixture or --data")
    series = fixture(args.fixture) if args.fixture else read_series_csv(args.data)
    acf, pacf = acf_pacf(series, args.max_lag)
    lines = [f"{lag},{a:.10g},{p:.10g}" for lag, (a, p) in enumerate(zip(acf, pacf))]
    text = "lag,acf,pacf\n" + "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "fit": _cmd_fit,
    "forecast": _cmd_forecast,
    "compare": _cmd_compare,
    "nexting-run": _cmd_nexting_run,
    "acf": _cmd_acf,
}


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"daycast: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (0, None) else USAGE_ERROR

    try:
        return _COMMANDS[args.command](args)
    except (_UsageError, ConfigError) as exc:
        print(f"daycast: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (DaycastError, ValueError, OSError) as exc:
        print(f"daycast: {exc}", file=sys.stderr)
        return DATA_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
