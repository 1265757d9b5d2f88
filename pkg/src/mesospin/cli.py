"""Command line interface.

Subcommands: curve (one negativity curve), sweep-gamma and sweep-temp (one
curve per swept value plus a summary), verify (self-check suite), clt
(central-limit convergence table). Options may come from a flat JSON config
file, from flags, or both; flags win. Exit codes: 0 success, 1 verification
failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import format_report, run_checks
from .errors import ConfigError, ContractViolation
from .experiments import (
    ExperimentConfig,
    SweepResult,
    curve_csv_text,
    format_float,
    run_curve,
    summary_csv_text,
    sweep_gamma,
    sweep_temperature,
    write_text,
)
from .oracle import weyl_expectation_finite, weyl_expectation_limit
from .sites import ModelParams, observables, thermal_state

_CONFIG_FLAGS = (
    ("epsilon", float),
    ("temperature", float),
    ("gamma", float),
    ("squeeze_r", float),
    ("t_max", float),
    ("t_steps", int),
)


def _parse_number_list(text: str, field: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"{field}: could not parse '{text}' as numbers") from exc
    if not values:
        raise ConfigError(f"{field}: must not be empty")
    return values


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                loaded = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"config: cannot read '{path}': {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: '{path}' is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config: top level must be a JSON object")
        data.update(loaded)
    for name, _ in _CONFIG_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    for name in ("gamma_list", "temperature_list"):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = _parse_number_list(value, name)
    return ExperimentConfig.from_dict(data)


def _add_config_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat JSON file with configuration fields")
    for name, kind in _CONFIG_FLAGS:
        sub.add_argument(
            f"--{name.replace('_', '-')}",
            type=kind,
            default=None,
            help=f"override {name}",
        )


def _plot_script_text(csv_names: list[str], labels: list[str]) -> str:
    lines = [
        "# gnuplot script generated by mesospin",
        "set datafile separator ','",
        "set xlabel 't'",
        "set ylabel 'E(t)'",
        "set key top right",
    ]
    plots = [
        f"'{name}' using 1:3 with lines title '{label}'"
        for name, label in zip(csv_names, labels)
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def _cmd_curve(args: argparse.Namespace) -> int:
    config = _load_config(args)
    curve = run_curve(config)
    write_text(args.output, curve_csv_text(curve))
    print(
        f"wrote {args.output} (max E = {format_float(curve.max_log_negativity)}, "
        f"lifetime = {format_float(curve.lifetime())})"
    )
    if args.plot_script:
        label = f"gamma = {format_float(config.gamma)}"
        write_text(
            args.plot_script,
            _plot_script_text([os.path.basename(args.output)], [label]),
        )
        print(f"wrote {args.plot_script}")
    return 0


def _write_sweep(sweep: SweepResult, out_dir: str, plot_script: str | None) -> int:
    os.makedirs(out_dir, exist_ok=True)
    names = []
    for value, curve in zip(sweep.values, sweep.curves):
        name = f"curve_{sweep.parameter}_{format_float(value)}.csv"
        write_text(os.path.join(out_dir, name), curve_csv_text(curve))
        names.append(name)
    summary_name = f"{sweep.parameter}_summary.csv"
    write_text(os.path.join(out_dir, summary_name), summary_csv_text(sweep))
    for (value, max_e, life), name in zip(sweep.summary, names):
        print(
            f"{sweep.parameter} = {format_float(value)}: "
            f"max E = {format_float(max_e)}, lifetime = {format_float(life)} "
            f"-> {name}"
        )
    print(f"wrote {summary_name} in {out_dir}")
    if plot_script:
        labels = [
            f"{sweep.parameter} = {format_float(v)}" for v in sweep.values
        ]
        write_text(
            os.path.join(out_dir, plot_script),
            _plot_script_text(names, labels),
        )
        print(f"wrote {plot_script} in {out_dir}")
    return 0


def _cmd_sweep_gamma(args: argparse.Namespace) -> int:
    config = _load_config(args)
    sweep = sweep_gamma(config, workers=args.workers)
    return _write_sweep(sweep, args.output_dir, args.plot_script)


def _cmd_sweep_temp(args: argparse.Namespace) -> int:
    config = _load_config(args)
    sweep = sweep_temperature(config, workers=args.workers)
    return _write_sweep(sweep, args.output_dir, args.plot_script)


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_checks(args.level)
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_clt(args: argparse.Namespace) -> int:
    sites = tuple(int(n) for n in _parse_number_list(args.sites, "sites"))
    try:
        params = ModelParams(args.epsilon, args.temperature, 0.0)
    except ContractViolation as exc:
        raise ConfigError(str(exc)) from exc
    state = thermal_state(params)
    print(f"{'observable':<12}{'sites':>8}  {'finite':>16}  {'limit':>16}  {'|error|':>12}")
    all_monotone = True
    for index, x in enumerate(observables().ops):
        limit = weyl_expectation_limit(x, state)
        errors = []
        for n in sites:
            finite = weyl_expectation_finite(x, n, state)
            err = abs(finite - limit)
            errors.append(err)
            print(
                f"{'x' + str(index + 1):<12}{n:>8}  {finite.real:>16.12f}  "
                f"{limit:>16.12f}  {err:>12.6e}"
            )
        all_monotone = all_monotone and all(
            a > b for a, b in zip(errors, errors[1:])
        )
    print(f"monotone convergence for every observable: {'yes' if all_monotone else 'NO'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mesospin",
        description=(
            "Dissipative fluctuation dynamics of two spin chains in a common "
            "bath: negativity curves, parameter sweeps, and self-verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="compute one negativity curve")
    _add_config_options(curve)
    curve.add_argument("--output", default="curve.csv", help="CSV output path")
    curve.add_argument("--plot-script", default=None, help="write a gnuplot script")
    curve.set_defaults(func=_cmd_curve)

    sg = sub.add_parser("sweep-gamma", help="one curve per coupling in gamma_list")
    _add_config_options(sg)
    sg.add_argument("--gamma-list", default=None, help="comma-separated couplings")
    sg.add_argument("--output-dir", default=".", help="directory for CSV output")
    sg.add_argument("--plot-script", default=None, help="gnuplot script filename")
    sg.add_argument("--workers", type=int, default=1, help="concurrent sweep workers")
    sg.set_defaults(func=_cmd_sweep_gamma)

    st = sub.add_parser(
        "sweep-temp", help="one curve per temperature in temperature_list"
    )
    _add_config_options(st)
    st.add_argument(
        "--temperature-list", default=None, help="comma-separated temperatures"
    )
    st.add_argument("--output-dir", default=".", help="directory for CSV output")
    st.add_argument("--plot-script", default=None, help="gnuplot script filename")
    st.add_argument("--workers", type=int, default=1, help="concurrent sweep workers")
    st.set_defaults(func=_cmd_sweep_temp)

    verify = sub.add_parser("verify", help="run the self-check suite")
    verify.add_argument(
        "--level", choices=("fast", "full"), default="fast", help="check depth"
    )
    verify.set_defaults(func=_cmd_verify)

    clt = sub.add_parser("clt", help="central-limit convergence table")
    clt.add_argument("--epsilon", type=float, default=1.0)
    clt.add_argument("--temperature", type=float, default=1.0)
    clt.add_argument("--sites", default="100,1000,10000", help="site counts")
    clt.set_defaults(func=_cmd_clt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
