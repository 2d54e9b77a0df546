"""Command-line front end: JSON config in, CSV plot data out.

Commands: ``simulate`` (per-step trajectory of one Monte Carlo run),
``sweep-nodes`` (NMSE vs sensor count), ``sweep-power`` (NMSE vs total
colored-noise power), and ``mi-curve`` (mutual information vs noise std).
Exit codes: 0 success, 2 usage or config error, 3 output I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .harness import (
    ColoredNoise,
    SimConfig,
    WhiteNoise,
    run_monte_carlo,
    sweep_nodes,
    sweep_noise_power,
)
from .infotheory import PriorSpec, mi_curve
from .sensing import SignalGenerator, constant, sinusoid
from .threshold import ThresholdPolicy

__all__ = ["ConfigError", "RunManifest", "Table", "parse_config", "emit_csv", "main"]

CONFIG_SCHEMA_HELP = """\
config JSON schema (unknown keys are rejected):
  n_sensors      positive int, required
  noise          {"kind": "white", "sigma_v": >0}
                 or {"kind": "colored", "p_tot": >0, "rho": [0,1) (default 0.5)}
  signal         {"kind": "sinusoid", "amplitude", "frequency_hz", "dt" (default 0.001)}
                 or {"kind": "constant", "value"}
  policy         optional {"sigma_tau": >=0, "init": scalar or list}
                 defaults: sigma_tau = sigma_v (white) or sqrt(p_tot/n_sensors)
                 (colored); init = all zeros
  horizon        positive int, required
  burn_in        int in [0, horizon), default 10
  trials         positive int, default 100
  seed           non-negative int, default 0
"""


class ConfigError(Exception):
    """Configuration or argument problem; maps to exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_path: str | None
    output_path: str
    seed_override: int | None


@dataclass(frozen=True)
class Table:
    header: tuple[str, ...]
    rows: list[tuple]


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def emit_csv(table: Table, path) -> None:
    """Write header plus rows as UTF-8, LF-terminated CSV, floats at 17 significant digits."""
    if not table.rows:
        raise ValueError("table must be non-empty")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([_format_cell(cell) for cell in row])


def _checked(mapping: dict, allowed: set[str], context: str) -> None:
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' in {context}")


def _get_number(mapping: dict, key: str, context: str, *, required: bool = False, default=None):
    if key not in mapping:
        if required:
            raise ConfigError(f"missing key '{key}' in {context}")
        return default
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key '{key}' in {context} must be a number")
    return value


def _get_int(mapping: dict, key: str, context: str, *, required: bool = False, default=None):
    value = _get_number(mapping, key, context, required=required, default=default)
    if value is default and not required:
        return default
    if not isinstance(value, int):
        raise ConfigError(f"key '{key}' in {context} must be an integer")
    return value


def _parse_noise(raw, n_sensors: int):
    if not isinstance(raw, dict):
        raise ConfigError("key 'noise' must be an object")
    kind = raw.get("kind")
    if kind == "white":
        _checked(raw, {"kind", "sigma_v"}, "noise")
        sigma_v = _get_number(raw, "sigma_v", "noise", required=True)
        spec = WhiteNoise(sigma_v=float(sigma_v))
        return spec, float(sigma_v)
    if kind == "colored":
        _checked(raw, {"kind", "p_tot", "rho"}, "noise")
        p_tot = _get_number(raw, "p_tot", "noise", required=True)
        rho = _get_number(raw, "rho", "noise", default=0.5)
        spec = ColoredNoise(p_tot=float(p_tot), rho=float(rho))
        return spec, float(np.sqrt(p_tot / n_sensors))
    raise ConfigError(f"key 'kind' in noise must be 'white' or 'colored', got {kind!r}")


def _parse_signal(raw) -> SignalGenerator:
    if not isinstance(raw, dict):
        raise ConfigError("key 'signal' must be an object")
    kind = raw.get("kind")
    if kind == "constant":
        _checked(raw, {"kind", "value"}, "signal")
        value = _get_number(raw, "value", "signal", required=True)
        return constant(float(value))
    if kind == "sinusoid":
        _checked(raw, {"kind", "amplitude", "frequency_hz", "dt"}, "signal")
        amplitude = _get_number(raw, "amplitude", "signal", required=True)
        frequency = _get_number(raw, "frequency_hz", "signal", required=True)
        dt = _get_number(raw, "dt", "signal", default=1e-3)
        return sinusoid(float(amplitude), float(frequency), dt=float(dt))
    raise ConfigError(f"key 'kind' in signal must be 'constant' or 'sinusoid', got {kind!r}")


def _parse_policy(raw, default_sigma_tau: float) -> ThresholdPolicy:
    if raw is None:
        return ThresholdPolicy(sigma_tau=default_sigma_tau)
    if not isinstance(raw, dict):
        raise ConfigError("key 'policy' must be an object")
    _checked(raw, {"sigma_tau", "init"}, "policy")
    sigma_tau = _get_number(raw, "sigma_tau", "policy", default=default_sigma_tau)
    init = raw.get("init")
    if init is not None:
        if isinstance(init, bool):
            raise ConfigError("key 'init' in policy must be a number or list of numbers")
        if isinstance(init, (int, float)):
            init = float(init)
        elif isinstance(init, list) and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in init
        ):
            init = np.asarray(init, dtype=np.float64)
        else:
            raise ConfigError("key 'init' in policy must be a number or list of numbers")
    return ThresholdPolicy(sigma_tau=float(sigma_tau), init=init)


def parse_config(path) -> SimConfig:
    """Strictly parse a simulation config file; unknown keys are errors."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse config {p}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")

    _checked(
        raw,
        {"n_sensors", "noise", "signal", "policy", "horizon", "burn_in", "trials", "seed"},
        "config",
    )
    n_sensors = _get_int(raw, "n_sensors", "config", required=True)
    if "noise" not in raw:
        raise ConfigError("missing key 'noise' in config")
    if "signal" not in raw:
        raise ConfigError("missing key 'signal' in config")
    horizon = _get_int(raw, "horizon", "config", required=True)
    burn_in = _get_int(raw, "burn_in", "config", default=10)
    trials = _get_int(raw, "trials", "config", default=100)
    seed = _get_int(raw, "seed", "config", default=0)

    try:
        noise_spec, default_sigma_tau = _parse_noise(raw["noise"], n_sensors)
        signal = _parse_signal(raw["signal"])
        policy = _parse_policy(raw.get("policy"), default_sigma_tau)
        return SimConfig(
            n_sensors=n_sensors,
            noise=noise_spec,
            signal=signal,
            policy=policy,
            horizon=horizon,
            burn_in=burn_in,
            trials=trials,
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_sigma_grid(spec: str) -> np.ndarray:
    """Grid syntax 'start:stop:count', or 'log:start:stop:count' for log spacing."""
    parts = spec.split(":")
    log = False
    if parts and parts[0] == "log":
        log = True
        parts = parts[1:]
    if len(parts) != 3:
        raise ConfigError(f"--sigma-grid must be [log:]start:stop:count, got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse --sigma-grid {spec!r}: {exc}") from exc
    if count < 1:
        raise ConfigError("--sigma-grid count must be >= 1")
    if start <= 0.0:
        raise ConfigError("--sigma-grid start must be positive")
    if count > 1 and stop <= start:
        raise ConfigError("--sigma-grid stop must exceed start")
    grid = np.geomspace(start, stop, count) if log else np.linspace(start, stop, count)
    return grid


def _parse_list(spec: str, option: str, caster):
    try:
        values = [caster(part) for part in spec.split(",") if part != ""]
    except ValueError as exc:
        raise ConfigError(f"cannot parse {option} {spec!r}: {exc}") from exc
    if not values:
        raise ConfigError(f"{option} must be a non-empty comma-separated list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onebitrec",
        description="Simulate scalar signal recovery from adaptively thresholded 1-bit sensors.",
        epilog=CONFIG_SCHEMA_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sim_command(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the JSON config file")
        cmd.add_argument("--out", required=True, help="path of the CSV file to write")
        cmd.add_argument(
            "--seed", type=int, default=None, help="override the config's seed"
        )
        return cmd

    add_sim_command(
        "simulate", "run one Monte Carlo config; CSV columns k,theta,theta_hat,objective,fast_path"
    )
    nodes = add_sim_command("sweep-nodes", "NMSE versus sensor count; CSV columns n,nmse")
    nodes.add_argument(
        "--n-list", required=True, help="ascending comma-separated sensor counts, e.g. 10,25,50,100"
    )
    power = add_sim_command(
        "sweep-power", "NMSE versus total colored-noise power; CSV columns p_tot,nmse"
    )
    power.add_argument(
        "--p-list", required=True, help="ascending comma-separated total powers, e.g. 1,2,5,10"
    )

    mi = sub.add_parser(
        "mi-curve", help="mutual information versus noise std; CSV columns sigma_v,mi_bits"
    )
    mi.add_argument("--prior", required=True, choices=["uniform", "gaussian"])
    mi.add_argument("--low", type=float, default=-1.0, help="uniform prior lower bound (default -1)")
    mi.add_argument("--high", type=float, default=1.0, help="uniform prior upper bound (default 1)")
    mi.add_argument("--mean", type=float, default=0.0, help="gaussian prior mean (default 0)")
    mi.add_argument("--std", type=float, default=1.0, help="gaussian prior std (default 1)")
    mi.add_argument("--tau", type=float, required=True, help="quantization threshold")
    mi.add_argument(
        "--sigma-grid",
        required=True,
        help="noise-std grid as start:stop:count (linear) or log:start:stop:count",
    )
    mi.add_argument("--out", required=True, help="path of the CSV file to write")
    return parser


def _load_config(manifest: RunManifest) -> SimConfig:
    config = parse_config(manifest.config_path)
    if manifest.seed_override is not None:
        if manifest.seed_override < 0:
            raise ConfigError("--seed must be >= 0")
        config = replace(config, seed=manifest.seed_override)
    return config


def _dispatch(args: argparse.Namespace) -> int:
    manifest = RunManifest(
        command=args.command,
        config_path=getattr(args, "config", None),
        output_path=args.out,
        seed_override=getattr(args, "seed", None),
    )

    if manifest.command == "simulate":
        config = _load_config(manifest)
        report = run_monte_carlo(config)
        table = Table(("k", "theta", "theta_hat", "objective", "fast_path"), report.per_step)
        emit_csv(table, manifest.output_path)
        print(f"nmse={_format_cell(report.nmse)} trials={config.trials} seed={config.seed}")
        return 0

    if manifest.command == "sweep-nodes":
        config = _load_config(manifest)
        n_list = _parse_list(args.n_list, "--n-list", int)
        try:
            results = sweep_nodes(config, n_list)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        table = Table(("n", "nmse"), [(n, rep.nmse) for n, rep in results])
        emit_csv(table, manifest.output_path)
        for n, rep in results:
            print(f"n={n} nmse={_format_cell(rep.nmse)} trials={config.trials} seed={config.seed}")
        return 0

    if manifest.command == "sweep-power":
        config = _load_config(manifest)
        p_list = _parse_list(args.p_list, "--p-list", float)
        try:
            results = sweep_noise_power(config, p_list)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        table = Table(("p_tot", "nmse"), [(p, rep.nmse) for p, rep in results])
        emit_csv(table, manifest.output_path)
        for p, rep in results:
            print(
                f"p_tot={_format_cell(p)} nmse={_format_cell(rep.nmse)} "
                f"trials={config.trials} seed={config.seed}"
            )
        return 0

    if manifest.command == "mi-curve":
        try:
            if args.prior == "uniform":
                prior = PriorSpec.uniform(args.low, args.high)
            else:
                prior = PriorSpec.gaussian(args.mean, args.std)
            grid = _parse_sigma_grid(args.sigma_grid)
            curve = mi_curve(prior, args.tau, grid)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        table = Table(
            ("sigma_v", "mi_bits"),
            list(zip(curve.sigma_values.tolist(), curve.mi_bits.tolist())),
        )
        emit_csv(table, manifest.output_path)
        return 0

    raise ConfigError(f"unknown command {manifest.command!r}")  # pragma: no cover


def main(argv=None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:  # console-script shim
    raise SystemExit(main())
