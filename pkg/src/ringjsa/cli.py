"""Command-line interface.

Every subcommand is a single deterministic run: identical inputs produce
byte-identical outputs. Failures exit nonzero after printing exactly one
``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import gridio
from .analysis import (
    estimate_purity_error,
    flat_phase_purity,
    load_jsi,
    reconstruct_flat_phase,
    schmidt_decompose,
)
from .config import parse_config
from .engine import compute_jsa_fast, jsi_from_jsa
from .errors import RingJsaError
from .experiments import (
    OptimizerConfig,
    optimize_purity,
    q_series,
    relative_brightness,
    single_pulse_limit_study,
    single_pulse_reference_jsa,
    sweep_eta_dtau,
)


class _UsageError(RingJsaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line contract instead of usage dump
        raise _UsageError(message)


def _parse_range(text: str, flag: str) -> list[float]:
    """Inclusive range 'a:b:n' with n points."""
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"{flag}: expected 'a:b:n', got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise _UsageError(f"{flag}: expected 'a:b:n' with numeric a, b and integer n, got {text!r}") from None
    if n < 1:
        raise _UsageError(f"{flag}: point count must be >= 1, got {n}")
    return [float(v) for v in np.linspace(a, b, n)]


def _parse_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"{flag}: expected a comma-separated list of numbers, got {text!r}") from None
    if not values:
        raise _UsageError(f"{flag}: list is empty")
    return values


def _print_kv(name: str, value: float) -> None:
    print(f"{name}={value:.9f}")


def _cmd_simulate(args) -> int:
    cfg = parse_config(args.config)
    resonator = cfg.resonator()
    pump = cfg.pump()
    grid = cfg.grid(resonator)

    jsa = compute_jsa_fast(pump, resonator, grid, cfg.quadrature(pump, resonator))
    jsi = jsi_from_jsa(jsa)
    reference = single_pulse_reference_jsa(pump, resonator, grid)

    jsa_prefix = args.jsa_out if args.jsa_out is not None else cfg.jsa_prefix
    jsi_path = args.jsi_out if args.jsi_out is not None else cfg.jsi_path
    if jsa_prefix is not None:
        gridio.write_jsa_csv(jsa_prefix, grid, jsa.values)
    if jsi_path is not None:
        gridio.write_grid_csv(jsi_path, grid.signal_axis, grid.idler_axis, jsi.values)

    _print_kv("purity_true", schmidt_decompose(jsa).purity)
    _print_kv("purity_flat", flat_phase_purity(jsi))
    _print_kv("purity_error", estimate_purity_error(jsi))
    _print_kv("relative_brightness", relative_brightness(jsa, reference))
    return 0


def _cmd_sweep(args) -> int:
    cfg = parse_config(args.config)
    resonator = cfg.resonator()
    grid = cfg.grid(resonator)
    points = sweep_eta_dtau(
        cfg.pump(),
        resonator,
        grid,
        _parse_range(args.eta, "--eta"),
        [v * 1e-12 for v in _parse_range(args.dtau_ps, "--dtau-ps")],
    )
    gridio.write_sweep_table(args.out, points)
    return 0


def _cmd_qseries(args) -> int:
    cfg = parse_config(args.config)
    points = q_series(
        cfg.pump(),
        cfg.resonator(),
        _parse_list(args.q, "--q"),
        grid_n=cfg.grid_n,
        span_linewidths=cfg.span_linewidths,
    )
    gridio.write_sweep_table(args.out, points)
    return 0


def _cmd_limit(args) -> int:
    cfg = parse_config(args.config)
    rows = single_pulse_limit_study(
        _parse_list(args.ratios, "--ratios"),
        cfg.resonator(),
        grid_n=cfg.grid_n,
        span_linewidths=cfg.span_linewidths,
    )
    gridio.write_limit_table(args.out, rows)
    return 0


def _cmd_analyze(args) -> int:
    jsi = load_jsi(args.jsi)
    purity_flat = schmidt_decompose(reconstruct_flat_phase(jsi)).purity
    purity_error = estimate_purity_error(jsi)
    gridio.write_analysis_csv(args.out, purity_flat, purity_error)
    _print_kv("purity_flat", purity_flat)
    _print_kv("purity_error", purity_error)
    return 0


def _cmd_optimize(args) -> int:
    cfg = parse_config(args.config)
    resonator = cfg.resonator()
    best = optimize_purity(cfg.pump(), resonator, cfg.grid(resonator), OptimizerConfig())
    gridio.write_sweep_table(args.out, [best])
    if not best.converged:
        print("warning: evaluation budget exhausted; best point so far", file=sys.stderr)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="ringjsa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="compute one JSA/JSI and report purities")
    p.add_argument("--config", required=True)
    p.add_argument("--jsa-out", metavar="PREFIX")
    p.add_argument("--jsi-out", metavar="FILE")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="purity map over an (eta, delta_tau) grid")
    p.add_argument("--config", required=True)
    p.add_argument("--eta", required=True, metavar="A:B:N")
    p.add_argument("--dtau-ps", required=True, metavar="A:B:N")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("qseries", help="per-Q optimized purity series")
    p.add_argument("--config", required=True)
    p.add_argument("--q", required=True, metavar="Q1,Q2,...")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_qseries)

    p = sub.add_parser("limit", help="single-pulse purity vs pump-bandwidth ratio")
    p.add_argument("--config", required=True)
    p.add_argument("--ratios", required=True, metavar="R1,R2,...")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("analyze", help="purity of a measured JSI grid")
    p.add_argument("--jsi", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("optimize", help="search (eta, delta_tau) for maximum purity")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_optimize)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit:
        raise
    except Exception as exc:  # single diagnostic line per the CLI contract
        message = " ".join(str(exc).split()) or exc.__class__.__name__
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
