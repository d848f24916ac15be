"""Command-line front end for distributions, certification sweeps, and scaling runs.

Exit codes: 0 success, 1 internal error, 2 invalid configuration,
3 certification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import estimation as est
from . import experiments as exp
from .effective_state import PhaseFraction, RegisterConfig, outcome_amplitudes
from .estimation import ToleranceSpec
from .reporting import result_to_json, rows_to_csv, write_text

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_CERTIFICATION = 3


def parse_theta_grid(spec: str) -> np.ndarray:
    """Grid forms: a bare value, ``linspace:start:stop:count``, ``list:v1,v2,...``."""
    try:
        if spec.startswith("linspace:"):
            _, start, stop, count = spec.split(":")
            values = np.linspace(float(start), float(stop), int(count))
        elif spec.startswith("list:"):
            values = np.array([float(v) for v in spec[len("list:"):].split(",")])
        else:
            values = np.array([float(spec)])
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad theta grid spec {spec!r}: {exc}") from None
    if values.size == 0:
        raise ValueError(f"theta grid spec {spec!r} produced no values")
    return values


def parse_int_list(spec: str, flag: str) -> list[int]:
    try:
        if spec.startswith("list:"):
            return [int(v) for v in spec[len("list:"):].split(",")]
        return [int(spec)]
    except (ValueError, TypeError):
        raise ValueError(f"bad {flag} spec {spec!r}; use an integer or list:a,b,c") from None


def parse_n_range(spec: str) -> list[int]:
    try:
        lo, hi = spec.split(":")
        lo, hi = int(lo), int(hi)
    except (ValueError, TypeError):
        raise ValueError(f"bad --n-range {spec!r}; expected A:B") from None
    if hi < lo:
        raise ValueError(f"empty --n-range {spec!r}")
    return list(range(lo, hi + 1))


def _tolerance_from_args(args) -> ToleranceSpec:
    if args.gamma is not None:
        return ToleranceSpec.from_gamma(args.gamma)
    if args.confidence is not None:
        return ToleranceSpec.from_confidence(args.confidence)
    return ToleranceSpec.from_gamma(6)


def _resolve_n_values(args) -> list[int]:
    if getattr(args, "n_range", None):
        return parse_n_range(args.n_range)
    if getattr(args, "n", None):
        return [args.n]
    raise ValueError("one of --n or --n-range is required")


def _emit(args, rows: list[dict], config_echo: dict, columns: list[str] | None = None) -> None:
    if args.format == "json":
        text = result_to_json(__version__, config_echo, rows)
    else:
        text = rows_to_csv(rows, columns)
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _figure_path(args) -> Path:
    if not args.out:
        raise ValueError("--plot requires --out so the figure lands next to the data file")
    return Path(args.out).with_suffix(".png")


def cmd_distribution(args) -> int:
    config = RegisterConfig(args.n)
    theta = PhaseFraction(args.theta)
    amps = outcome_amplitudes(config, theta)
    dist = est.distribution(config, theta)
    rows = [
        {
            "j": int(j),
            "re_amplitude": float(amps[j].real),
            "im_amplitude": float(amps[j].imag),
            "probability": float(dist.probabilities[j]),
        }
        for j in range(config.dimension)
    ]
    echo = {"subcommand": "distribution", "n": args.n, "theta": theta.theta, "format": args.format}
    _emit(args, rows, echo)
    if args.plot:
        from .plots import plot_distribution

        plot_distribution(dist, _figure_path(args))
    return EXIT_OK


def cmd_estimate(args) -> int:
    config = RegisterConfig(args.n)
    theta = PhaseFraction(args.theta)
    tolerance = _tolerance_from_args(args)
    dist = est.distribution(config, theta)
    seed = int(exp.derived_rng(args.seed, exp.STREAM_ESTIMATE, config.n).integers(2**63))
    outcome = int(est.sample(dist, seed, 1)[0])
    report = est.estimate(outcome, config, args.energy, tolerance)
    wrapped_err = float(
        est.wrapped_index_distance(outcome, config.dimension * theta.theta, config.dimension)
    )
    results = {
        "report": report.to_dict(),
        "theta_true": theta.theta,
        "within_tolerance": wrapped_err <= tolerance.gamma,
    }
    echo = {
        "subcommand": "estimate",
        "n": args.n,
        "theta": theta.theta,
        "energy": args.energy,
        "gamma": tolerance.gamma,
        "confidence": tolerance.confidence,
        "seed": args.seed,
        "format": args.format,
    }
    if args.format == "csv":
        row = dict(report.to_dict())
        row["interval_lo"], row["interval_hi"] = row.pop("interval")
        row["theta_true"] = theta.theta
        row["within_tolerance"] = results["within_tolerance"]
        _emit(args, [row], echo)
    else:
        text = result_to_json(__version__, echo, results)
        write_text(args.out, text) if args.out else sys.stdout.write(text)
    return EXIT_OK


def cmd_certify_bounds(args) -> int:
    n_values = _resolve_n_values(args)
    thetas = parse_theta_grid(args.theta)
    result = exp.certify_bounds(
        n_values, thetas, wrap=not args.linear_tail, perturb_exact=args.avoid_exact
    )
    echo = {
        "subcommand": "certify-bounds",
        "n_values": n_values,
        "theta": args.theta,
        "theta_points": int(thetas.size),
        "linear_tail": bool(args.linear_tail),
        "avoid_exact": bool(args.avoid_exact),
        "format": args.format,
    }
    _emit(args, result.rows, echo)
    if args.plot:
        from .plots import plot_certification

        plot_certification(result.rows, _figure_path(args))
    summary = (
        f"max amplitude ratio {result.max_amplitude_ratio:.6f}, "
        f"max tail ratio {result.max_tail_ratio:.6f}, violations {result.violations}"
    )
    print(f"certify-bounds: {summary}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_CERTIFICATION


def cmd_scaling(args) -> int:
    n_values = _resolve_n_values(args)
    theta_values = parse_theta_grid(args.theta)
    if theta_values.size != 1:
        raise ValueError("scaling expects a single theta value")
    theta = PhaseFraction(float(theta_values[0]))
    tolerance = _tolerance_from_args(args)
    records = exp.scaling_sweep(
        n_values,
        theta,
        tolerance,
        trials=args.trials,
        master_seed=args.seed,
        include_baseline=args.with_baseline,
    )
    echo = {
        "subcommand": "scaling",
        "n_values": n_values,
        "theta": theta.theta,
        "gamma": tolerance.gamma,
        "confidence": tolerance.confidence,
        "trials": args.trials,
        "seed": args.seed,
        "with_baseline": bool(args.with_baseline),
        "format": args.format,
    }
    _emit(args, [r.to_row() for r in records], echo)
    if args.plot:
        from .plots import plot_scaling

        plot_scaling(records, _figure_path(args))
    return EXIT_OK


def cmd_baseline(args) -> int:
    theta_values = parse_theta_grid(args.theta)
    if theta_values.size != 1:
        raise ValueError("baseline expects a single theta value")
    theta = PhaseFraction(float(theta_values[0]))
    reps = parse_int_list(args.reps, "--reps")
    records = exp.baseline_sweep(theta, reps, trials=args.trials, master_seed=args.seed)
    echo = {
        "subcommand": "baseline",
        "theta": theta.theta,
        "reps": reps,
        "trials": args.trials,
        "seed": args.seed,
        "format": args.format,
    }
    _emit(args, [r.to_row() for r in records], echo)
    if args.plot:
        from .plots import plot_baseline

        plot_baseline(records, _figure_path(args))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    result = exp.oracle_check(trials=args.trials, master_seed=args.seed)
    echo = {
        "subcommand": "oracle-check",
        "trials": args.trials,
        "seed": args.seed,
        "format": args.format,
    }
    _emit(args, result.rows, echo)
    status = "pass" if result.passed else "FAIL"
    print(
        f"oracle-check: {status}, max deviation {result.max_deviation:.3e} "
        f"(tolerance {result.tolerance:.0e})",
        file=sys.stderr,
    )
    return EXIT_OK if result.passed else EXIT_CERTIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqclock",
        description="Entangled-clock phase-estimation simulator and bound certifier.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_output(p, default_format="csv", plot=True):
        p.add_argument("--out", help="output file path (stdout when omitted)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        if plot:
            p.add_argument(
                "--plot",
                action="store_true",
                help="also render a figure next to --out (same stem, .png)",
            )

    p = sub.add_parser("distribution", help="readout amplitudes and probabilities for one theta")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    add_output(p)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("estimate", help="single seeded readout with full report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--gamma", type=int)
    p.add_argument("--confidence", type=float)
    p.add_argument("--seed", type=int, required=True)
    add_output(p, default_format="json", plot=False)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("certify-bounds", help="sweep amplitude and tail ceilings")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", dest="n_range")
    p.add_argument("--theta", required=True, help="grid spec")
    p.add_argument(
        "--linear-tail",
        action="store_true",
        help="use plain linear index distance instead of circular distance",
    )
    p.add_argument(
        "--avoid-exact",
        action="store_true",
        help="perturb thetas that land exactly on an outcome fraction by +1e-12",
    )
    add_output(p)
    p.set_defaults(func=cmd_certify_bounds)

    p = sub.add_parser("scaling", help="coverage and error scaling across register sizes")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", dest="n_range")
    p.add_argument("--theta", required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--confidence", type=float)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--with-baseline",
        action="store_true",
        help="append a matched-clock-budget repeated-pair run to each row",
    )
    add_output(p)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("baseline", help="repeated-pair estimator error sweep")
    p.add_argument("--theta", required=True)
    p.add_argument("--reps", required=True, help="repetition counts, e.g. list:100,1000")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    add_output(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("oracle-check", help="full physical simulation vs effective register")
    p.add_argument("--trials", type=int, default=100, help="random scenarios per register size")
    p.add_argument("--seed", type=int, required=True)
    add_output(p, plot=False)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
