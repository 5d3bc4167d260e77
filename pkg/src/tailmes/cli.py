"""Command-line front end.

Subcommands:
  estimate      point MES estimate at a given exceedance probability
  scan          estimate stability over a grid of sample fractions
  return-level  MES at the p implied by a return period in years
  simulate      replicated study on a built-in model, with true values
  oracle        true values and limit constants for a built-in model

All numeric output is deterministic for fixed inputs: tab-separated
values on stdout, and with --out a JSON document with sorted keys.
Exit codes: 0 success, 2 bad arguments or domain violations, 3 data
problems, 4 numerical failures.
"""

import argparse
import json
import sys

from .application import SCAN_TARGETS, ReturnLevelQuery, k_scan, return_level_mes
from .data import DEFAULT_MISSING, DatasetConfig, LoadResult, load_paired_csv
from .errors import ArgumentError, DataError, DomainError, NumericError
from .estimators import EstimatorConfig, theta_emp, theta_p_estimate
from .experiments import SimulationConfig, default_probabilities, run_simulation
from .models import VARIANTS, model_by_name
from .oracle import asymptotic_sigma2, limit_constant, marginal_quantile, true_theta_p


def _column(text: str) -> str | int:
    try:
        return int(text)
    except ValueError:
        return text


def _add_data_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", help="delimited text file with paired observations")
    parser.add_argument("--x-col", required=True, type=_column,
                        help="column of the conditioned variable (name or 0-based index)")
    parser.add_argument("--y-col", required=True, type=_column,
                        help="column of the conditioning variable (name or 0-based index)")
    parser.add_argument("--missing", action="append", default=None, metavar="MARKER",
                        help="treat MARKER as missing (repeatable; default: '', 'NA', '-')")
    parser.add_argument("--delimiter", default=",", help="field delimiter (default ',')")


def _add_fraction_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=200, help="top fraction for the tail MES (default 200)")
    parser.add_argument("--k1", type=int, default=200, help="top fraction for the X tail index (default 200)")
    parser.add_argument("--k2", type=int, default=200, help="top fraction for the dependence index (default 200)")


def _load(args) -> LoadResult:
    markers = tuple(args.missing) if args.missing is not None else DEFAULT_MISSING
    config = DatasetConfig(path=args.path, column_x=args.x_col, column_y=args.y_col,
                           missing_markers=markers, delimiter=args.delimiter)
    return load_paired_csv(config)


def _emit(lines: list[str], document: dict, out: str | None) -> None:
    sys.stdout.write("\n".join(lines) + "\n")
    if out is not None:
        with open(out, "w") as handle:
            handle.write(json.dumps(document, indent=2, sort_keys=True) + "\n")


def _estimate_payload(loaded: LoadResult, config: EstimatorConfig) -> tuple[list[str], dict]:
    estimate = theta_p_estimate(loaded.sample, config)
    document = {"n": loaded.sample.n, "dropped": loaded.dropped, "p": config.p,
                "k": config.k, "k1": config.k1, "k2": config.k2,
                "theta_p": estimate.theta_p, "theta_kn": estimate.theta_kn,
                "gamma1_hat": estimate.gamma1_hat, "eta_hat": estimate.eta_hat,
                "d_n": estimate.d_n, "exponent": estimate.exponent,
                "warnings": list(estimate.warnings)}
    lines = [f"{key}\t{value!r}" for key, value in document.items() if key != "warnings"]
    for warning in estimate.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return lines, document


def _run_estimate(args) -> None:
    loaded = _load(args)
    config = EstimatorConfig(k=args.k, k1=args.k1, k2=args.k2, p=args.p)
    config.validate_for(loaded.sample.n)
    lines, document = _estimate_payload(loaded, config)
    if args.empirical:
        empirical = theta_emp(loaded.sample, args.p)
        document["theta_emp"] = empirical
        lines.append(f"theta_emp\t{empirical!r}")
    _emit(lines, document, args.out)


def _run_scan(args) -> None:
    loaded = _load(args)
    if args.k_step < 1:
        raise ArgumentError(f"--k-step must be >= 1, got {args.k_step}")
    grid = list(range(args.k_min, args.k_max + 1, args.k_step))
    config = EstimatorConfig(k=args.k, k1=args.k1, k2=args.k2, p=args.p)
    rows = k_scan(loaded.sample, args.target, grid, config)
    lines = [f"k\t{args.target}"] + [f"{k}\t{value!r}" for k, value in rows]
    document = {"n": loaded.sample.n, "dropped": loaded.dropped, "target": args.target,
                "p": args.p, "k": args.k, "k1": args.k1, "k2": args.k2,
                "rows": [[k, value] for k, value in rows]}
    _emit(lines, document, args.out)


def _run_return_level(args) -> None:
    loaded = _load(args)
    query = ReturnLevelQuery(years=args.M, periods_per_year=args.periods_per_year,
                             k=args.k, k1=args.k1, k2=args.k2)
    EstimatorConfig(k=args.k, k1=args.k1, k2=args.k2, p=query.p).validate_for(loaded.sample.n)
    estimate = return_level_mes(loaded.sample, query)
    document = {"n": loaded.sample.n, "dropped": loaded.dropped,
                "years": args.M, "periods_per_year": args.periods_per_year, "p": query.p,
                "k": args.k, "k1": args.k1, "k2": args.k2,
                "theta_p": estimate.theta_p, "theta_kn": estimate.theta_kn,
                "gamma1_hat": estimate.gamma1_hat, "eta_hat": estimate.eta_hat,
                "d_n": estimate.d_n, "exponent": estimate.exponent,
                "warnings": list(estimate.warnings)}
    lines = [f"{key}\t{value!r}" for key, value in document.items() if key != "warnings"]
    for warning in estimate.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    _emit(lines, document, args.out)


def _run_simulate(args) -> None:
    spec = model_by_name(args.model)
    probabilities = tuple(args.p) if args.p else default_probabilities(args.n)
    config = SimulationConfig(spec=spec, n=args.n, m=args.replicates,
                              probabilities=probabilities,
                              k=args.k, k1=args.k1, k2=args.k2, master_seed=args.seed)
    result = run_simulation(config)
    sys.stdout.write(result.to_table())
    if args.out is not None:
        with open(args.out, "w") as handle:
            handle.write(json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")


def _run_oracle(args) -> None:
    spec = model_by_name(args.model)
    probabilities = tuple(args.p) if args.p else default_probabilities(5000)
    rows = []
    for p in probabilities:
        rows.append((p, true_theta_p(spec, p), marginal_quantile(spec, "y", 1.0 - p)))
    document = {"model": spec.variant, "gamma1": spec.gamma1, "eta": spec.eta,
                "tail_limit_scale": spec.tail_limit_scale,
                "limit_constant": limit_constant(spec),
                "asymptotic_sigma2": asymptotic_sigma2(spec),
                "cells": [{"p": p, "theta": theta, "y_quantile": q} for p, theta, q in rows]}
    lines = [f"model\t{spec.variant}",
             f"gamma1\t{spec.gamma1!r}",
             f"eta\t{spec.eta!r}",
             f"tail_limit_scale\t{spec.tail_limit_scale!r}",
             f"limit_constant\t{limit_constant(spec)!r}",
             f"asymptotic_sigma2\t{asymptotic_sigma2(spec)!r}",
             "p\ttheta\ty_quantile"]
    lines += [f"{p!r}\t{theta!r}\t{q!r}" for p, theta, q in rows]
    _emit(lines, document, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tailmes",
                                     description="Extreme-value estimation of E[X | Y beyond its 1-p quantile]")
    sub = parser.add_subparsers(dest="command", required=True)

    estimate = sub.add_parser("estimate", help="point estimate from a data file")
    _add_data_arguments(estimate)
    _add_fraction_arguments(estimate)
    estimate.add_argument("--p", type=float, required=True, help="exceedance probability")
    estimate.add_argument("--empirical", action="store_true",
                          help="also report the within-sample estimate at this p")
    estimate.add_argument("--out", help="write a JSON document here as well")
    estimate.set_defaults(run=_run_estimate)

    scan = sub.add_parser("scan", help="sensitivity of an estimate to its sample fraction")
    _add_data_arguments(scan)
    _add_fraction_arguments(scan)
    scan.add_argument("--p", type=float, default=0.001, help="exceedance probability (default 0.001)")
    scan.add_argument("--target", choices=SCAN_TARGETS, required=True, help="which estimate to scan")
    scan.add_argument("--k-min", type=int, required=True)
    scan.add_argument("--k-max", type=int, required=True)
    scan.add_argument("--k-step", type=int, default=1)
    scan.add_argument("--out", help="write a JSON document here as well")
    scan.set_defaults(run=_run_scan)

    rlevel = sub.add_parser("return-level", help="estimate at a return period given in years")
    _add_data_arguments(rlevel)
    _add_fraction_arguments(rlevel)
    rlevel.add_argument("--M", type=float, required=True, help="return period in years")
    rlevel.add_argument("--periods-per-year", type=int, default=365,
                        help="observation periods per year (default 365)")
    rlevel.add_argument("--out", help="write a JSON document here as well")
    rlevel.set_defaults(run=_run_return_level)

    simulate = sub.add_parser("simulate", help="replicated study on a built-in model")
    simulate.add_argument("--model", choices=VARIANTS, required=True)
    simulate.add_argument("--n", type=int, default=5000, help="sample size per replicate (default 5000)")
    simulate.add_argument("--replicates", type=int, default=100, help="number of replicates (default 100)")
    simulate.add_argument("--p", type=float, action="append", default=None,
                          help="target probability (repeatable; default 10/n, 1/n, 1/(10n))")
    _add_fraction_arguments(simulate)
    simulate.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    simulate.add_argument("--out", help="write a JSON document here as well")
    simulate.set_defaults(run=_run_simulate)

    oracle = sub.add_parser("oracle", help="true values for a built-in model")
    oracle.add_argument("--model", choices=VARIANTS, required=True)
    oracle.add_argument("--p", type=float, action="append", default=None,
                        help="target probability (repeatable; default 10/n, 1/n, 1/(10n) at n=5000)")
    oracle.add_argument("--out", help="write a JSON document here as well")
    oracle.set_defaults(run=_run_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.run(args)
    except (ArgumentError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(f"diagnostics: {exc.diagnostics}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
