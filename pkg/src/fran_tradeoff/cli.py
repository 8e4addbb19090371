"""Command-line interface.

Subcommands:

* ``run`` — execute a figure sweep (fig2..fig7, or a generic ``custom``
  sweep of all metrics) and write one CSV per figure;
* ``validate`` — load a configuration file and report every violation;
* ``crosscheck`` — compare the analytical model with a Monte Carlo run
  for one association policy.

Exit codes: 0 on success, 2 on validation failure, 3 on cross-check
failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import (ConfigError, Placement, Scenario, SimulationConfig,
                     load_config, default_scenario)
from .experiments.crosscheck import cross_validate
from .experiments.sweeps import FIGURES, SweepError, figure_spec, run_sweep
from .mc.engine import AssociationPolicy, PolicyVariant

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CROSSCHECK = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fran-tradeoff",
        description="Analytical and Monte Carlo evaluation of a "
                    "cache-enabled two-tier fog radio access network.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser(
        "run", help="run a figure sweep and write CSV results")
    run.add_argument("--config", help="INI configuration file "
                                      "(built-in defaults when omitted)")
    run.add_argument("--figure", required=True,
                     choices=FIGURES + ("custom", "all"),
                     help="which figure's sweep to run")
    run.add_argument("--mode", choices=("analytic", "mc", "both"),
                     default="analytic", help="evaluation mode")
    run.add_argument("--realizations", type=int, default=None,
                     help="Monte Carlo realizations per grid point")
    run.add_argument("--seed", type=int, default=None,
                     help="base random seed")
    run.add_argument("--workers", type=int, default=None,
                     help="worker processes for the simulation")
    run.add_argument("--delta", type=float, default=1.0,
                     help="SINR threshold for success probabilities")
    run.add_argument("--grid", default=None,
                     help="comma-separated swept values overriding the "
                          "figure's default grid")
    run.add_argument("--out", default=".", help="output directory")

    val = sub.add_parser("validate", help="validate a configuration file")
    val.add_argument("--config", required=True, help="INI configuration file")

    cc = sub.add_parser(
        "crosscheck",
        help="compare analytic metrics against a Monte Carlo run")
    cc.add_argument("--config", help="INI configuration file "
                                     "(built-in defaults when omitted)")
    cc.add_argument("--policy", required=True,
                    choices=("maxrsrp", "mindelay"),
                    help="association policy to cross-validate")
    cc.add_argument("--realizations", type=int, default=None,
                    help="Monte Carlo realizations")
    cc.add_argument("--seed", type=int, default=None, help="random seed")
    cc.add_argument("--workers", type=int, default=None,
                    help="worker processes for the simulation")
    cc.add_argument("--placement", choices=("most_popular", "thinning"),
                    default=None, help="override the cache placement model")
    cc.add_argument("--delta", type=float, action="append", default=None,
                    help="SINR threshold (repeatable; max-RSRP only)")
    cc.add_argument("--rel-tol", type=float, default=0.05,
                    help="relative tolerance component of the pass band")
    return parser


def _load(config_path: str | None) -> tuple[Scenario, SimulationConfig]:
    if config_path is None:
        return default_scenario(), SimulationConfig()
    return load_config(config_path)


def _sim_params(args, sim: SimulationConfig) -> tuple[int, int, int]:
    n = args.realizations if args.realizations is not None else \
        sim.realizations
    seed = args.seed if args.seed is not None else sim.seed
    workers = args.workers if args.workers is not None else sim.workers
    return n, seed, workers


def _cmd_run(args) -> int:
    try:
        scenario, sim = _load(args.config)
    except ConfigError as err:
        print(f"configuration invalid:\n{err}", file=sys.stderr)
        return EXIT_VALIDATION
    n, seed, workers = _sim_params(args, sim)
    figures = FIGURES if args.figure == "all" else (args.figure,)
    grid = None
    if args.grid is not None:
        try:
            grid = tuple(float(v) for v in args.grid.split(","))
        except ValueError:
            print(f"sweep specification invalid: malformed --grid "
                  f"{args.grid!r}", file=sys.stderr)
            return EXIT_VALIDATION
    try:
        for figure in figures:
            spec = figure_spec(figure, mode=args.mode, n_realizations=n,
                               seed=seed, workers=workers, delta=args.delta)
            if grid is not None:
                spec = dataclasses.replace(spec, grid=grid)
                spec.validate()
            path, summary = run_sweep(scenario, spec, args.out)
            print(f"{summary} -> {path}")
    except SweepError as err:
        print(f"sweep specification invalid: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        scenario, sim = _load(args.config)
    except ConfigError as err:
        print(f"configuration invalid:\n{err}", file=sys.stderr)
        return EXIT_VALIDATION
    net = scenario.network
    print(f"configuration valid: lambda_r={net.lambda_r:g} "
          f"lambda_f={net.lambda_f:g} alpha={net.alpha:g} "
          f"k={scenario.k:.6g}; simulation: {sim.realizations} realizations, "
          f"seed {sim.seed}, {sim.workers} workers")
    return EXIT_OK


def _cmd_crosscheck(args) -> int:
    try:
        scenario, sim = _load(args.config)
    except ConfigError as err:
        print(f"configuration invalid:\n{err}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.placement is not None:
        placement = (Placement.MOST_POPULAR
                     if args.placement == "most_popular"
                     else Placement.INDEPENDENT_THINNING)
        scenario = scenario.replace(
            cache=dataclasses.replace(scenario.cache, placement=placement))
    n, seed, workers = _sim_params(args, sim)
    variant = PolicyVariant.MAX_RSRP if args.policy == "maxrsrp" \
        else PolicyVariant.MIN_DELAY
    kwargs = dict(rel_tol=args.rel_tol, workers=workers)
    if args.delta:
        kwargs["deltas"] = tuple(args.delta)
    report = cross_validate(scenario, AssociationPolicy(variant), n, seed,
                            **kwargs)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_CROSSCHECK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "validate":
        return _cmd_validate(args)
    return _cmd_crosscheck(args)


if __name__ == "__main__":
    sys.exit(main())
