"""Parameter sweeps behind the reproduction figures.

A sweep walks a grid of one swept variable, evaluates one or more
(policy, parameter-override) cases at each grid point in analytic and/or
Monte Carlo mode, and writes one CSV per figure.  Failures at individual
grid points (unstable queues, violated deadlines) become rows with a
filled ``error`` column instead of aborting the sweep.

Figure defaults (density ratio = lambda_r / lambda_f, swept by scaling
the F-AP density at fixed RRH density):

* fig2 — max-RSRP latency vs density ratio for three request rates xi;
* fig3 — max-RSRP latency vs cache fraction (swept cached count, with
  the induced hit probability reported alongside);
* fig4 / fig5 — success probability / ergodic rate vs density ratio for
  both primary policies;
* fig6 — latency vs density ratio for both primary policies at three
  fronthaul latencies;
* fig7 — latency vs density ratio for the primary policies and the
  cache-hit cluster benchmark at a small and a large cluster radius.

fig2/fig3 aggregate transport-link latency from the carried traffic, so
their cases clear the scenario's fixed link-latency overrides; the
policy-comparison figures keep the overridden (provisioned) links.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from ..analytic.caching import hit_probability
from ..analytic.cluster import (avg_delivery_latency_cluster,
                                ergodic_rate_cluster, success_prob_cluster)
from ..analytic.maxrsrp import (avg_delivery_latency_max_rsrp,
                                ergodic_rate_max_rsrp,
                                success_prob_max_rsrp)
from ..analytic.mindelay import (ConvergenceError, DeadlineError,
                                 ThresholdAssumptionError,
                                 avg_delivery_latency_min_delay,
                                 ergodic_rate_min_delay,
                                 solve_min_delay_operating_point)
from ..analytic.queueing import StabilityError
from ..config import ConfigError, Scenario, validate_scenario
from ..mc.engine import AssociationPolicy, EmptySceneError, PolicyVariant
from ..mc.engine import estimate_metrics as _estimate_metrics
from ..numerics import QuadratureError
from .csvio import ResultRow, write_rows

__all__ = [
    "SweepCase",
    "SweepSpec",
    "SweepError",
    "figure_spec",
    "run_sweep",
    "FIGURES",
    "DEFAULT_RATIO_GRID",
]

DEFAULT_RATIO_GRID = (5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0)
# Queue-stable subset for the latency-vs-ratio figure at the highest
# request rate in its xi set.
FIG2_RATIO_GRID = (5.0, 8.0, 10.0, 12.0)
FIG7_RATIO_GRID = (5.0, 8.0, 10.0, 15.0)
XI_SET = (5e-3, 7e-3, 9e-3)
CACHED_COUNT_GRID = (15.0, 20.0, 25.0, 30.0, 35.0)
D_FRONT_SET = (0.3, 0.6, 0.9)
CLUSTER_RADII = (30.0, 125.0)

# Errors that mark a single grid point as failed without ending the sweep.
_POINT_ERRORS = (StabilityError, DeadlineError, ThresholdAssumptionError,
                 ConvergenceError, ConfigError, QuadratureError,
                 EmptySceneError, ValueError, ArithmeticError)


class SweepError(ValueError):
    """The sweep specification itself is invalid."""


@dataclass(frozen=True)
class SweepCase:
    """One curve of a figure: a policy plus scenario overrides.

    ``overrides`` are (field path, value) pairs such as
    ``("traffic.xi", 0.005)``; ``label`` is the policy string written to
    the CSV, e.g. ``maxrsrp(xi=0.005)``.
    """

    label: str
    policy: AssociationPolicy
    overrides: tuple[tuple[str, float | None], ...] = ()


@dataclass(frozen=True)
class SweepSpec:
    """A figure's grid, cases, metrics, and execution parameters."""

    figure: str
    swept_name: str
    grid: tuple[float, ...]
    cases: tuple[SweepCase, ...]
    metrics: tuple[str, ...]
    mode: str = "analytic"
    n_realizations: int = 20000
    seed: int = 1
    delta: float = 1.0
    workers: int = 1

    def validate(self) -> None:
        problems = []
        if not self.grid:
            problems.append("grid must not be empty")
        elif any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            problems.append("grid must be strictly increasing")
        if not self.cases:
            problems.append("cases must not be empty")
        if self.mode not in ("analytic", "mc", "both"):
            problems.append("mode must be analytic, mc, or both")
        if self.swept_name not in ("density_ratio", "cached_count"):
            problems.append(
                f"unknown swept variable {self.swept_name!r} "
                "(expected density_ratio or cached_count)")
        if self.n_realizations < 1:
            problems.append("n_realizations must be at least 1")
        known = {"success_probability", "ergodic_rate", "delivery_latency"}
        unknown = [m for m in self.metrics if m not in known]
        if unknown:
            problems.append(f"unknown metrics: {', '.join(unknown)}")
        if problems:
            raise SweepError("; ".join(problems))

    @property
    def modes(self) -> tuple[str, ...]:
        return ("analytic", "mc") if self.mode == "both" else (self.mode,)


def _apply_override(scenario: Scenario, path: str, value) -> Scenario:
    section, _, key = path.partition(".")
    if section not in ("network", "cache", "traffic") or not key:
        raise SweepError(f"override path {path!r} must be "
                         "network.<field>, cache.<field>, or traffic.<field>")
    sub = getattr(scenario, section)
    if not hasattr(sub, key):
        raise SweepError(f"unknown override field {path!r}")
    return scenario.replace(**{section: dataclasses.replace(sub,
                                                            **{key: value})})


def _scenario_at(base: Scenario, spec: SweepSpec, swept_value: float,
                 case: SweepCase) -> Scenario:
    scenario = base
    if spec.swept_name == "density_ratio":
        lambda_f = base.network.lambda_r / swept_value
        scenario = _apply_override(scenario, "network.lambda_f", lambda_f)
    else:  # cached_count
        cached = int(round(swept_value))
        scenario = _apply_override(scenario, "cache.cached_count", cached)
    for path, value in case.overrides:
        scenario = _apply_override(scenario, path, value)
    violations = validate_scenario(scenario)
    if violations:
        raise ConfigError(violations)
    return scenario


def _analytic_metric(scenario: Scenario, case: SweepCase, metric: str,
                     delta: float) -> float:
    policy = case.policy
    if policy.variant is PolicyVariant.MAX_RSRP:
        if metric == "success_probability":
            return success_prob_max_rsrp(scenario, delta)
        if metric == "ergodic_rate":
            return ergodic_rate_max_rsrp(scenario)
        return avg_delivery_latency_max_rsrp(scenario).total
    if policy.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
        radius = policy.cluster_radius
        if metric == "success_probability":
            return success_prob_cluster(scenario, radius, delta)
        if metric == "ergodic_rate":
            return ergodic_rate_cluster(scenario, radius)
        return avg_delivery_latency_cluster(scenario, radius).total
    if metric == "success_probability":
        return solve_min_delay_operating_point(scenario).terms.total
    if metric == "ergodic_rate":
        return ergodic_rate_min_delay(scenario)
    return avg_delivery_latency_min_delay(scenario).total


def _case_rows(base: Scenario, spec: SweepSpec, swept_value: float,
               case: SweepCase) -> list[ResultRow]:
    def row(mode: str, metric: str, **kwargs) -> ResultRow:
        return ResultRow(swept_name=spec.swept_name, swept_value=swept_value,
                         policy=case.label, mode=mode, metric=metric,
                         **kwargs)

    try:
        scenario = _scenario_at(base, spec, swept_value, case)
    except (ConfigError, SweepError) as err:
        return [row(mode, metric, error=str(err))
                for mode in spec.modes for metric in spec.metrics]

    rows = []
    for mode in spec.modes:
        if mode == "analytic":
            for metric in spec.metrics:
                try:
                    value = _analytic_metric(scenario, case, metric,
                                             spec.delta)
                    rows.append(row(mode, metric, value=value))
                except _POINT_ERRORS as err:
                    rows.append(row(mode, metric, error=str(err)))
            continue
        needs_latency = "delivery_latency" in spec.metrics
        latency_error = None
        try:
            report = _estimate_metrics(
                scenario, case.policy, spec.n_realizations, spec.seed,
                delta=spec.delta, workers=spec.workers,
                compute_latency=needs_latency)
        except _POINT_ERRORS as err:
            if not needs_latency:
                rows.extend(row(mode, metric, error=str(err))
                            for metric in spec.metrics)
                continue
            # Retry without the latency composition so stable metrics
            # survive a queue-instability failure.
            latency_error = err
            try:
                report = _estimate_metrics(
                    scenario, case.policy, spec.n_realizations, spec.seed,
                    delta=spec.delta, workers=spec.workers,
                    compute_latency=False)
            except _POINT_ERRORS as err2:
                rows.extend(row(mode, metric, error=str(err2))
                            for metric in spec.metrics)
                continue
        for metric in spec.metrics:
            if metric == "delivery_latency":
                if latency_error is not None:
                    rows.append(row(mode, metric, error=str(latency_error)))
                    continue
                estimate = report.delivery_latency
            elif metric == "success_probability":
                estimate = report.success_probability
            else:
                estimate = report.ergodic_rate
            rows.append(row(mode, metric, value=estimate.value,
                            std_error=estimate.std_error, n=estimate.n))
    return rows


def run_sweep(base: Scenario, spec: SweepSpec,
              out_dir: str | Path) -> tuple[Path, str]:
    """Run ``spec`` against ``base`` and write ``<out_dir>/<figure>.csv``.

    Returns the CSV path and a one-line summary.  Rows appear in a fixed
    order (grid point, case, mode, metric), so identical inputs produce
    byte-identical files.
    """
    spec.validate()
    rows: list[ResultRow] = []
    for swept_value in spec.grid:
        if spec.figure == "fig3":
            try:
                scenario = _scenario_at(base, spec, swept_value,
                                        spec.cases[0])
                rows.append(ResultRow(
                    swept_name=spec.swept_name, swept_value=swept_value,
                    policy="common", mode="analytic",
                    metric="cache_hit_probability",
                    value=hit_probability(scenario)))
            except (ConfigError, SweepError) as err:
                rows.append(ResultRow(
                    swept_name=spec.swept_name, swept_value=swept_value,
                    policy="common", mode="analytic",
                    metric="cache_hit_probability", error=str(err)))
        for case in spec.cases:
            rows.extend(_case_rows(base, spec, swept_value, case))
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = write_rows(out_dir / f"{spec.figure}.csv", rows)
    failures = sum(1 for r in rows if r.error)
    summary = (f"{spec.figure}: {len(rows)} rows "
               f"({len(spec.grid)} grid points x {len(spec.cases)} cases, "
               f"mode={spec.mode}), {failures} failed")
    return path, summary


def _strip_links() -> tuple[tuple[str, None], ...]:
    return (("traffic.d_front_override", None),
            ("traffic.d_back_override", None))


def _max_rsrp_xi_cases() -> tuple[SweepCase, ...]:
    return tuple(
        SweepCase(label=f"maxrsrp(xi={xi:g})",
                  policy=AssociationPolicy(PolicyVariant.MAX_RSRP),
                  overrides=(("traffic.xi", xi),) + _strip_links())
        for xi in XI_SET)


def figure_spec(figure: str, mode: str = "analytic",
                n_realizations: int = 20000, seed: int = 1,
                workers: int = 1, delta: float = 1.0) -> SweepSpec:
    """Default sweep specification for ``fig2``..``fig7`` or ``custom``."""
    common = dict(mode=mode, n_realizations=n_realizations, seed=seed,
                  workers=workers, delta=delta)
    primary = (
        SweepCase("maxrsrp", AssociationPolicy(PolicyVariant.MAX_RSRP)),
        SweepCase("mindelay", AssociationPolicy(PolicyVariant.MIN_DELAY)),
    )
    if figure == "fig2":
        return SweepSpec(figure, "density_ratio", FIG2_RATIO_GRID,
                         _max_rsrp_xi_cases(), ("delivery_latency",),
                         **common)
    if figure == "fig3":
        return SweepSpec(figure, "cached_count", CACHED_COUNT_GRID,
                         _max_rsrp_xi_cases(), ("delivery_latency",),
                         **common)
    if figure == "fig4":
        return SweepSpec(figure, "density_ratio", DEFAULT_RATIO_GRID,
                         primary, ("success_probability",), **common)
    if figure == "fig5":
        return SweepSpec(figure, "density_ratio", DEFAULT_RATIO_GRID,
                         primary, ("ergodic_rate",), **common)
    if figure == "fig6":
        cases = tuple(
            SweepCase(label=f"{name}(dfront={d_front:g})",
                      policy=policy,
                      overrides=(("traffic.d_front_override", d_front),))
            for d_front in D_FRONT_SET
            for name, policy in (
                ("maxrsrp", AssociationPolicy(PolicyVariant.MAX_RSRP)),
                ("mindelay", AssociationPolicy(PolicyVariant.MIN_DELAY))))
        return SweepSpec(figure, "density_ratio", DEFAULT_RATIO_GRID, cases,
                         ("delivery_latency",), **common)
    if figure == "fig7":
        cases = primary + tuple(
            SweepCase(label=f"cluster(rc={radius:g})",
                      policy=AssociationPolicy(
                          PolicyVariant.CLUSTER_MAX_CACHE_HIT, radius))
            for radius in CLUSTER_RADII)
        return SweepSpec(figure, "density_ratio", FIG7_RATIO_GRID, cases,
                         ("delivery_latency",), **common)
    if figure == "custom":
        return SweepSpec(figure, "density_ratio", DEFAULT_RATIO_GRID,
                         primary,
                         ("success_probability", "ergodic_rate",
                          "delivery_latency"), **common)
    raise SweepError(f"unknown figure {figure!r} "
                     "(expected fig2..fig7 or custom)")


FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")
