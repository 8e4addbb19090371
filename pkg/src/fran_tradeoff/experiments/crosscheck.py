"""Analytic-versus-Monte-Carlo agreement reports.

`cross_validate` runs one simulation per policy and compares every
analytically available metric against its empirical estimate.  A
comparison passes when |analytic - MC| <= max(3 * std_error, rel_tol *
|analytic|).  Rows whose 3-sigma band is wider than half the analytic
value are flagged low-power (the sample cannot decide the comparison)
and do not fail the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..analytic.maxrsrp import (assoc_prob_max_rsrp,
                                avg_delivery_latency_max_rsrp,
                                ergodic_rate_max_rsrp,
                                success_prob_max_rsrp)
from ..analytic.mindelay import (avg_delivery_latency_min_delay,
                                 ergodic_rate_min_delay,
                                 solve_min_delay_operating_point)
from ..analytic.queueing import StabilityError
from ..config import Scenario
from ..mc.engine import AssociationPolicy, PolicyVariant
from ..mc.engine import estimate_metrics as _estimate_metrics

__all__ = ["CheckRow", "CrossCheckReport", "cross_validate"]

DEFAULT_DELTAS = (0.1, 1.0, 10.0)


@dataclass(frozen=True)
class CheckRow:
    """One compared metric: analytic value vs MC estimate."""

    metric: str
    analytic: float
    mc: float
    std_error: float
    tolerance: float
    passed: bool
    low_power: bool


@dataclass(frozen=True)
class CrossCheckReport:
    policy: str
    n_realizations: int
    seed: int
    rows: tuple[CheckRow, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.passed or r.low_power for r in self.rows)

    @property
    def low_power(self) -> bool:
        return any(r.low_power for r in self.rows)

    def lines(self) -> list[str]:
        out = [f"cross-check: policy={self.policy} "
               f"n={self.n_realizations} seed={self.seed}"]
        for r in self.rows:
            status = "PASS" if r.passed else ("LOW-POWER" if r.low_power
                                              else "FAIL")
            out.append(
                f"  [{status:9s}] {r.metric:28s} analytic={r.analytic:.6g} "
                f"mc={r.mc:.6g} se={r.std_error:.3g} tol={r.tolerance:.3g}")
        out.extend(f"  note: {n}" for n in self.notes)
        verdict = "PASS" if self.passed else "FAIL"
        if self.passed and self.low_power:
            verdict += " (low statistical power on some rows)"
        out.append(f"  overall: {verdict}")
        return out


def _compare(metric: str, analytic: float, mc: float, std_error: float,
             rel_tol: float) -> CheckRow:
    se = std_error if math.isfinite(std_error) else math.inf
    tolerance = max(3.0 * se, rel_tol * abs(analytic))
    diff = abs(analytic - mc)
    low_power = 3.0 * se > 0.5 * max(abs(analytic), 1e-12)
    return CheckRow(metric=metric, analytic=analytic, mc=mc,
                    std_error=std_error, tolerance=tolerance,
                    passed=diff <= tolerance, low_power=low_power)


def cross_validate(scenario: Scenario, policy: AssociationPolicy,
                   n_realizations: int, seed: int, *,
                   deltas: tuple[float, ...] = DEFAULT_DELTAS,
                   rel_tol: float = 0.05,
                   workers: int = 1) -> CrossCheckReport:
    """Compare analytic metrics with MC estimates under ``policy``.

    Max-RSRP compares success probability at each ``deltas`` entry,
    the association fraction, the ergodic rate, and the mean delivery
    latency.  Minimal delay compares the per-class success terms and
    association fractions of the converged operating point, the summed
    success probability, the ergodic rate, and the latency.
    """
    if policy.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
        raise ValueError("cross-validation covers the primary policies "
                         "(maxrsrp, mindelay)")
    rows: list[CheckRow] = []
    notes: list[str] = []
    if policy.variant is PolicyVariant.MAX_RSRP:
        report = _estimate_metrics(scenario, policy, n_realizations, seed,
                                   delta=deltas[0], workers=workers,
                                   success_deltas=tuple(deltas))
        for delta in deltas:
            est = report.success_at[delta]
            rows.append(_compare(f"success_probability(delta={delta:g})",
                                 success_prob_max_rsrp(scenario, delta),
                                 est.value, est.std_error, rel_tol))
        a_fap, _ = assoc_prob_max_rsrp(scenario)
        est = report.association["fap"]
        rows.append(_compare("association_fraction(fap)", a_fap,
                             est.value, est.std_error, rel_tol))
        est = report.ergodic_rate
        rows.append(_compare("ergodic_rate", ergodic_rate_max_rsrp(scenario),
                             est.value, est.std_error, rel_tol))
        _latency_row(rows, notes, report.delivery_latency,
                     lambda: avg_delivery_latency_max_rsrp(scenario).total,
                     rel_tol)
    else:
        op = solve_min_delay_operating_point(scenario)
        report = _estimate_metrics(scenario, policy, n_realizations, seed,
                                   workers=workers)
        analytic_terms = {"fap_hit": op.terms.s_fap_hit,
                          "fap_miss": op.terms.s_fap_miss,
                          "rrh": op.terms.s_rrh}
        for name, analytic in analytic_terms.items():
            est = report.success_terms[name]
            rows.append(_compare(f"success_term({name})", analytic,
                                 est.value, est.std_error, rel_tol))
        fractions = {"fap_hit": op.assoc_fap_hit,
                     "fap_miss": op.assoc_fap_miss,
                     "rrh": op.assoc_rrh}
        for name, analytic in fractions.items():
            est = report.association[name]
            rows.append(_compare(f"association_fraction({name})", analytic,
                                 est.value, est.std_error, rel_tol))
        est = report.success_probability
        rows.append(_compare("success_probability", op.terms.total,
                             est.value, est.std_error, rel_tol))
        est = report.ergodic_rate
        rows.append(_compare("ergodic_rate", ergodic_rate_min_delay(scenario),
                             est.value, est.std_error, rel_tol))
        _latency_row(rows, notes, report.delivery_latency,
                     lambda: avg_delivery_latency_min_delay(scenario).total,
                     rel_tol)
    return CrossCheckReport(policy=policy.label,
                            n_realizations=n_realizations, seed=seed,
                            rows=tuple(rows), notes=tuple(notes))


def _latency_row(rows: list[CheckRow], notes: list[str], estimate,
                 analytic_fn, rel_tol: float) -> None:
    try:
        analytic = analytic_fn()
    except StabilityError as err:
        notes.append(f"latency comparison skipped: {err}")
        return
    rows.append(_compare("delivery_latency", analytic, estimate.value,
                         estimate.std_error, rel_tol))
