"""Metrics under biased maximum-received-power association.

The typical user compares the nearest station of each tier after biasing
RRH distances by k = (P_R / P_F)^(1/alpha) and connects to the winner:
the F-AP wins when r_R >= k * r_F.  Success probabilities are exact
closed forms in the interference-limited regime for Rayleigh fading over
independent Poisson tiers; ergodic rates integrate the success curve over
the SINR threshold written as 2^t - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import Scenario
from ..numerics import QuadratureSpec, ergodic_rate_integral, rho
from .caching import hit_probability
from .queueing import (LinkLatencies, StabilityError, TierLoads,
                       delivery_latency_bs, link_latencies, tier_loads)

__all__ = [
    "assoc_prob_max_rsrp",
    "success_prob_fap_max_rsrp",
    "success_prob_rrh_max_rsrp",
    "success_prob_max_rsrp",
    "ergodic_rate_fap",
    "ergodic_rate_rrh",
    "ergodic_rate_max_rsrp",
    "MaxRsrpLatencyReport",
    "avg_delivery_latency_max_rsrp",
]


def assoc_prob_max_rsrp(scenario: Scenario) -> tuple[float, float]:
    """(F-AP, RRH) association probabilities of the typical user.

    With biased nearest-station selection over independent Poisson tiers,
    the F-AP tier wins with probability lambda_f / (lambda_f + k^2 * lambda_r).
    """
    net = scenario.network
    k2 = scenario.k ** 2
    a_fap = net.lambda_f / (net.lambda_f + k2 * net.lambda_r)
    return a_fap, 1.0 - a_fap


def success_prob_fap_max_rsrp(scenario: Scenario, delta: float,
                              spec: QuadratureSpec | None = None) -> float:
    """P(SINR > delta | served by an F-AP), interference-limited.

    Averaging the serving-distance distribution against the Laplace
    transforms of both interference fields gives

        (lambda_f + k^2 lambda_r) /
        (lambda_f (1 + rho(delta)) + k^2 lambda_r (1 + rho(delta') ))

    where delta' = delta * P_R / (k^alpha * P_F) rescales the threshold
    for the cross-tier interferers (equal to delta when k is derived from
    the power ratio).
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    net = scenario.network
    k = scenario.k
    k2 = k * k
    delta_cross = delta * net.p_r / (k ** net.alpha * net.p_f)
    numer = net.lambda_f + k2 * net.lambda_r
    denom = (net.lambda_f * (1.0 + rho(delta, net.alpha, spec))
             + k2 * net.lambda_r * (1.0 + rho(delta_cross, net.alpha, spec)))
    return numer / denom


def success_prob_rrh_max_rsrp(scenario: Scenario, delta: float,
                              spec: QuadratureSpec | None = None) -> float:
    """P(SINR > delta | served by an RRH), interference-limited.

    The useful signal is scaled by the feedback factor zeta and same-tier
    interference by upsilon, so the two interference weights are evaluated
    at delta_1 = delta * k^alpha * P_F / (zeta * P_R) for the F-AP field
    and delta_2 = upsilon * delta / zeta for the RRH field.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    net = scenario.network
    fb = scenario.feedback
    k = scenario.k
    k2 = k * k
    delta_1 = delta * (k ** net.alpha) * net.p_f / (fb.zeta * net.p_r)
    delta_2 = fb.upsilon * delta / fb.zeta
    numer = net.lambda_f + k2 * net.lambda_r
    denom = (net.lambda_f * (1.0 + rho(delta_1, net.alpha, spec))
             + k2 * net.lambda_r * (1.0 + rho(delta_2, net.alpha, spec)))
    return numer / denom


def success_prob_max_rsrp(scenario: Scenario, delta: float,
                          spec: QuadratureSpec | None = None) -> float:
    """Unconditional success probability under max-RSRP association."""
    a_fap, a_rrh = assoc_prob_max_rsrp(scenario)
    return (a_fap * success_prob_fap_max_rsrp(scenario, delta, spec)
            + a_rrh * success_prob_rrh_max_rsrp(scenario, delta, spec))


def ergodic_rate_fap(scenario: Scenario,
                     spec: QuadratureSpec | None = None) -> float:
    """Mean spectral efficiency (b/s/Hz) of an F-AP-served user."""
    return ergodic_rate_integral(
        lambda d: success_prob_fap_max_rsrp(scenario, d, spec), spec)


def ergodic_rate_rrh(scenario: Scenario,
                     spec: QuadratureSpec | None = None) -> float:
    """Mean spectral efficiency (b/s/Hz) of an RRH-served user."""
    return ergodic_rate_integral(
        lambda d: success_prob_rrh_max_rsrp(scenario, d, spec), spec)


def ergodic_rate_max_rsrp(scenario: Scenario,
                          spec: QuadratureSpec | None = None) -> float:
    """Association-weighted mean spectral efficiency under max-RSRP."""
    a_fap, a_rrh = assoc_prob_max_rsrp(scenario)
    return (a_fap * ergodic_rate_fap(scenario, spec)
            + a_rrh * ergodic_rate_rrh(scenario, spec))


@dataclass(frozen=True)
class MaxRsrpLatencyReport:
    """Average delivery latency and its components under max-RSRP."""

    total: float
    queue_fap: float
    queue_rrh: float
    rate_fap: float
    rate_rrh: float
    assoc_fap: float
    assoc_rrh: float
    p_hit: float
    loads: TierLoads
    links: LinkLatencies


def avg_delivery_latency_max_rsrp(scenario: Scenario,
                                  spec: QuadratureSpec | None = None
                                  ) -> MaxRsrpLatencyReport:
    """Mean content delivery latency under max-RSRP association.

    Combines the per-tier M/D/1 bounds with transport-link latency: an
    F-AP-served request pays the backhaul only on a cache miss, while an
    RRH-served request always pays the fronthaul.  Raises
    :class:`StabilityError` (naming the tier) when a tier queue is
    overloaded.
    """
    traffic = scenario.traffic
    content_length = scenario.cache.content_length
    a_fap, a_rrh = assoc_prob_max_rsrp(scenario)
    p_hit = hit_probability(scenario)
    loads = tier_loads(scenario, a_fap * p_hit, a_fap * (1.0 - p_hit),
                       a_rrh, p_hit)
    rate_fap = ergodic_rate_fap(scenario, spec)
    rate_rrh = ergodic_rate_rrh(scenario, spec)
    try:
        queue_fap = delivery_latency_bs(rate_fap, loads.n_fap_hit,
                                        traffic.xi, content_length)
    except StabilityError as err:
        raise StabilityError("fap", err.rate, err.offered) from None
    try:
        queue_rrh = delivery_latency_bs(rate_rrh, loads.n_rrh,
                                        traffic.xi, content_length)
    except StabilityError as err:
        raise StabilityError("rrh", err.rate, err.offered) from None
    links = link_latencies(scenario, a_fap * (1.0 - p_hit), a_rrh)
    total = (a_fap * queue_fap
             + (1.0 - p_hit) * a_fap * links.d_back
             + a_rrh * (queue_rrh + links.d_front))
    return MaxRsrpLatencyReport(
        total=total, queue_fap=queue_fap, queue_rrh=queue_rrh,
        rate_fap=rate_fap, rate_rrh=rate_rrh,
        assoc_fap=a_fap, assoc_rrh=a_rrh, p_hit=p_hit,
        loads=loads, links=links)
