"""Cache-hit cluster association benchmark.

The benchmark rule serves the user from the nearest F-AP that caches the
requested content, provided one exists within a cluster radius; otherwise
the user falls back to the nearest RRH (which fetches the content over
the fronthaul).  Under independently thinned caches the caching F-APs
form a Poisson field of density p_hit * lambda_f, which keeps every
quantity in closed or single-quadrature form: the F-AP branch integrates
the serving-distance density over [0, radius] against the interference
Laplace transforms, the RRH branch conditions on an empty cluster disc,
which simply truncates the caching-field interference at the cluster
radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import Scenario
from ..numerics import (QuadratureSpec, ergodic_rate_integral,
                        interference_constant, rho, semi_infinite_quadrature,
                        tail_weight)
from .caching import hit_probability
from .queueing import (LinkLatencies, StabilityError, TierLoads,
                       delivery_latency_bs, link_latencies, tier_loads)

__all__ = [
    "ClusterOperatingPoint",
    "ClusterLatencyReport",
    "assoc_prob_cluster",
    "success_prob_cluster_fap",
    "success_prob_cluster_rrh",
    "success_prob_cluster",
    "ergodic_rate_cluster_fap",
    "ergodic_rate_cluster_rrh",
    "ergodic_rate_cluster",
    "avg_delivery_latency_cluster",
    "solve_cluster_operating_point",
]


def _check_radius(radius: float) -> None:
    if radius < 0:
        raise ValueError("cluster radius must be nonnegative")


def assoc_prob_cluster(scenario: Scenario, radius: float,
                       p_hit: float | None = None) -> tuple[float, float]:
    """(F-AP, RRH) association probabilities under the cluster rule.

    The F-AP branch is taken exactly when the thinned caching field has a
    point within the cluster radius.
    """
    _check_radius(radius)
    if p_hit is None:
        p_hit = hit_probability(scenario)
    lam_hit = p_hit * scenario.network.lambda_f
    a_fap = 1.0 - math.exp(-math.pi * lam_hit * radius * radius)
    return a_fap, 1.0 - a_fap


def success_prob_cluster_fap(scenario: Scenario, radius: float, delta: float,
                             p_hit: float | None = None,
                             spec: QuadratureSpec | None = None) -> float:
    """P(SINR > delta | served by a caching F-AP within the radius).

    Interference: caching F-APs beyond the serving distance, all
    non-caching F-APs, and all RRHs.  Closed form: the radial integral of
    exp(-pi X r^2) against the serving-distance density truncates at the
    cluster radius.
    """
    _check_radius(radius)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if p_hit is None:
        p_hit = hit_probability(scenario)
    net = scenario.network
    lam_hit = p_hit * net.lambda_f
    a_fap = 1.0 - math.exp(-math.pi * lam_hit * radius * radius)
    if a_fap == 0.0:
        return 0.0
    if delta == 0:
        return 1.0
    c_alpha = interference_constant(net.alpha)
    weight = delta ** (2.0 / net.alpha)
    x = (lam_hit * (1.0 + rho(delta, net.alpha, spec))
         + c_alpha * weight * ((1.0 - p_hit) * net.lambda_f
                               + net.lambda_r * (net.p_r / net.p_f) ** (2.0 / net.alpha)))
    joint = (lam_hit / x) * (1.0 - math.exp(-math.pi * x * radius * radius))
    return joint / a_fap


def success_prob_cluster_rrh(scenario: Scenario, radius: float, delta: float,
                             p_hit: float | None = None,
                             spec: QuadratureSpec | None = None) -> float:
    """P(SINR > delta | cluster disc empty, served by the nearest RRH).

    Conditioning on an empty cluster disc removes caching F-APs within
    the cluster radius; non-caching F-APs interfere from everywhere and
    other RRHs (feedback-scaled) from beyond the serving distance.
    """
    _check_radius(radius)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if p_hit is None:
        p_hit = hit_probability(scenario)
    if delta == 0:
        return 1.0
    net = scenario.network
    fb = scenario.feedback
    alpha = net.alpha
    two_over_alpha = 2.0 / alpha
    lam_hit = p_hit * net.lambda_f
    lam_miss = (1.0 - p_hit) * net.lambda_f
    c_alpha = interference_constant(alpha)
    # Cross-tier power weight for F-AP interferers seen by the RRH signal.
    a_fap_weight = (delta * net.p_f / (fb.zeta * net.p_r)) ** two_over_alpha
    rho_rrh = rho(fb.upsilon * delta / fb.zeta, alpha, spec)
    radius_sq = radius * radius

    def integrand(r: float) -> float:
        r_sq = r * r
        exponent = net.lambda_r * (1.0 + rho_rrh) * r_sq \
            + lam_miss * c_alpha * a_fap_weight * r_sq
        if lam_hit > 0.0 and r > 0.0:
            exponent += lam_hit * a_fap_weight * r_sq * tail_weight(
                radius_sq / (a_fap_weight * r_sq), alpha, spec)
        return 2.0 * math.pi * net.lambda_r * r * math.exp(-math.pi * exponent)

    return semi_infinite_quadrature(integrand, spec=spec)


def success_prob_cluster(scenario: Scenario, radius: float, delta: float,
                         p_hit: float | None = None,
                         spec: QuadratureSpec | None = None) -> float:
    """Unconditional success probability under the cluster rule."""
    if p_hit is None:
        p_hit = hit_probability(scenario)
    a_fap, a_rrh = assoc_prob_cluster(scenario, radius, p_hit)
    result = a_rrh * success_prob_cluster_rrh(scenario, radius, delta,
                                              p_hit, spec)
    if a_fap > 0.0:
        result += a_fap * success_prob_cluster_fap(scenario, radius, delta,
                                                   p_hit, spec)
    return result


def ergodic_rate_cluster_fap(scenario: Scenario, radius: float,
                             p_hit: float | None = None,
                             spec: QuadratureSpec | None = None) -> float:
    """Mean spectral efficiency of a cluster-F-AP-served user."""
    if p_hit is None:
        p_hit = hit_probability(scenario)
    return ergodic_rate_integral(
        lambda d: success_prob_cluster_fap(scenario, radius, d, p_hit, spec),
        spec)


def ergodic_rate_cluster_rrh(scenario: Scenario, radius: float,
                             p_hit: float | None = None,
                             spec: QuadratureSpec | None = None) -> float:
    """Mean spectral efficiency of a fallback-RRH-served user."""
    if p_hit is None:
        p_hit = hit_probability(scenario)
    return ergodic_rate_integral(
        lambda d: success_prob_cluster_rrh(scenario, radius, d, p_hit, spec),
        spec)


def ergodic_rate_cluster(scenario: Scenario, radius: float,
                         p_hit: float | None = None,
                         spec: QuadratureSpec | None = None) -> float:
    """Association-weighted mean spectral efficiency under the cluster rule."""
    if p_hit is None:
        p_hit = hit_probability(scenario)
    a_fap, a_rrh = assoc_prob_cluster(scenario, radius, p_hit)
    rate = a_rrh * ergodic_rate_cluster_rrh(scenario, radius, p_hit, spec)
    if a_fap > 0.0:
        rate += a_fap * ergodic_rate_cluster_fap(scenario, radius, p_hit, spec)
    return rate


@dataclass(frozen=True)
class ClusterOperatingPoint:
    """Association split, loads, and link latencies for a cluster radius."""

    radius: float
    assoc_fap: float
    assoc_rrh: float
    p_hit: float
    loads: TierLoads
    links: LinkLatencies


def solve_cluster_operating_point(scenario: Scenario,
                                  radius: float) -> ClusterOperatingPoint:
    """Operating point of the cluster rule (no fixed point involved).

    The F-AP branch always serves cached content, so no backhaul traffic
    arises; fronthaul traffic carries the RRH branch.
    """
    p_hit = hit_probability(scenario)
    a_fap, a_rrh = assoc_prob_cluster(scenario, radius, p_hit)
    loads = tier_loads(scenario, a_fap, 0.0, a_rrh, p_hit)
    links = link_latencies(scenario, 0.0, a_rrh)
    return ClusterOperatingPoint(radius=radius, assoc_fap=a_fap,
                                 assoc_rrh=a_rrh, p_hit=p_hit,
                                 loads=loads, links=links)


@dataclass(frozen=True)
class ClusterLatencyReport:
    """Average delivery latency and components under the cluster rule."""

    total: float
    queue_fap: float
    queue_rrh: float
    rate_fap: float
    rate_rrh: float
    operating_point: ClusterOperatingPoint


def avg_delivery_latency_cluster(scenario: Scenario, radius: float,
                                 spec: QuadratureSpec | None = None
                                 ) -> ClusterLatencyReport:
    """Mean delivery latency under the cluster rule.

    Cached delivery pays only the caching F-AP queue; fallback delivery
    pays the RRH queue plus the fronthaul.
    """
    op = solve_cluster_operating_point(scenario, radius)
    traffic = scenario.traffic
    content = scenario.cache.content_length
    queue_fap = 0.0
    rate_fap = math.nan
    if op.assoc_fap > 0.0:
        rate_fap = ergodic_rate_cluster_fap(scenario, radius, op.p_hit, spec)
        try:
            queue_fap = delivery_latency_bs(rate_fap, op.loads.n_fap_hit,
                                            traffic.xi, content)
        except StabilityError as err:
            raise StabilityError("fap_hit", err.rate, err.offered) from None
    rate_rrh = ergodic_rate_cluster_rrh(scenario, radius, op.p_hit, spec)
    try:
        queue_rrh = delivery_latency_bs(rate_rrh, op.loads.n_rrh,
                                        traffic.xi, content)
    except StabilityError as err:
        raise StabilityError("rrh", err.rate, err.offered) from None
    total = (op.assoc_fap * queue_fap
             + op.assoc_rrh * (queue_rrh + op.links.d_front))
    return ClusterLatencyReport(total=total, queue_fap=queue_fap,
                                queue_rrh=queue_rrh, rate_fap=rate_fap,
                                rate_rrh=rate_rrh, operating_point=op)
