"""Station queueing and transport-link latency.

Each base station is modelled as an M/D/1 queue fed by the aggregate
requests of its associated users: a station with N users sees arrival
rate N * xi and serves fixed-size contents of L bits at the user's
ergodic rate.  The mean delivery latency is bounded below by

    D_bs = L / (E[R] - N * xi * L),

valid while the offered load N * xi * L stays below the service rate.
Fronthaul and backhaul link latencies scale linearly (coefficient ``d``)
with the aggregate traffic carried over the simulated region, unless the
scenario pins them via overrides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import Scenario

__all__ = [
    "StabilityError",
    "TierLoads",
    "LinkLatencies",
    "delivery_latency_bs",
    "link_latencies",
    "tier_loads",
]


class StabilityError(ArithmeticError):
    """Offered load reached or exceeded the service rate of a queue."""

    def __init__(self, queue: str, rate: float, offered: float):
        self.queue = queue
        self.rate = rate
        self.offered = offered
        super().__init__(
            f"{queue} queue unstable: offered load {offered:.6g} "
            f">= service rate {rate:.6g}")


@dataclass(frozen=True)
class TierLoads:
    """Mean number of users per station, by tier and cache state.

    ``n_fap_hit`` / ``n_fap_miss`` split the F-AP tier by whether the
    station caches the requested content; under the cache-blind max-RSRP
    rule both equal the plain per-F-AP load.  ``n_rrh`` is the RRH load.
    """

    n_fap_hit: float
    n_fap_miss: float
    n_rrh: float


def delivery_latency_bs(rate: float, n_users: float,
                        xi: float, content_length: float) -> float:
    """M/D/1 lower bound L / (E[R] - N*xi*L) for one station.

    Raises :class:`StabilityError` when the offered traffic N*xi*L meets
    or exceeds the ergodic service rate.
    """
    if rate <= 0:
        raise ValueError("rate must be positive")
    offered = n_users * xi * content_length
    if offered >= rate:
        raise StabilityError("station", rate, offered)
    return content_length / (rate - offered)


@dataclass(frozen=True)
class LinkLatencies:
    """Backhaul (cloud to F-AP) and fronthaul (cloud to RRH) latencies."""

    d_back: float
    d_front: float


def _disc_area(radius: float) -> float:
    return math.pi * radius * radius


def link_latencies(scenario: Scenario, a_backhaul: float,
                   a_rrh: float) -> LinkLatencies:
    """Transport-link latencies for given association mass on each link.

    ``a_backhaul`` is the probability that a request is served by an F-AP
    *and* travels the backhaul (F-AP association times cache miss);
    ``a_rrh`` is the RRH association probability.  Aggregate link traffic
    is the corresponding user mass over the disc times the per-user
    traffic xi * L.  Scenario overrides short-circuit the computation;
    they model transport links provisioned independently of the simulated
    disc size.
    """
    traffic = scenario.traffic
    area = _disc_area(scenario.network.disc_radius)
    per_user = traffic.xi * scenario.cache.content_length
    d_back = traffic.d_back_override
    if d_back is None:
        d_back = traffic.d * area * a_backhaul * traffic.lambda_u * per_user
    d_front = traffic.d_front_override
    if d_front is None:
        d_front = traffic.d * area * a_rrh * traffic.lambda_u * per_user
    return LinkLatencies(d_back=d_back, d_front=d_front)


def tier_loads(scenario: Scenario, a_fap_hit: float, a_fap_miss: float,
               a_rrh: float, p_hit: float) -> TierLoads:
    """Stationary mean users per station for a given association split.

    The mean load of a station class is the user mass it carries divided
    by its station density.  Caches are treated as independently thinned:
    a fraction ``p_hit`` of F-APs holds the requested content (density
    p_hit * lambda_f), the rest miss it.  Under the cache-blind max-RSRP
    rule pass a_fap_hit = A_F * p_hit and a_fap_miss = A_F * (1 - p_hit),
    which collapses both classes to the plain per-F-AP load.
    """
    lambda_u = scenario.traffic.lambda_u
    lambda_f = scenario.network.lambda_f
    lambda_r = scenario.network.lambda_r
    n_hit = (a_fap_hit * lambda_u / (p_hit * lambda_f)) if p_hit > 0 else 0.0
    n_miss = (a_fap_miss * lambda_u / ((1.0 - p_hit) * lambda_f)) \
        if p_hit < 1 else 0.0
    n_rrh = a_rrh * lambda_u / lambda_r
    return TierLoads(n_fap_hit=n_hit, n_fap_miss=n_miss, n_rrh=n_rrh)
