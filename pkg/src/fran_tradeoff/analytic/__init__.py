"""Closed-form and quadrature-based evaluators for the two-tier model.

Submodules:

* ``caching``  -- Zipf popularity and cache hit probability.
* ``queueing`` -- per-station M/D/1 latency bound, tier loads, transport links.
* ``maxrsrp``  -- association, success, rate, latency under biased max-RSRP.
* ``mindelay`` -- the same metrics under the minimal-delay association rule.
* ``cluster``  -- the cache-hit cluster association benchmark.
"""

from .caching import zipf_popularity, cache_hit_probability, hit_probability
from .queueing import (
    TierLoads,
    LinkLatencies,
    StabilityError,
    delivery_latency_bs,
    link_latencies,
    tier_loads,
)
from .maxrsrp import (
    assoc_prob_max_rsrp,
    success_prob_fap_max_rsrp,
    success_prob_rrh_max_rsrp,
    success_prob_max_rsrp,
    ergodic_rate_fap,
    ergodic_rate_rrh,
    ergodic_rate_max_rsrp,
    avg_delivery_latency_max_rsrp,
)
from .mindelay import (
    SinrThresholds,
    MinDelayOperatingPoint,
    ThresholdAssumptionError,
    min_delay_thresholds,
    success_prob_min_delay_general,
    success_prob_min_delay_il,
    assoc_prob_min_delay,
    solve_min_delay_operating_point,
    ergodic_rate_min_delay,
    avg_delivery_latency_min_delay,
)
from .cluster import (
    ClusterOperatingPoint,
    assoc_prob_cluster,
    success_prob_cluster,
    ergodic_rate_cluster,
    avg_delivery_latency_cluster,
    solve_cluster_operating_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
