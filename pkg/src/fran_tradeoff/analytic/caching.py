"""Content popularity and cache hit probability.

Requests follow a Zipf law over a finite catalog; each F-AP caches the
``cached_count`` most popular contents (or an independently thinned subset
of the same aggregate size, which leaves the hit probability unchanged).
"""

from __future__ import annotations

import numpy as np

from ..config import Scenario

__all__ = ["zipf_popularity", "cache_hit_probability", "hit_probability"]


def zipf_popularity(catalog_size: int, tau: float) -> np.ndarray:
    """Request probabilities f_i = i^(-tau) / sum_j j^(-tau), most popular first."""
    if catalog_size < 1:
        raise ValueError("catalog_size must be at least 1")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    ranks = np.arange(1, catalog_size + 1, dtype=float)
    weights = ranks ** (-tau)
    return weights / weights.sum()


def cache_hit_probability(catalog_size: int, cached_count: int,
                          tau: float) -> float:
    """Probability that a request falls in the cached most-popular set."""
    if cached_count < 0 or cached_count > catalog_size:
        raise ValueError("cached_count must lie in [0, catalog_size]")
    if cached_count == 0:
        return 0.0
    popularity = zipf_popularity(catalog_size, tau)
    return float(popularity[:cached_count].sum())


def hit_probability(scenario: Scenario) -> float:
    cache = scenario.cache
    return cache_hit_probability(cache.catalog_size, cache.cached_count,
                                 cache.zipf_tau)
