"""Scene sampling for the Monte Carlo validator.

Each realization draws the two station fields, per-link Rayleigh fading
power gains, the typical user's request, and the cache marks, all from
counter-based random streams keyed by (seed, realization index, purpose).
Purpose keys isolate the draws, so e.g. sampling a user field later on
does not shift the station or fading streams of the same realization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..config import Placement, Scenario
from ..analytic.caching import cache_hit_probability, zipf_popularity

__all__ = [
    "StreamPurpose",
    "Realization",
    "realization_rng",
    "sample_ppp",
    "draw_request",
    "mark_caches",
    "sample_realization",
    "sample_users",
]


class StreamPurpose(enum.IntEnum):
    GEOMETRY = 0
    FADING = 1
    REQUEST = 2
    CACHES = 3
    USERS = 4


def realization_rng(seed: int, index: int,
                    purpose: StreamPurpose) -> np.random.Generator:
    """Independent, reproducible stream for one purpose of one realization."""
    sequence = np.random.SeedSequence((seed, index, int(purpose)))
    return np.random.Generator(np.random.Philox(sequence))


def sample_ppp(density: float, radius: float,
               rng: np.random.Generator) -> np.ndarray:
    """Poisson point process on a disc centred at the origin.

    Returns an (n, 2) coordinate array with n ~ Poisson(density * pi *
    radius^2) and positions uniform on the disc (r = radius * sqrt(u)).
    """
    if density <= 0 or radius <= 0:
        raise ValueError("density and radius must be positive")
    mean_count = density * np.pi * radius * radius
    n = int(rng.poisson(mean_count))
    r = radius * np.sqrt(rng.random(n))
    theta = 2.0 * np.pi * rng.random(n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def draw_request(popularity: np.ndarray, rng: np.random.Generator) -> int:
    """Catalog index (0-based) of the typical user's request."""
    u = rng.random()
    return int(np.searchsorted(np.cumsum(popularity), u, side="right"))


def mark_caches(n_faps: int, cache, request: int,
                rng: np.random.Generator) -> np.ndarray:
    """Boolean hit flag per F-AP for the requested content.

    Most-popular placement is deterministic: every F-AP stores the top
    ``cached_count`` contents, so all F-APs hit exactly when the request
    falls in that prefix.  Independent thinning flags each F-AP with the
    aggregate hit probability, independently of the request.
    """
    if cache.placement is Placement.MOST_POPULAR:
        return np.full(n_faps, request < cache.cached_count, dtype=bool)
    p_hit = cache_hit_probability(cache.catalog_size, cache.cached_count,
                                  cache.zipf_tau)
    return rng.random(n_faps) < p_hit


@dataclass(frozen=True)
class Realization:
    """One sampled scene with the typical user at the origin."""

    fap_points: np.ndarray   # (n_f, 2) metres
    rrh_points: np.ndarray   # (n_r, 2) metres
    fap_fading: np.ndarray   # (n_f,) unit-mean exponential power gains
    rrh_fading: np.ndarray   # (n_r,) unit-mean exponential power gains
    cache_marks: np.ndarray  # (n_f,) bool: serving F-AP holds the request
    request: int             # catalog index, 0-based

    @property
    def fap_sq_distances(self) -> np.ndarray:
        d = np.einsum("ij,ij->i", self.fap_points, self.fap_points)
        # A station exactly at the origin would give infinite received
        # power; clamp to a negligible 1 mm^2 to keep sums finite.
        return np.maximum(d, 1e-6)

    @property
    def rrh_sq_distances(self) -> np.ndarray:
        d = np.einsum("ij,ij->i", self.rrh_points, self.rrh_points)
        return np.maximum(d, 1e-6)


def sample_realization(scenario: Scenario, index: int,
                       seed: int) -> Realization:
    """Draw one scene; identical output for identical (scenario, index, seed)."""
    net = scenario.network
    geom = realization_rng(seed, index, StreamPurpose.GEOMETRY)
    fap_points = sample_ppp(net.lambda_f, net.disc_radius, geom)
    rrh_points = sample_ppp(net.lambda_r, net.disc_radius, geom)
    fading = realization_rng(seed, index, StreamPurpose.FADING)
    fap_fading = fading.exponential(1.0, len(fap_points))
    rrh_fading = fading.exponential(1.0, len(rrh_points))
    request_rng = realization_rng(seed, index, StreamPurpose.REQUEST)
    popularity = zipf_popularity(scenario.cache.catalog_size,
                                 scenario.cache.zipf_tau)
    request = draw_request(popularity, request_rng)
    cache_rng = realization_rng(seed, index, StreamPurpose.CACHES)
    marks = mark_caches(len(fap_points), scenario.cache, request, cache_rng)
    return Realization(fap_points=fap_points, rrh_points=rrh_points,
                       fap_fading=fap_fading, rrh_fading=rrh_fading,
                       cache_marks=marks, request=request)


def sample_users(scenario: Scenario, index: int, seed: int) -> np.ndarray:
    """User positions of one realization (same keying as the scene)."""
    rng = realization_rng(seed, index, StreamPurpose.USERS)
    return sample_ppp(scenario.traffic.lambda_u, scenario.network.disc_radius,
                      rng)
