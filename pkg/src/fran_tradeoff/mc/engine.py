"""Monte Carlo estimation of the typical-user metrics.

Each realization is reduced (by the active kernel) to a handful of
scalars: per-tier interference totals, the nearest station per tier, the
nearest caching F-AP, and the strongest candidate of each station class.
Because the SINR of a candidate is monotone in its own received power
once the totals are fixed, those scalars determine the serving station
and its SINR under every association rule without revisiting the scene.

Latency estimates follow the analytical semantics: the report plugs
MC-estimated per-tier rates and association fractions into the same
M/D/1-plus-transport composition the analytic modules use, with standard
errors from batch means.  An instantaneous variant (per-realization rate
with a configurable floor above the offered load) is available through
``latency_mode="instantaneous"``.

`associate` and `per_bs_loads` replay association rules on explicit
realizations one station at a time; they exist for validation-scale
checks of the vectorized estimators.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..analytic.caching import hit_probability
from ..analytic.mindelay import (SinrThresholds,
                                 solve_min_delay_operating_point)
from ..analytic.queueing import (StabilityError, delivery_latency_bs,
                                 link_latencies, tier_loads)
from ..config import Scenario, ThresholdMapping
from . import kernels
from .sampling import Realization, sample_realization

__all__ = [
    "PolicyVariant",
    "AssociationPolicy",
    "EmpiricalEstimate",
    "MetricsReport",
    "EmptySceneError",
    "sinr_fap",
    "sinr_rrh",
    "associate",
    "per_bs_loads",
    "simulate_batch",
    "estimate_metrics",
]

LN2 = math.log(2.0)

# Column layout of the per-realization statistics array produced by the
# reduction kernels.
T_F, T_R, R2_F0, W_F0, R2_R0, W_R0, R2_HIT0, W_HIT0, \
    W_HIT_MAX, W_MISS_MAX, W_R_MAX, \
    SUM_LOG_HIT, SUM_LOG_MISS, SUM_LOG_RRH = range(14)
N_COLUMNS = 14

LATENCY_BATCHES = 20


class EmptySceneError(RuntimeError):
    """A realization sampled no station that the policy could serve from."""


class PolicyVariant(enum.Enum):
    MAX_RSRP = "maxrsrp"
    MIN_DELAY = "mindelay"
    CLUSTER_MAX_CACHE_HIT = "cluster"


@dataclass(frozen=True)
class AssociationPolicy:
    """Association rule plus its parameter (cluster radius in metres)."""

    variant: PolicyVariant
    cluster_radius: float | None = None

    def __post_init__(self):
        if self.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
            if self.cluster_radius is None or self.cluster_radius <= 0:
                raise ValueError("cluster policy requires a positive radius")
        elif self.cluster_radius is not None:
            raise ValueError(
                "cluster_radius only applies to the cluster policy")

    @property
    def label(self) -> str:
        if self.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
            return f"cluster(rc={self.cluster_radius:g})"
        return self.variant.value


@dataclass(frozen=True)
class EmpiricalEstimate:
    """Point estimate with standard error and the sample count behind it."""

    value: float
    std_error: float
    n: int


@dataclass(frozen=True)
class MetricsReport:
    """Monte Carlo metrics for one (scenario, policy) pair."""

    policy: str
    n_realizations: int
    seed: int
    kernel: str
    success_probability: EmpiricalEstimate
    ergodic_rate: EmpiricalEstimate
    delivery_latency: EmpiricalEstimate | None
    association: dict[str, EmpiricalEstimate]
    tier_rates: dict[str, EmpiricalEstimate]
    success_terms: dict[str, EmpiricalEstimate] = field(default_factory=dict)
    success_at: dict[float, EmpiricalEstimate] = field(default_factory=dict)


# --- single-realization operations (validation-scale helpers) --------------

def sinr_fap(realization: Realization, serving: int,
             scenario: Scenario) -> float:
    """Instantaneous SINR of the typical user served by F-AP ``serving``."""
    net = scenario.network
    w_f = net.p_f * realization.fap_fading \
        * realization.fap_sq_distances ** (-0.5 * net.alpha)
    w_r = net.p_r * realization.rrh_fading \
        * realization.rrh_sq_distances ** (-0.5 * net.alpha)
    signal = w_f[serving]
    return signal / (w_f.sum() - signal + w_r.sum() + net.sigma2)


def sinr_rrh(realization: Realization, serving: int,
             scenario: Scenario) -> float:
    """Instantaneous SINR served by RRH ``serving`` (feedback-scaled)."""
    net = scenario.network
    fb = scenario.feedback
    w_f = net.p_f * realization.fap_fading \
        * realization.fap_sq_distances ** (-0.5 * net.alpha)
    w_r = net.p_r * realization.rrh_fading \
        * realization.rrh_sq_distances ** (-0.5 * net.alpha)
    signal = w_r[serving]
    return (fb.zeta * signal
            / (w_f.sum() + fb.upsilon * (w_r.sum() - signal) + net.sigma2))


def _min_delay_pick(w_f: np.ndarray, w_r: np.ndarray, r2_f: np.ndarray,
                    r2_r: np.ndarray, marks: np.ndarray, scenario: Scenario,
                    loads, links,
                    mapping: ThresholdMapping) -> tuple[int, str]:
    """Station with minimal queue-plus-transport delay for given gains.

    Candidate delay uses the class's stationary mean load: the M/D/1
    bound at this station's own rate plus the class transport latency.
    Stations whose rate cannot sustain the class load are skipped; when
    none can, the strongest candidate serves.  Ties break toward the
    smaller serving distance.
    """
    net = scenario.network
    fb = scenario.feedback
    traffic = scenario.traffic
    content = scenario.cache.content_length
    t_f = float(w_f.sum())
    t_r = float(w_r.sum())

    def rate_of(gamma: float) -> float:
        if mapping is ThresholdMapping.SHANNON:
            return math.log2(1.0 + gamma)
        return gamma

    best = None  # (delay, tie-break squared distance, index, tier)
    for i in range(len(w_f)):
        gamma = w_f[i] / (t_f - w_f[i] + t_r + net.sigma2)
        if marks[i]:
            n_users, extra = loads.n_fap_hit, 0.0
        else:
            n_users, extra = loads.n_fap_miss, links.d_back
        rate = rate_of(gamma)
        offered = n_users * traffic.xi * content
        if rate <= offered:
            continue
        candidate = (content / (rate - offered) + extra,
                     float(r2_f[i]), i, "fap")
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    offered_rrh = loads.n_rrh * traffic.xi * content
    for j in range(len(w_r)):
        gamma = fb.zeta * w_r[j] / (t_f + fb.upsilon * (t_r - w_r[j])
                                    + net.sigma2)
        rate = rate_of(gamma)
        if rate <= offered_rrh:
            continue
        candidate = (content / (rate - offered_rrh) + links.d_front,
                     float(r2_r[j]), j, "rrh")
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    if best is not None:
        return best[2], best[3]
    best_f = float(w_f.max()) if len(w_f) else -math.inf
    best_r = float(fb.zeta * w_r.max()) if len(w_r) else -math.inf
    if best_f >= best_r:
        return int(np.argmax(w_f)), "fap"
    return int(np.argmax(w_r)), "rrh"


def associate(realization: Realization, policy: AssociationPolicy,
              scenario: Scenario, operating_point=None,
              mapping: ThresholdMapping = ThresholdMapping.DIRECT
              ) -> tuple[int, str]:
    """Serving station under ``policy``: (index within tier, tier label).

    Tier labels are ``"fap"`` and ``"rrh"``.  The minimal-delay rule
    scores stations by instantaneous delay against the stationary class
    loads of ``operating_point`` (solved here when not supplied).
    """
    n_f = len(realization.fap_points)
    n_r = len(realization.rrh_points)
    if n_f == 0 and n_r == 0:
        raise EmptySceneError("no station on the disc")
    net = scenario.network
    r2_f = realization.fap_sq_distances if n_f else np.empty(0)
    r2_r = realization.rrh_sq_distances if n_r else np.empty(0)

    if policy.variant is PolicyVariant.MAX_RSRP:
        # Biased nearest-distance comparison; the F-AP wins ties.
        best_f = float(r2_f.min()) if n_f else math.inf
        best_r = float(r2_r.min()) if n_r else math.inf
        if best_r >= scenario.k ** 2 * best_f:
            return int(np.argmin(r2_f)), "fap"
        return int(np.argmin(r2_r)), "rrh"

    if policy.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
        radius_sq = policy.cluster_radius ** 2
        if n_f and realization.cache_marks.any():
            hit_r2 = np.where(realization.cache_marks, r2_f, np.inf)
            best = int(np.argmin(hit_r2))
            if hit_r2[best] <= radius_sq:
                return best, "fap"
        if n_r == 0:
            raise EmptySceneError("no RRH for the cluster fallback")
        return int(np.argmin(r2_r)), "rrh"

    if operating_point is None:
        operating_point = solve_min_delay_operating_point(scenario, mapping)
    w_f = net.p_f * realization.fap_fading * r2_f ** (-0.5 * net.alpha) \
        if n_f else np.empty(0)
    w_r = net.p_r * realization.rrh_fading * r2_r ** (-0.5 * net.alpha) \
        if n_r else np.empty(0)
    return _min_delay_pick(w_f, w_r, r2_f, r2_r, realization.cache_marks,
                           scenario, operating_point.loads,
                           operating_point.links, mapping)


def per_bs_loads(realization: Realization, policy: AssociationPolicy,
                 scenario: Scenario, users: np.ndarray,
                 operating_point=None,
                 rng: np.random.Generator | None = None,
                 mapping: ThresholdMapping = ThresholdMapping.DIRECT
                 ) -> tuple[np.ndarray, np.ndarray]:
    """Per-station user counts ``(fap_counts, rrh_counts)`` under ``policy``.

    Every user in ``users`` (an (n, 2) array of positions) associates by
    the same rule as the typical user.  The minimal-delay rule needs
    per-user fading to every station, drawn from ``rng``.  Intended for
    validation-scale scenes: memory grows as users times stations.
    """
    n_f = len(realization.fap_points)
    n_r = len(realization.rrh_points)
    fap_counts = np.zeros(n_f, dtype=np.int64)
    rrh_counts = np.zeros(n_r, dtype=np.int64)
    if len(users) == 0:
        return fap_counts, rrh_counts
    if n_f == 0 and n_r == 0:
        raise EmptySceneError("no station on the disc")

    def sq_dists(points: np.ndarray) -> np.ndarray:
        diff = users[:, None, :] - points[None, :, :]
        return np.maximum(np.einsum("ijk,ijk->ij", diff, diff), 1e-6)

    d2_f = sq_dists(realization.fap_points) if n_f else \
        np.empty((len(users), 0))
    d2_r = sq_dists(realization.rrh_points) if n_r else \
        np.empty((len(users), 0))

    if policy.variant is PolicyVariant.MAX_RSRP:
        best_f = d2_f.min(axis=1) if n_f else np.full(len(users), np.inf)
        best_r = d2_r.min(axis=1) if n_r else np.full(len(users), np.inf)
        to_fap = best_r >= scenario.k ** 2 * best_f
        for u in range(len(users)):
            if to_fap[u]:
                fap_counts[int(np.argmin(d2_f[u]))] += 1
            else:
                rrh_counts[int(np.argmin(d2_r[u]))] += 1
        return fap_counts, rrh_counts

    if policy.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
        radius_sq = policy.cluster_radius ** 2
        any_hit = bool(n_f and realization.cache_marks.any())
        for u in range(len(users)):
            if any_hit:
                hit_d2 = np.where(realization.cache_marks, d2_f[u], np.inf)
                best = int(np.argmin(hit_d2))
                if hit_d2[best] <= radius_sq:
                    fap_counts[best] += 1
                    continue
            if n_r == 0:
                raise EmptySceneError("no RRH for the cluster fallback")
            rrh_counts[int(np.argmin(d2_r[u]))] += 1
        return fap_counts, rrh_counts

    if rng is None:
        raise ValueError(
            "minimal-delay per-station loads need an rng for user fading")
    if operating_point is None:
        operating_point = solve_min_delay_operating_point(scenario, mapping)
    net = scenario.network
    for u in range(len(users)):
        w_f = net.p_f * rng.exponential(size=n_f) \
            * d2_f[u] ** (-0.5 * net.alpha)
        w_r = net.p_r * rng.exponential(size=n_r) \
            * d2_r[u] ** (-0.5 * net.alpha)
        index, tier = _min_delay_pick(
            w_f, w_r, d2_f[u], d2_r[u], realization.cache_marks, scenario,
            operating_point.loads, operating_point.links, mapping)
        if tier == "fap":
            fap_counts[index] += 1
        else:
            rrh_counts[index] += 1
    return fap_counts, rrh_counts


# --- batch simulation -------------------------------------------------------

def _simulate_range(scenario: Scenario, start: int, count: int, seed: int,
                    kernel_name: str | None) -> np.ndarray:
    kernel = kernels.get_kernel(kernel_name)
    net = scenario.network
    fb = scenario.feedback
    out = np.empty((count, N_COLUMNS))
    for offset in range(count):
        real = sample_realization(scenario, start + offset, seed)
        out[offset] = kernel.reduce_realization(
            np.ascontiguousarray(real.fap_sq_distances),
            np.ascontiguousarray(real.fap_fading),
            np.ascontiguousarray(real.cache_marks.astype(np.uint8)),
            np.ascontiguousarray(real.rrh_sq_distances),
            np.ascontiguousarray(real.rrh_fading),
            net.p_f, net.p_r, net.alpha,
            net.sigma2, fb.zeta, fb.upsilon)
    return out


def simulate_batch(scenario: Scenario, n_realizations: int, seed: int,
                   workers: int = 1, kernel: str | None = None) -> np.ndarray:
    """Per-realization scalar statistics, ordered by realization index.

    The output is identical for identical (scenario, n, seed) regardless
    of ``workers``: every realization derives its random streams from its
    own index alone and rows are placed back by index.
    """
    if n_realizations < 1:
        raise ValueError("n_realizations must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if workers == 1:
        return _simulate_range(scenario, 0, n_realizations, seed, kernel)
    chunk = (n_realizations + workers - 1) // workers
    starts = list(range(0, n_realizations, chunk))
    out = np.empty((n_realizations, N_COLUMNS))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_simulate_range, scenario, start,
                        min(chunk, n_realizations - start), seed, kernel)
            for start in starts
        ]
        for start, future in zip(starts, futures):
            block = future.result()
            out[start:start + len(block)] = block
    return out


# --- metric estimation ------------------------------------------------------

def _proportion(mask: np.ndarray) -> EmpiricalEstimate:
    n = int(mask.size)
    if n == 0:
        return EmpiricalEstimate(math.nan, math.nan, 0)
    p = float(np.mean(mask))
    return EmpiricalEstimate(p, math.sqrt(p * (1.0 - p) / n), n)


def _sample_mean(samples: np.ndarray) -> EmpiricalEstimate:
    n = int(samples.size)
    if n == 0:
        return EmpiricalEstimate(math.nan, math.nan, 0)
    mean = float(np.mean(samples))
    se = float(np.std(samples, ddof=1) / math.sqrt(n)) if n > 1 else math.nan
    return EmpiricalEstimate(mean, se, n)


def _queue(name: str, rate: float, n_users: float,
           scenario: Scenario) -> float:
    try:
        return delivery_latency_bs(rate, n_users, scenario.traffic.xi,
                                   scenario.cache.content_length)
    except StabilityError as err:
        raise StabilityError(name, err.rate, err.offered) from None


def _batch_means_se(latency_of: Callable[[slice], float], n: int) -> float:
    """Standard error of a composed estimator from contiguous batch means."""
    n_batches = min(LATENCY_BATCHES, n)
    if n_batches < 2:
        return math.nan
    edges = np.linspace(0, n, n_batches + 1).astype(int)
    values = []
    for b in range(n_batches):
        if edges[b + 1] <= edges[b]:
            continue
        try:
            value = latency_of(slice(int(edges[b]), int(edges[b + 1])))
        except (StabilityError, ValueError, ZeroDivisionError):
            continue
        if math.isfinite(value):
            values.append(value)
    if len(values) < 2:
        return math.nan
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _latency_estimate(latency_of: Callable[[slice], float],
                      n: int) -> EmpiricalEstimate:
    value = latency_of(slice(0, n))
    return EmpiricalEstimate(value, _batch_means_se(latency_of, n), n)


def estimate_metrics(scenario: Scenario, policy: AssociationPolicy,
                     n_realizations: int, seed: int, *,
                     delta: float = 1.0,
                     workers: int = 1,
                     kernel: str | None = None,
                     latency_mode: str = "mean",
                     rate_floor: float = 1e-3,
                     thresholds: SinrThresholds | None = None,
                     mapping: ThresholdMapping = ThresholdMapping.DIRECT,
                     success_deltas: tuple[float, ...] = (),
                     compute_latency: bool = True) -> MetricsReport:
    """Monte Carlo estimates of success, rate, and latency under ``policy``.

    ``delta`` is the SINR threshold for the max-RSRP and cluster success
    probabilities (``success_deltas`` asks for additional thresholds,
    reported in ``success_at``); the minimal-delay policy instead tests
    each station class against its deadline-derived threshold
    (``thresholds`` when given, else the solved operating point's).
    ``latency_mode="mean"`` composes the latency from sample-mean rates
    and fractions, with a batch-means standard error; ``"instantaneous"``
    averages the per-realization composition, flooring each realization's
    rate at ``rate_floor`` above the offered load so single deep fades
    cannot produce an unstable queue.
    """
    if latency_mode not in ("mean", "instantaneous"):
        raise ValueError("latency_mode must be 'mean' or 'instantaneous'")
    stats = simulate_batch(scenario, n_realizations, seed, workers, kernel)
    kernel_name = kernels.get_kernel(kernel).KERNEL_NAME
    empty = np.isinf(stats[:, R2_F0]) & np.isinf(stats[:, R2_R0])
    if empty.any():
        raise EmptySceneError(
            f"realization {int(np.argmax(empty))} sampled no station; "
            "increase densities or the disc radius")
    common = dict(policy=policy.label, n_realizations=n_realizations,
                  seed=seed, kernel=kernel_name)
    if policy.variant is PolicyVariant.MAX_RSRP:
        return _metrics_max_rsrp(scenario, stats, delta, success_deltas,
                                 latency_mode, rate_floor, compute_latency,
                                 common)
    if policy.variant is PolicyVariant.CLUSTER_MAX_CACHE_HIT:
        return _metrics_cluster(scenario, stats, policy.cluster_radius,
                                delta, success_deltas, latency_mode,
                                rate_floor, compute_latency, common)
    return _metrics_min_delay(scenario, stats, thresholds, mapping,
                              latency_mode, rate_floor, compute_latency,
                              common)


def _metrics_max_rsrp(scenario: Scenario, stats: np.ndarray, delta: float,
                      success_deltas: tuple[float, ...], latency_mode: str,
                      rate_floor: float, compute_latency: bool,
                      common: dict) -> MetricsReport:
    net = scenario.network
    fb = scenario.feedback
    t_f, t_r = stats[:, T_F], stats[:, T_R]
    fap = stats[:, R2_R0] >= scenario.k ** 2 * stats[:, R2_F0]
    w_f0, w_r0 = stats[:, W_F0], stats[:, W_R0]
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = np.where(
            fap,
            w_f0 / (t_f - w_f0 + t_r + net.sigma2),
            fb.zeta * w_r0 / (t_f + fb.upsilon * (t_r - w_r0) + net.sigma2))
    rates = np.log1p(sinr) / LN2
    hit = fap & (stats[:, R2_HIT0] == stats[:, R2_F0])
    miss = fap & ~hit
    p_hit = hit_probability(scenario)
    content = scenario.cache.content_length
    xi = scenario.traffic.xi

    def latency_of(sl: slice) -> float:
        f = fap[sl]
        a_fap = float(np.mean(f))
        a_rrh = 1.0 - a_fap
        a_miss = float(np.mean(miss[sl]))
        # The cache-blind split collapses the F-AP queue to the plain
        # per-station load; the measured miss share drives the backhaul.
        loads = tier_loads(scenario, a_fap * p_hit, a_fap * (1.0 - p_hit),
                           a_rrh, p_hit)
        links = link_latencies(scenario, a_miss, a_rrh)
        total = a_miss * links.d_back
        if a_fap > 0.0:
            rate_f = float(np.mean(rates[sl][f]))
            total += a_fap * _queue("fap", rate_f, loads.n_fap_hit, scenario)
        if a_rrh > 0.0:
            rate_r = float(np.mean(rates[sl][~f]))
            total += a_rrh * (_queue("rrh", rate_r, loads.n_rrh, scenario)
                              + links.d_front)
        return total

    latency = None
    if compute_latency:
        if latency_mode == "mean":
            latency = _latency_estimate(latency_of, len(stats))
        else:
            a_fap = float(np.mean(fap))
            loads = tier_loads(scenario, a_fap * p_hit,
                               a_fap * (1.0 - p_hit), 1.0 - a_fap, p_hit)
            links = link_latencies(scenario, float(np.mean(miss)),
                                   1.0 - a_fap)
            offered = np.where(fap, loads.n_fap_hit, loads.n_rrh) \
                * xi * content
            effective = np.maximum(rates, offered + rate_floor)
            per_real = content / (effective - offered) \
                + links.d_back * miss + links.d_front * ~fap
            latency = _sample_mean(per_real)

    return MetricsReport(
        **common,
        success_probability=_proportion(sinr > delta),
        ergodic_rate=_sample_mean(rates),
        delivery_latency=latency,
        association={
            "fap": _proportion(fap),
            "rrh": _proportion(~fap),
            "fap_hit": _proportion(hit),
            "fap_miss": _proportion(miss),
        },
        tier_rates={
            "fap": _sample_mean(rates[fap]),
            "rrh": _sample_mean(rates[~fap]),
        },
        success_at={d: _proportion(sinr > d) for d in success_deltas},
    )


def _metrics_cluster(scenario: Scenario, stats: np.ndarray, radius: float,
                     delta: float, success_deltas: tuple[float, ...],
                     latency_mode: str, rate_floor: float,
                     compute_latency: bool, common: dict) -> MetricsReport:
    net = scenario.network
    fb = scenario.feedback
    t_f, t_r = stats[:, T_F], stats[:, T_R]
    fap = stats[:, R2_HIT0] <= radius * radius
    orphans = ~fap & np.isinf(stats[:, R2_R0])
    if orphans.any():
        raise EmptySceneError(
            f"realization {int(np.argmax(orphans))} has no caching F-AP "
            "within the cluster radius and no RRH to fall back to")
    w_hit0, w_r0 = stats[:, W_HIT0], stats[:, W_R0]
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = np.where(
            fap,
            w_hit0 / (t_f - w_hit0 + t_r + net.sigma2),
            fb.zeta * w_r0 / (t_f + fb.upsilon * (t_r - w_r0) + net.sigma2))
    rates = np.log1p(sinr) / LN2
    p_hit = hit_probability(scenario)
    content = scenario.cache.content_length
    xi = scenario.traffic.xi

    def latency_of(sl: slice) -> float:
        f = fap[sl]
        a_fap = float(np.mean(f))
        a_rrh = 1.0 - a_fap
        loads = tier_loads(scenario, a_fap, 0.0, a_rrh, p_hit)
        links = link_latencies(scenario, 0.0, a_rrh)
        total = 0.0
        if a_fap > 0.0:
            rate_f = float(np.mean(rates[sl][f]))
            total += a_fap * _queue("fap_hit", rate_f, loads.n_fap_hit,
                                    scenario)
        if a_rrh > 0.0:
            rate_r = float(np.mean(rates[sl][~f]))
            total += a_rrh * (_queue("rrh", rate_r, loads.n_rrh, scenario)
                              + links.d_front)
        return total

    latency = None
    if compute_latency:
        if latency_mode == "mean":
            latency = _latency_estimate(latency_of, len(stats))
        else:
            a_fap = float(np.mean(fap))
            loads = tier_loads(scenario, a_fap, 0.0, 1.0 - a_fap, p_hit)
            links = link_latencies(scenario, 0.0, 1.0 - a_fap)
            offered = np.where(fap, loads.n_fap_hit, loads.n_rrh) \
                * xi * content
            effective = np.maximum(rates, offered + rate_floor)
            per_real = content / (effective - offered) \
                + links.d_front * ~fap
            latency = _sample_mean(per_real)

    return MetricsReport(
        **common,
        success_probability=_proportion(sinr > delta),
        ergodic_rate=_sample_mean(rates),
        delivery_latency=latency,
        association={
            "fap": _proportion(fap),
            "rrh": _proportion(~fap),
        },
        tier_rates={
            "fap": _sample_mean(rates[fap]),
            "rrh": _sample_mean(rates[~fap]),
        },
        success_at={d: _proportion(sinr > d) for d in success_deltas},
    )


def _metrics_min_delay(scenario: Scenario, stats: np.ndarray,
                       thresholds: SinrThresholds | None,
                       mapping: ThresholdMapping, latency_mode: str,
                       rate_floor: float, compute_latency: bool,
                       common: dict) -> MetricsReport:
    """Minimal-delay estimates from per-class best-candidate indicators.

    Mirrors the analytical decomposition: a class contributes when its
    strongest candidate exceeds the class's deadline-derived SINR
    threshold, association fractions are the normalized class terms, and
    the rate sums the per-class best-candidate spectral efficiencies.
    """
    if thresholds is None:
        thresholds = solve_min_delay_operating_point(
            scenario, mapping).thresholds
    net = scenario.network
    fb = scenario.feedback
    t_f, t_r = stats[:, T_F], stats[:, T_R]
    w_hit = stats[:, W_HIT_MAX]
    w_miss = stats[:, W_MISS_MAX]
    w_rrh = stats[:, W_R_MAX]
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr_hit = w_hit / (t_f - w_hit + t_r + net.sigma2)
        sinr_miss = w_miss / (t_f - w_miss + t_r + net.sigma2)
        sinr_rrh_max = fb.zeta * w_rrh \
            / (t_f + fb.upsilon * (t_r - w_rrh) + net.sigma2)
    ind_hit = sinr_hit > thresholds.eta_fap_hit
    ind_miss = sinr_miss > thresholds.eta_fap_miss
    ind_rrh = sinr_rrh_max > thresholds.eta_rrh
    # Class rate contributions sum log2(1+SINR) over every candidate of
    # the class (the empirical analog of the expected-candidate-count
    # integral the analytic rate uses); the best-candidate rates below
    # drive the per-realization latency variant.
    rate_hit = stats[:, SUM_LOG_HIT] / LN2
    rate_miss = stats[:, SUM_LOG_MISS] / LN2
    rate_rrh = stats[:, SUM_LOG_RRH] / LN2
    rate_sum = rate_hit + rate_miss + rate_rrh
    best_rate_hit = np.log1p(sinr_hit) / LN2
    best_rate_miss = np.log1p(sinr_miss) / LN2
    best_rate_rrh = np.log1p(sinr_rrh_max) / LN2

    s_hit = _proportion(ind_hit)
    s_miss = _proportion(ind_miss)
    s_rrh = _proportion(ind_rrh)
    total = s_hit.value + s_miss.value + s_rrh.value
    if total > 0.0:
        # Normalized class shares; the denominator is treated as fixed,
        # so these standard errors are first-order only.
        association = {
            "fap_hit": EmpiricalEstimate(s_hit.value / total,
                                         s_hit.std_error / total, s_hit.n),
            "fap_miss": EmpiricalEstimate(s_miss.value / total,
                                          s_miss.std_error / total, s_miss.n),
            "rrh": EmpiricalEstimate(s_rrh.value / total,
                                     s_rrh.std_error / total, s_rrh.n),
        }
    else:
        association = {
            "fap_hit": EmpiricalEstimate(math.nan, math.nan, s_hit.n),
            "fap_miss": EmpiricalEstimate(math.nan, math.nan, s_miss.n),
            "rrh": EmpiricalEstimate(math.nan, math.nan, s_rrh.n),
        }
    p_hit = hit_probability(scenario)
    content = scenario.cache.content_length
    xi = scenario.traffic.xi

    def fractions_of(sl: slice) -> tuple[float, float, float]:
        parts = (float(np.mean(ind_hit[sl])), float(np.mean(ind_miss[sl])),
                 float(np.mean(ind_rrh[sl])))
        part_sum = parts[0] + parts[1] + parts[2]
        if part_sum <= 0.0:
            raise ValueError("no class met its threshold in this batch")
        return (parts[0] / part_sum, parts[1] / part_sum,
                parts[2] / part_sum)

    def latency_of(sl: slice) -> float:
        a_hit, a_miss, a_rrh = fractions_of(sl)
        loads = tier_loads(scenario, a_hit, a_miss, a_rrh, p_hit)
        links = link_latencies(scenario, a_miss, a_rrh)
        rate = float(np.mean(rate_sum[sl]))
        q_hit = _queue("fap_hit", rate, loads.n_fap_hit, scenario)
        q_miss = _queue("fap_miss", rate, loads.n_fap_miss, scenario)
        q_rrh = _queue("rrh", rate, loads.n_rrh, scenario)
        return (a_hit * q_hit + a_miss * (q_miss + links.d_back)
                + a_rrh * (q_rrh + links.d_front))

    latency = None
    if compute_latency:
        if latency_mode == "mean":
            latency = _latency_estimate(latency_of, len(stats))
        else:
            a_hit, a_miss, a_rrh = fractions_of(slice(0, len(stats)))
            loads = tier_loads(scenario, a_hit, a_miss, a_rrh, p_hit)
            links = link_latencies(scenario, a_miss, a_rrh)
            per_class = []
            for class_rates, n_users, link in (
                    (best_rate_hit, loads.n_fap_hit, 0.0),
                    (best_rate_miss, loads.n_fap_miss, links.d_back),
                    (best_rate_rrh, loads.n_rrh, links.d_front)):
                offered = n_users * xi * content
                effective = np.maximum(class_rates, offered + rate_floor)
                per_class.append(content / (effective - offered) + link)
            latency = _sample_mean(np.min(per_class, axis=0))

    return MetricsReport(
        **common,
        success_probability=_sample_mean(
            ind_hit.astype(float) + ind_miss + ind_rrh),
        ergodic_rate=_sample_mean(rate_sum),
        delivery_latency=latency,
        association=association,
        tier_rates={
            "fap_hit": _sample_mean(rate_hit),
            "fap_miss": _sample_mean(rate_miss),
            "rrh": _sample_mean(rate_rrh),
        },
        success_terms={"fap_hit": s_hit, "fap_miss": s_miss, "rrh": s_rrh},
    )
