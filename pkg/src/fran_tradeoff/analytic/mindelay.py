"""Metrics under minimal-delay association.

Instead of picking the strongest station, the user connects to whichever
station can deliver the content within its class deadline: cached F-APs
must finish within beta_fc, uncached F-APs within beta_ftc minus the
backhaul latency they incur, RRHs within beta_r minus the fronthaul
latency.  Inverting the per-station M/D/1 bound turns each deadline into
a spectral-efficiency target

    eta_i = N_i * xi * L + L / (beta_i - link latency),

used directly as an SINR threshold (or mapped through 2**eta - 1 when the
Shannon mapping is selected).  A station class then "wins" when some
station of that class exceeds its threshold; for thresholds above 1 (and
above zeta/upsilon for RRHs) at most one station in the whole network can
win, which makes the per-class success terms disjoint.

Class loads depend on the association split, and the split depends on the
thresholds, which depend on the loads; the operating point is resolved by
fixed-point iteration seeded from the max-RSRP split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import Scenario, ThresholdMapping
from ..numerics import (QuadratureSpec, ergodic_rate_integral,
                        interference_constant, semi_infinite_quadrature)
from .caching import hit_probability
from .maxrsrp import assoc_prob_max_rsrp
from .queueing import (LinkLatencies, StabilityError, TierLoads,
                       delivery_latency_bs, link_latencies, tier_loads)

__all__ = [
    "SinrThresholds",
    "SuccessTerms",
    "MinDelayOperatingPoint",
    "ThresholdAssumptionError",
    "DeadlineError",
    "ConvergenceError",
    "min_delay_thresholds",
    "success_prob_min_delay_general",
    "success_prob_min_delay_il",
    "assoc_prob_min_delay",
    "solve_min_delay_operating_point",
    "ergodic_rate_min_delay",
    "avg_delivery_latency_min_delay",
    "MinDelayLatencyReport",
]


class ThresholdAssumptionError(ArithmeticError):
    """Thresholds too low for the disjoint-winner argument.

    The per-class success terms partition the success event only when
    eta_fap_hit > 1, eta_fap_miss > 1 and eta_rrh > zeta / upsilon;
    below these bounds several stations can exceed their class threshold
    simultaneously and the summed terms double-count.
    """


class DeadlineError(ValueError):
    """A class deadline is not positive after subtracting link latency."""


class ConvergenceError(ArithmeticError):
    """The association/load fixed point did not converge."""


@dataclass(frozen=True)
class SinrThresholds:
    """Per-class SINR thresholds (cached F-AP, uncached F-AP, RRH)."""

    eta_fap_hit: float
    eta_fap_miss: float
    eta_rrh: float


@dataclass(frozen=True)
class SuccessTerms:
    """Per-class success terms; their sum is the coverage probability."""

    s_fap_hit: float
    s_fap_miss: float
    s_rrh: float

    @property
    def total(self) -> float:
        return self.s_fap_hit + self.s_fap_miss + self.s_rrh


def min_delay_thresholds(scenario: Scenario, loads: TierLoads,
                         links: LinkLatencies,
                         mapping: ThresholdMapping = ThresholdMapping.DIRECT
                         ) -> SinrThresholds:
    """Spectral-efficiency targets implied by the class deadlines.

    A station of class i meets its deadline when its rate exceeds
    N_i*xi*L + L/(effective deadline); classes reached through a
    transport link first lose that link's latency from their deadline.
    Raises :class:`DeadlineError` when a deadline does not survive the
    subtraction.
    """
    traffic = scenario.traffic
    content = scenario.cache.content_length
    slack_miss = traffic.beta_ftc - links.d_back
    slack_rrh = traffic.beta_r - links.d_front
    problems = []
    if traffic.beta_fc <= 0:
        problems.append("beta_fc must be positive")
    if slack_miss <= 0:
        problems.append(
            f"beta_ftc ({traffic.beta_ftc:.6g}) does not exceed the "
            f"backhaul latency ({links.d_back:.6g})")
    if slack_rrh <= 0:
        problems.append(
            f"beta_r ({traffic.beta_r:.6g}) does not exceed the "
            f"fronthaul latency ({links.d_front:.6g})")
    if problems:
        raise DeadlineError("; ".join(problems))

    def target(n_users: float, slack: float) -> float:
        eta = n_users * traffic.xi * content + content / slack
        if mapping is ThresholdMapping.SHANNON:
            return 2.0 ** eta - 1.0
        return eta

    return SinrThresholds(
        eta_fap_hit=target(loads.n_fap_hit, traffic.beta_fc),
        eta_fap_miss=target(loads.n_fap_miss, slack_miss),
        eta_rrh=target(loads.n_rrh, slack_rrh),
    )


def check_threshold_assumptions(scenario: Scenario,
                                thresholds: SinrThresholds) -> list[str]:
    """Return the list of violated disjoint-winner conditions."""
    fb = scenario.feedback
    bound_rrh = fb.zeta / fb.upsilon
    violations = []
    if thresholds.eta_fap_hit <= 1.0:
        violations.append(
            f"eta_fap_hit ({thresholds.eta_fap_hit:.6g}) must exceed 1")
    if thresholds.eta_fap_miss <= 1.0:
        violations.append(
            f"eta_fap_miss ({thresholds.eta_fap_miss:.6g}) must exceed 1")
    if thresholds.eta_rrh <= bound_rrh:
        violations.append(
            f"eta_rrh ({thresholds.eta_rrh:.6g}) must exceed "
            f"zeta/upsilon ({bound_rrh:.6g})")
    return violations


def _class_densities(scenario: Scenario, p_hit: float):
    net = scenario.network
    return p_hit * net.lambda_f, (1.0 - p_hit) * net.lambda_f, net.lambda_r


def success_prob_min_delay_il(scenario: Scenario, thresholds: SinrThresholds,
                              p_hit: float | None = None,
                              check_assumptions: bool = True) -> SuccessTerms:
    """Per-class success terms, interference-limited closed form.

    Each term is lambda_class * (signal power)^(2/alpha) * eta^(-2/alpha)
    divided by C(alpha) times the power-weighted interferer density seen
    by that class.  RRH candidates carry the feedback factor zeta on the
    signal and upsilon on same-tier interference.
    """
    if p_hit is None:
        p_hit = hit_probability(scenario)
    if check_assumptions:
        violations = check_threshold_assumptions(scenario, thresholds)
        if violations:
            raise ThresholdAssumptionError(
                "disjoint-winner conditions violated (summed class terms "
                "would double-count): " + "; ".join(violations))
    net = scenario.network
    fb = scenario.feedback
    alpha = net.alpha
    c_alpha = interference_constant(alpha)
    lam_hit, lam_miss, lam_rrh = _class_densities(scenario, p_hit)
    two_over_alpha = 2.0 / alpha

    pf_w = net.p_f ** two_over_alpha
    pr_w = net.p_r ** two_over_alpha
    # Interferer mix seen by F-AP candidates (plain powers) and by RRH
    # candidates (same-tier interference scaled by upsilon).
    mix_fap = net.lambda_f * pf_w + net.lambda_r * pr_w
    mix_rrh = net.lambda_f * pf_w + net.lambda_r * (fb.upsilon * net.p_r) ** two_over_alpha

    def term(lam: float, signal_power: float, eta: float, mix: float) -> float:
        if eta <= 0:
            raise ValueError("thresholds must be positive")
        return (lam * signal_power ** two_over_alpha * eta ** (-two_over_alpha)
                / (c_alpha * mix))

    return SuccessTerms(
        s_fap_hit=term(lam_hit, net.p_f, thresholds.eta_fap_hit, mix_fap),
        s_fap_miss=term(lam_miss, net.p_f, thresholds.eta_fap_miss, mix_fap),
        s_rrh=term(lam_rrh, fb.zeta * net.p_r, thresholds.eta_rrh, mix_rrh),
    )


def success_prob_min_delay_general(scenario: Scenario,
                                   thresholds: SinrThresholds,
                                   p_hit: float | None = None,
                                   noise_model: str = "per_tier",
                                   check_assumptions: bool = True,
                                   spec: QuadratureSpec | None = None
                                   ) -> SuccessTerms:
    """Per-class success terms with thermal noise, by radial quadrature.

    Each class contributes 2*pi*lambda_class * int r * exp(-eta*sigma2*
    r^alpha / signal) * exp(-pi r^2 * G) dr, where G collects the
    power-weighted interferer densities.  ``noise_model`` selects how the
    noise exponent is scaled: ``per_tier`` uses each class's own signal
    power (F-AP classes P_F, RRH class zeta*P_R); ``literal`` applies the
    RRH scaling zeta*P_R to every class, reproducing the source
    formulation this model is compatible with.  With sigma2 = 0 both
    reduce exactly to the interference-limited closed form.
    """
    if noise_model not in ("per_tier", "literal"):
        raise ValueError("noise_model must be 'per_tier' or 'literal'")
    if p_hit is None:
        p_hit = hit_probability(scenario)
    if check_assumptions:
        violations = check_threshold_assumptions(scenario, thresholds)
        if violations:
            raise ThresholdAssumptionError(
                "disjoint-winner conditions violated (summed class terms "
                "would double-count): " + "; ".join(violations))
    net = scenario.network
    fb = scenario.feedback
    alpha = net.alpha
    c_alpha = interference_constant(alpha)
    two_over_alpha = 2.0 / alpha
    lam_hit, lam_miss, lam_rrh = _class_densities(scenario, p_hit)

    def term(lam: float, signal_power: float, eta: float,
             interferers) -> float:
        if eta <= 0:
            raise ValueError("thresholds must be positive")
        # interferers: iterable of (density, effective power) pairs.
        g = c_alpha * sum(
            dens * (eta * power / signal_power) ** two_over_alpha
            for dens, power in interferers)
        if net.sigma2 == 0.0:
            return lam / g
        noise_power = signal_power if noise_model == "per_tier" \
            else fb.zeta * net.p_r
        noise_scale = eta * net.sigma2 / noise_power

        def integrand(r: float) -> float:
            return r * math.exp(-noise_scale * r ** alpha
                                - math.pi * g * r * r)

        return 2.0 * math.pi * lam * semi_infinite_quadrature(integrand,
                                                              spec=spec)

    fap_interferers = ((net.lambda_f, net.p_f), (net.lambda_r, net.p_r))
    rrh_interferers = ((net.lambda_f, net.p_f),
                       (net.lambda_r, fb.upsilon * net.p_r))
    return SuccessTerms(
        s_fap_hit=term(lam_hit, net.p_f, thresholds.eta_fap_hit,
                       fap_interferers),
        s_fap_miss=term(lam_miss, net.p_f, thresholds.eta_fap_miss,
                        fap_interferers),
        s_rrh=term(lam_rrh, fb.zeta * net.p_r, thresholds.eta_rrh,
                   rrh_interferers),
    )


def assoc_prob_min_delay(terms: SuccessTerms) -> tuple[float, float, float]:
    """Class association probabilities: success-term shares, normalized."""
    total = terms.total
    if total <= 0:
        raise ValueError("success terms must have positive total")
    return (terms.s_fap_hit / total, terms.s_fap_miss / total,
            terms.s_rrh / total)


@dataclass(frozen=True)
class MinDelayOperatingPoint:
    """Converged association split with its loads, links, and thresholds."""

    assoc_fap_hit: float
    assoc_fap_miss: float
    assoc_rrh: float
    loads: TierLoads
    links: LinkLatencies
    thresholds: SinrThresholds
    terms: SuccessTerms
    p_hit: float
    iterations: int


def solve_min_delay_operating_point(
        scenario: Scenario,
        mapping: ThresholdMapping = ThresholdMapping.DIRECT,
        tol: float = 1e-9,
        max_iterations: int = 200) -> MinDelayOperatingPoint:
    """Fixed point of the association/load/threshold loop.

    Starting from the max-RSRP split, alternates: loads from the split,
    link latencies from the split, thresholds from loads and links,
    success terms from thresholds, new split from the terms.  Stops when
    the split moves less than ``tol`` in max norm.
    """
    p_hit = hit_probability(scenario)
    a_fap, a_rrh = assoc_prob_max_rsrp(scenario)
    split = (a_fap * p_hit, a_fap * (1.0 - p_hit), a_rrh)
    loads = links = thresholds = terms = None
    for iteration in range(1, max_iterations + 1):
        loads = tier_loads(scenario, *split, p_hit)
        links = link_latencies(scenario, split[1], split[2])
        thresholds = min_delay_thresholds(scenario, loads, links, mapping)
        terms = success_prob_min_delay_il(scenario, thresholds, p_hit)
        new_split = assoc_prob_min_delay(terms)
        shift = max(abs(n - o) for n, o in zip(new_split, split))
        split = new_split
        if shift < tol:
            # One consistent pass at the converged split.
            loads = tier_loads(scenario, *split, p_hit)
            links = link_latencies(scenario, split[1], split[2])
            thresholds = min_delay_thresholds(scenario, loads, links, mapping)
            terms = success_prob_min_delay_il(scenario, thresholds, p_hit)
            return MinDelayOperatingPoint(
                assoc_fap_hit=split[0], assoc_fap_miss=split[1],
                assoc_rrh=split[2], loads=loads, links=links,
                thresholds=thresholds, terms=terms, p_hit=p_hit,
                iterations=iteration)
    raise ConvergenceError(
        f"association fixed point did not converge within "
        f"{max_iterations} iterations (last shift {shift:.3g})")


def ergodic_rate_min_delay(scenario: Scenario,
                           operating_point: MinDelayOperatingPoint | None = None,
                           clamp_integrand: bool = False,
                           spec: QuadratureSpec | None = None) -> float:
    """Mean spectral efficiency when the best candidate station serves.

    Integrates the summed class terms with a common threshold 2^t - 1
    over t.  The closed form is an expected candidate count, not a true
    probability, and exceeds one near t = 0; it is integrated as written
    for compatibility with the analytical model (``clamp_integrand=True``
    caps it at one, giving a strict lower variant).
    """
    p_hit = hit_probability(scenario)

    def success_at(eta: float) -> float:
        if eta <= 0.0:
            return 1.0
        common = SinrThresholds(eta, eta, eta)
        value = success_prob_min_delay_il(
            scenario, common, p_hit, check_assumptions=False).total
        return min(1.0, value) if clamp_integrand else value

    return ergodic_rate_integral(success_at, spec=spec)


@dataclass(frozen=True)
class MinDelayLatencyReport:
    """Average delivery latency and components under minimal-delay rule."""

    total: float
    queue_fap_hit: float
    queue_fap_miss: float
    queue_rrh: float
    rate: float
    operating_point: MinDelayOperatingPoint


def avg_delivery_latency_min_delay(
        scenario: Scenario,
        mapping: ThresholdMapping = ThresholdMapping.DIRECT,
        spec: QuadratureSpec | None = None) -> MinDelayLatencyReport:
    """Mean delivery latency at the converged minimal-delay operating point.

    All classes share the common-threshold ergodic rate (their
    conditional rate curves coincide), so the class queues differ only
    through their loads; uncached F-AP service adds the backhaul latency
    and RRH service the fronthaul latency.
    """
    op = solve_min_delay_operating_point(scenario, mapping=mapping)
    rate = ergodic_rate_min_delay(scenario, op, spec=spec)
    traffic = scenario.traffic
    content = scenario.cache.content_length

    def queue(name: str, n_users: float) -> float:
        try:
            return delivery_latency_bs(rate, n_users, traffic.xi, content)
        except StabilityError as err:
            raise StabilityError(name, err.rate, err.offered) from None

    q_hit = queue("fap_hit", op.loads.n_fap_hit)
    q_miss = queue("fap_miss", op.loads.n_fap_miss)
    q_rrh = queue("rrh", op.loads.n_rrh)
    total = (op.assoc_fap_hit * q_hit
             + op.assoc_fap_miss * (q_miss + op.links.d_back)
             + op.assoc_rrh * (q_rrh + op.links.d_front))
    return MinDelayLatencyReport(total=total, queue_fap_hit=q_hit,
                                 queue_fap_miss=q_miss, queue_rrh=q_rrh,
                                 rate=rate, operating_point=op)
