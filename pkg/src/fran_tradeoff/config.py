"""Scenario configuration: domain types, validation, and the INI loader.

A scenario bundles the network geometry (two independent Poisson fields of
fog access points and remote radio heads on the plane), the caching setup
at the F-AP tier, and the traffic/fronthaul parameters.  All validation
funnels through :func:`validate_config`, which returns *every* violated
constraint rather than stopping at the first.
"""

from __future__ import annotations

import configparser
import enum
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .numerics import FeedbackCoefficients, feedback_coeffs

__all__ = [
    "ConfigError",
    "Placement",
    "ThresholdMapping",
    "NetworkConfig",
    "CacheConfig",
    "TrafficConfig",
    "SimulationConfig",
    "Scenario",
    "dbm_to_watts",
    "watts_to_dbm",
    "derive_k",
    "validate_config",
    "load_config",
    "default_scenario",
]


class ConfigError(ValueError):
    """Invalid configuration; ``violations`` lists every failed constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class Placement(enum.Enum):
    """How contents are placed in F-AP caches."""

    MOST_POPULAR = "most_popular"
    INDEPENDENT_THINNING = "independent_thinning"


class ThresholdMapping(enum.Enum):
    """How per-tier delay deadlines map to SINR thresholds.

    DIRECT uses the spectral-efficiency target eta itself as the SINR
    threshold; SHANNON inverts the rate curve, using 2**eta - 1.
    """

    DIRECT = "direct"
    SHANNON = "shannon"


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def watts_to_dbm(watts: float) -> float:
    if watts <= 0:
        raise ValueError("power must be positive")
    return 10.0 * math.log10(watts / 1e-3)


@dataclass(frozen=True)
class NetworkConfig:
    """Two-tier plane geometry and radio parameters.

    Densities are per square metre, powers in watts, ``sigma2`` is noise
    power normalized to the same unit as received power (0 selects the
    interference-limited regime), and ``disc_radius`` (metres) bounds the
    simulated region.
    """

    lambda_r: float
    lambda_f: float
    p_r: float
    p_f: float
    alpha: float
    sigma2: float = 0.0
    disc_radius: float = 5000.0

    @classmethod
    def from_dbm(cls, lambda_r, lambda_f, p_r_dbm, p_f_dbm, alpha,
                 sigma2=0.0, disc_radius=5000.0) -> "NetworkConfig":
        return cls(lambda_r=lambda_r, lambda_f=lambda_f,
                   p_r=dbm_to_watts(p_r_dbm), p_f=dbm_to_watts(p_f_dbm),
                   alpha=alpha, sigma2=sigma2, disc_radius=disc_radius)


@dataclass(frozen=True)
class CacheConfig:
    """F-AP cache setup and the Zipf request model.

    ``catalog_size`` contents of ``content_length`` bits each; every F-AP
    stores ``cached_count`` of them (cache capacity in bits is therefore
    cached_count * content_length).
    """

    catalog_size: int
    content_length: float
    cached_count: int
    zipf_tau: float
    placement: Placement = Placement.MOST_POPULAR

    @property
    def cache_size(self) -> float:
        return self.cached_count * self.content_length


@dataclass(frozen=True)
class TrafficConfig:
    """User traffic, transport-link coefficients, and delay deadlines.

    ``xi`` is the per-user request rate; ``d`` converts aggregate carried
    traffic on a transport link into that link's latency.  ``beta_*`` are
    the per-tier delivery deadlines used by the minimal-delay association
    rule (cached F-AP / uncached F-AP / RRH).  The optional overrides pin
    the fronthaul and backhaul link latencies directly instead of deriving
    them from aggregate traffic over the simulated disc.
    """

    lambda_u: float
    xi: float
    d: float
    beta_fc: float
    beta_ftc: float
    beta_r: float
    feedback_bits: int = 4
    antennas: int = 4
    d_front_override: float | None = None
    d_back_override: float | None = None


@dataclass(frozen=True)
class SimulationConfig:
    """Monte Carlo execution parameters."""

    realizations: int = 20000
    seed: int = 1
    workers: int = 1


@dataclass(frozen=True)
class Scenario:
    network: NetworkConfig
    cache: CacheConfig
    traffic: TrafficConfig

    @property
    def k(self) -> float:
        """RRH-tier association bias (P_R / P_F)^(1/alpha), below 1."""
        return derive_k(self.network.p_r, self.network.p_f, self.network.alpha)

    @property
    def feedback(self) -> FeedbackCoefficients:
        return feedback_coeffs(self.traffic.feedback_bits,
                               self.traffic.antennas)

    def replace(self, **kwargs) -> "Scenario":
        """Copy with updated sub-configs (network=, cache=, traffic=)."""
        return replace(self, **kwargs)


def derive_k(p_r: float, p_f: float, alpha: float) -> float:
    """Distance bias (P_R / P_F)^(1/alpha) of the low-power tier.

    The model assumes RRHs transmit at lower power than F-APs, so k < 1.
    """
    violations = []
    if p_r <= 0 or p_f <= 0:
        violations.append("transmit powers must be positive")
    if alpha <= 2:
        violations.append("alpha must exceed 2")
    if not violations and p_r >= p_f:
        violations.append("p_r must be below p_f (the RRH tier is the low-power tier)")
    if violations:
        raise ConfigError(violations)
    return (p_r / p_f) ** (1.0 / alpha)


def validate_config(network: NetworkConfig, cache: CacheConfig,
                    traffic: TrafficConfig) -> list[str]:
    """Collect every constraint violation; an empty list means valid."""
    v = []
    if network.lambda_r <= 0:
        v.append("lambda_r must be positive")
    if network.lambda_f <= 0:
        v.append("lambda_f must be positive")
    if network.p_r <= 0:
        v.append("p_r must be positive")
    if network.p_f <= 0:
        v.append("p_f must be positive")
    if network.p_r > 0 and network.p_f > 0 and network.p_r >= network.p_f:
        v.append("p_r must be below p_f (the RRH tier is the low-power tier)")
    if network.alpha <= 2:
        v.append("alpha must exceed 2")
    if network.sigma2 < 0:
        v.append("sigma2 must be nonnegative")
    if network.disc_radius <= 0:
        v.append("disc_radius must be positive")

    if cache.catalog_size < 1:
        v.append("catalog_size must be at least 1")
    if cache.content_length <= 0:
        v.append("content_length must be positive")
    if cache.cached_count < 0:
        v.append("cached_count must be nonnegative")
    if cache.cached_count > cache.catalog_size:
        v.append("cached_count exceeds catalog")
    if cache.zipf_tau < 0:
        v.append("zipf_tau must be nonnegative")

    if traffic.lambda_u <= 0:
        v.append("lambda_u must be positive")
    if traffic.xi <= 0:
        v.append("xi must be positive")
    if traffic.d < 0:
        v.append("d must be nonnegative")
    for name in ("beta_fc", "beta_ftc", "beta_r"):
        if getattr(traffic, name) <= 0:
            v.append(f"{name} must be positive")
    if traffic.feedback_bits < 0:
        v.append("feedback_bits must be nonnegative")
    if traffic.antennas < 2:
        v.append("antennas must be at least 2")
    for name in ("d_front_override", "d_back_override"):
        value = getattr(traffic, name)
        if value is not None and value < 0:
            v.append(f"{name} must be nonnegative")
    return v


def validate_scenario(scenario: Scenario) -> list[str]:
    return validate_config(scenario.network, scenario.cache, scenario.traffic)


def check_scenario(scenario: Scenario) -> Scenario:
    """Raise :class:`ConfigError` if the scenario violates any constraint."""
    violations = validate_scenario(scenario)
    if violations:
        raise ConfigError(violations)
    return scenario


# --- INI config file ------------------------------------------------------
#
# Sections and keys are a closed set: unknown sections or keys are
# configuration errors, so typos fail loudly instead of being ignored.

_NETWORK_KEYS = {"lambda_r", "lambda_f", "p_r_dbm", "p_f_dbm", "p_r_watts",
                 "p_f_watts", "alpha", "sigma2", "disc_radius"}
_CACHE_KEYS = {"catalog_size", "content_length", "cached_count", "zipf_tau",
               "placement"}
_TRAFFIC_KEYS = {"lambda_u", "xi", "d", "beta_fc", "beta_ftc", "beta_r",
                 "feedback_bits", "antennas", "d_front_override",
                 "d_back_override"}
_SIMULATION_KEYS = {"realizations", "seed", "workers"}
_SECTIONS = {"network": _NETWORK_KEYS, "cache": _CACHE_KEYS,
             "traffic": _TRAFFIC_KEYS, "simulation": _SIMULATION_KEYS}


def _power_watts(section, tier: str, violations) -> float:
    dbm_key, watts_key = f"p_{tier}_dbm", f"p_{tier}_watts"
    has_dbm, has_watts = dbm_key in section, watts_key in section
    if has_dbm and has_watts:
        violations.append(f"specify exactly one of {dbm_key} and {watts_key}")
        return math.nan
    if has_dbm:
        return dbm_to_watts(section.getfloat(dbm_key))
    if has_watts:
        return section.getfloat(watts_key)
    violations.append(f"missing {dbm_key} or {watts_key} in [network]")
    return math.nan


def load_config(path: str | Path) -> tuple[Scenario, SimulationConfig]:
    """Parse an INI scenario file and validate it.

    Expected sections: [network], [cache], [traffic], and an optional
    [simulation].  Raises :class:`ConfigError` with the full violation
    list on any problem (unknown keys included).
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError([f"config file not found: {path}"])

    violations = []
    for section in parser.sections():
        if section not in _SECTIONS:
            violations.append(f"unknown section [{section}]")
            continue
        unknown = set(parser[section]) - _SECTIONS[section]
        for key in sorted(unknown):
            violations.append(f"unknown key '{key}' in [{section}]")
    for section in ("network", "cache", "traffic"):
        if section not in parser:
            violations.append(f"missing section [{section}]")
    if violations:
        raise ConfigError(violations)

    try:
        net_sec, cache_sec, traffic_sec = (parser["network"], parser["cache"],
                                           parser["traffic"])
        network = NetworkConfig(
            lambda_r=net_sec.getfloat("lambda_r"),
            lambda_f=net_sec.getfloat("lambda_f"),
            p_r=_power_watts(net_sec, "r", violations),
            p_f=_power_watts(net_sec, "f", violations),
            alpha=net_sec.getfloat("alpha"),
            sigma2=net_sec.getfloat("sigma2", fallback=0.0),
            disc_radius=net_sec.getfloat("disc_radius", fallback=5000.0),
        )
        placement_raw = cache_sec.get("placement", fallback="most_popular")
        try:
            placement = Placement(placement_raw)
        except ValueError:
            violations.append(
                f"placement must be one of "
                f"{[p.value for p in Placement]}, got '{placement_raw}'")
            placement = Placement.MOST_POPULAR
        cache = CacheConfig(
            catalog_size=cache_sec.getint("catalog_size"),
            content_length=cache_sec.getfloat("content_length"),
            cached_count=cache_sec.getint("cached_count"),
            zipf_tau=cache_sec.getfloat("zipf_tau"),
            placement=placement,
        )
        traffic = TrafficConfig(
            lambda_u=traffic_sec.getfloat("lambda_u"),
            xi=traffic_sec.getfloat("xi"),
            d=traffic_sec.getfloat("d"),
            beta_fc=traffic_sec.getfloat("beta_fc"),
            beta_ftc=traffic_sec.getfloat("beta_ftc"),
            beta_r=traffic_sec.getfloat("beta_r"),
            feedback_bits=traffic_sec.getint("feedback_bits", fallback=4),
            antennas=traffic_sec.getint("antennas", fallback=4),
            d_front_override=traffic_sec.getfloat("d_front_override",
                                                  fallback=None),
            d_back_override=traffic_sec.getfloat("d_back_override",
                                                 fallback=None),
        )
        sim_sec = parser["simulation"] if "simulation" in parser else {}
        simulation = SimulationConfig(
            realizations=int(sim_sec.get("realizations", 20000)),
            seed=int(sim_sec.get("seed", 1)),
            workers=int(sim_sec.get("workers", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(violations + [f"malformed value: {exc}"]) from exc

    violations.extend(validate_config(network, cache, traffic))
    if simulation.realizations < 1:
        violations.append("realizations must be at least 1")
    if simulation.workers < 1:
        violations.append("workers must be at least 1")
    if violations:
        raise ConfigError(violations)
    return Scenario(network=network, cache=cache, traffic=traffic), simulation


def default_scenario() -> Scenario:
    """Reference scenario used throughout the tests and as CLI fallback.

    Matches the evaluation setup: RRH density 2e-4 /m^2, F-AP density
    2e-5 /m^2, 23/43 dBm transmit powers, alpha 4, a 50-content catalog
    of 2-bit contents with half cached, unit Zipf exponent, user density
    4e-3 /m^2 and request rate 5e-3.
    """
    network = NetworkConfig.from_dbm(
        lambda_r=2e-4, lambda_f=2e-5, p_r_dbm=23.0, p_f_dbm=43.0,
        alpha=4.0, sigma2=0.0, disc_radius=5000.0)
    cache = CacheConfig(catalog_size=50, content_length=2.0, cached_count=25,
                        zipf_tau=1.0, placement=Placement.MOST_POPULAR)
    traffic = TrafficConfig(lambda_u=4e-3, xi=5e-3, d=0.5,
                            beta_fc=1.0, beta_ftc=1.5, beta_r=1.5,
                            feedback_bits=4, antennas=4,
                            d_front_override=0.6, d_back_override=0.3)
    return Scenario(network=network, cache=cache, traffic=traffic)
