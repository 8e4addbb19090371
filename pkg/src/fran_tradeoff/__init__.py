"""Cache-enabled two-tier fog radio access network tradeoff analysis.

The model places fog access points (F-APs, high power, edge caches) and
remote radio heads (RRHs, low power, fronthauled to a cloud processor) as
independent Poisson fields on the plane and evaluates, for the typical
user, the success-delivery probability, the average ergodic rate, and the
average content-delivery latency under two association rules: biased
maximum received power and minimal delivery delay.  Analytical
expressions are validated by a seeded Monte Carlo simulator over finite
disc realizations.
"""

from .config import (
    CacheConfig,
    ConfigError,
    NetworkConfig,
    Placement,
    Scenario,
    SimulationConfig,
    ThresholdMapping,
    TrafficConfig,
    default_scenario,
    derive_k,
    load_config,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "CacheConfig",
    "ConfigError",
    "NetworkConfig",
    "Placement",
    "Scenario",
    "SimulationConfig",
    "ThresholdMapping",
    "TrafficConfig",
    "default_scenario",
    "derive_k",
    "load_config",
    "validate_config",
    "__version__",
]
