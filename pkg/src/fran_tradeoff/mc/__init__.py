"""Monte Carlo validation layer: scene sampling, kernels, estimation."""

from .engine import (AssociationPolicy, EmpiricalEstimate, EmptySceneError,
                     MetricsReport, PolicyVariant, associate,
                     estimate_metrics, per_bs_loads, simulate_batch,
                     sinr_fap, sinr_rrh)
from .kernels import active_kernel_name, available_kernels, get_kernel
from .sampling import (Realization, StreamPurpose, realization_rng,
                       sample_ppp, sample_realization, sample_users)

__all__ = [
    "AssociationPolicy",
    "EmpiricalEstimate",
    "EmptySceneError",
    "MetricsReport",
    "PolicyVariant",
    "Realization",
    "StreamPurpose",
    "active_kernel_name",
    "associate",
    "available_kernels",
    "estimate_metrics",
    "get_kernel",
    "per_bs_loads",
    "realization_rng",
    "sample_ppp",
    "sample_realization",
    "sample_users",
    "simulate_batch",
    "sinr_fap",
    "sinr_rrh",
]
