"""NumPy reduction kernel (fallback for the compiled extension).

Reduces one realization to the scalar statistics every association policy
needs.  The arithmetic mirrors the compiled kernel expression for
expression: received powers via ``power * fading * r2 ** (-alpha/2)``,
totals as sequential sums, so both kernels produce near-identical results
on identical inputs (elementwise ``pow``/``log1p`` may differ from libm
by an ulp).
"""

from __future__ import annotations

import math

import numpy as np

KERNEL_NAME = "numpy"


def _seq_sum(values: np.ndarray) -> float:
    return float(np.cumsum(values)[-1]) if len(values) else 0.0


def reduce_realization(r2_f, h_f, marks, r2_r, h_r, p_f, p_r, alpha,
                       sigma2, zeta, upsilon):
    """Scalar statistics of one scene, as seen from the origin.

    Returns (t_f, t_r, r2_f0, w_f0, r2_r0, w_r0, r2_hit0, w_hit0,
    w_hit_max, w_miss_max, w_r_max, sum_log_hit, sum_log_miss,
    sum_log_rrh): total received power per tier; nearest-station squared
    distance and received power per tier; the same for the nearest
    cache-hit F-AP; the best received power per candidate class (hit
    F-APs, miss F-APs, RRHs); and the per-class sums of ln(1 + SINR)
    over every station of the class (each station treated as the serving
    candidate, RRHs with the feedback scaling).  Empty classes yield
    distance inf, power 0, and sum 0.
    """
    if alpha == 4.0:
        # Reference path-loss exponent: skip pow, like the compiled kernel.
        w_f = p_f * h_f / (r2_f * r2_f)
        w_r = p_r * h_r / (r2_r * r2_r)
    else:
        exponent = -0.5 * alpha
        w_f = p_f * h_f * np.power(r2_f, exponent)
        w_r = p_r * h_r * np.power(r2_r, exponent)
    # Sequential (cumulative) sums keep the accumulation order identical
    # to the compiled kernel's loop.
    t_f = _seq_sum(w_f)
    t_r = _seq_sum(w_r)

    if len(r2_f):
        i0 = int(np.argmin(r2_f))
        r2_f0, w_f0 = float(r2_f[i0]), float(w_f[i0])
    else:
        r2_f0, w_f0 = math.inf, 0.0
    if len(r2_r):
        j0 = int(np.argmin(r2_r))
        r2_r0, w_r0 = float(r2_r[j0]), float(w_r[j0])
    else:
        r2_r0, w_r0 = math.inf, 0.0

    hit = marks.astype(bool)
    if hit.any():
        r2_hit = r2_f[hit]
        k0 = int(np.argmin(r2_hit))
        r2_hit0, w_hit0 = float(r2_hit[k0]), float(w_f[hit][k0])
        w_hit_max = float(w_f[hit].max())
    else:
        r2_hit0, w_hit0, w_hit_max = math.inf, 0.0, 0.0
    miss = ~hit
    w_miss_max = float(w_f[miss].max()) if miss.any() else 0.0
    w_r_max = float(w_r.max()) if len(w_r) else 0.0

    # A lone candidate with zero noise has infinite SINR; inf is the
    # intended result (the compiled kernel returns it without fuss).
    with np.errstate(divide="ignore"):
        if len(w_f):
            log_f = np.log1p(w_f / ((t_f - w_f) + t_r + sigma2))
            sum_log_hit = _seq_sum(log_f[hit])
            sum_log_miss = _seq_sum(log_f[miss])
        else:
            sum_log_hit = sum_log_miss = 0.0
        if len(w_r):
            sum_log_rrh = _seq_sum(
                np.log1p(zeta * w_r / (t_f + upsilon * (t_r - w_r) + sigma2)))
        else:
            sum_log_rrh = 0.0

    return (t_f, t_r, r2_f0, w_f0, r2_r0, w_r0, r2_hit0, w_hit0,
            w_hit_max, w_miss_max, w_r_max,
            sum_log_hit, sum_log_miss, sum_log_rrh)
