"""Compiled reduction kernel: two passes over each tier's stations.

Mirrors the arithmetic of the NumPy fallback (libm pow/log1p per
element, sequential accumulation) so both kernels agree on identical
inputs to within an ulp per element.
"""

from libc.math cimport HUGE_VAL, log1p, pow

import numpy as np

cimport numpy as cnp

cnp.import_array()

KERNEL_NAME = "cython"


def reduce_realization(cnp.float64_t[::1] r2_f not None,
                       cnp.float64_t[::1] h_f not None,
                       cnp.uint8_t[::1] marks not None,
                       cnp.float64_t[::1] r2_r not None,
                       cnp.float64_t[::1] h_r not None,
                       double p_f, double p_r, double alpha,
                       double sigma2, double zeta, double upsilon):
    """Scalar statistics of one scene; see the NumPy kernel docstring."""
    cdef Py_ssize_t n_f = r2_f.shape[0]
    cdef Py_ssize_t n_r = r2_r.shape[0]
    cdef double exponent = -0.5 * alpha
    cdef double t_f = 0.0, t_r = 0.0
    cdef double r2_f0 = HUGE_VAL, w_f0 = 0.0
    cdef double r2_r0 = HUGE_VAL, w_r0 = 0.0
    cdef double r2_hit0 = HUGE_VAL, w_hit0 = 0.0
    cdef double w_hit_max = 0.0, w_miss_max = 0.0, w_r_max = 0.0
    cdef double sum_log_hit = 0.0, sum_log_miss = 0.0, sum_log_rrh = 0.0
    cdef double w
    cdef Py_ssize_t i
    # alpha = 4 (the reference configuration) avoids libm pow entirely;
    # the NumPy kernel takes the same branch so parity stays at ulp level.
    cdef bint inverse_square = alpha == 4.0
    cdef cnp.float64_t[::1] wf_buf = np.empty(n_f, dtype=np.float64)
    cdef cnp.float64_t[::1] wr_buf = np.empty(n_r, dtype=np.float64)

    for i in range(n_f):
        if inverse_square:
            w = p_f * h_f[i] / (r2_f[i] * r2_f[i])
        else:
            w = p_f * h_f[i] * pow(r2_f[i], exponent)
        wf_buf[i] = w
        t_f += w
        if r2_f[i] < r2_f0:
            r2_f0 = r2_f[i]
            w_f0 = w
        if marks[i]:
            if r2_f[i] < r2_hit0:
                r2_hit0 = r2_f[i]
                w_hit0 = w
            if w > w_hit_max:
                w_hit_max = w
        else:
            if w > w_miss_max:
                w_miss_max = w

    for i in range(n_r):
        if inverse_square:
            w = p_r * h_r[i] / (r2_r[i] * r2_r[i])
        else:
            w = p_r * h_r[i] * pow(r2_r[i], exponent)
        wr_buf[i] = w
        t_r += w
        if r2_r[i] < r2_r0:
            r2_r0 = r2_r[i]
            w_r0 = w
        if w > w_r_max:
            w_r_max = w

    for i in range(n_f):
        w = wf_buf[i]
        if marks[i]:
            sum_log_hit += log1p(w / ((t_f - w) + t_r + sigma2))
        else:
            sum_log_miss += log1p(w / ((t_f - w) + t_r + sigma2))
    for i in range(n_r):
        w = wr_buf[i]
        sum_log_rrh += log1p(zeta * w / (t_f + upsilon * (t_r - w) + sigma2))

    return (t_f, t_r, r2_f0, w_f0, r2_r0, w_r0, r2_hit0, w_hit0,
            w_hit_max, w_miss_max, w_r_max,
            sum_log_hit, sum_log_miss, sum_log_rrh)
