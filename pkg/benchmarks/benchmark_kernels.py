"""Throughput comparison of the per-realization reduction kernels.

Pre-samples a batch of network realizations once, then runs the same
arrays through every available kernel (compiled extension and NumPy
fallback), reporting reductions per second and the worst relative
disagreement between kernel outputs.  Sampling cost is excluded so the
numbers compare the kernels themselves.

Usage: python3 benchmarks/benchmark_kernels.py [--n 4000] [--seed 1]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fran_tradeoff.config import default_scenario
from fran_tradeoff.mc.kernels import available_kernels, get_kernel
from fran_tradeoff.mc.sampling import sample_realization


def _presample(scenario, n, seed):
    net = scenario.network
    fb = scenario.feedback
    params = (net.p_f, net.p_r, net.alpha, net.sigma2, fb.zeta, fb.upsilon)
    batch = []
    for index in range(n):
        real = sample_realization(scenario, index, seed)
        batch.append((
            np.ascontiguousarray(real.fap_sq_distances),
            np.ascontiguousarray(real.fap_fading),
            np.ascontiguousarray(real.cache_marks.astype(np.uint8)),
            np.ascontiguousarray(real.rrh_sq_distances),
            np.ascontiguousarray(real.rrh_fading),
        ))
    return batch, params


def _run(kernel_name, batch, params):
    kernel = get_kernel(kernel_name)
    out = np.empty((len(batch), 14))
    start = time.perf_counter()
    for i, arrays in enumerate(batch):
        out[i] = kernel.reduce_realization(*arrays, *params)
    elapsed = time.perf_counter() - start
    return out, elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4000,
                        help="realizations per kernel run")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats; best time is reported")
    args = parser.parse_args()

    scenario = default_scenario()
    kernels = available_kernels()
    print(f"kernels available: {', '.join(kernels)}")

    sample_start = time.perf_counter()
    batch, params = _presample(scenario, args.n, args.seed)
    sample_time = time.perf_counter() - sample_start
    stations = sum(len(a[0]) + len(a[3]) for a in batch)
    print(f"batch: {args.n} realizations ({stations} stations total), "
          f"seed {args.seed}, sampled in {sample_time:.2f} s; "
          f"best of {args.repeats}\n")

    results = {}
    for name in kernels:
        best = None
        out = None
        for _ in range(args.repeats):
            out, elapsed = _run(name, batch, params)
            best = elapsed if best is None else min(best, elapsed)
        results[name] = out
        print(f"{name:>8}: {best:8.3f} s  "
              f"({args.n / best:10.1f} reductions/s)")

    if len(results) == 2:
        a, b = (results[name] for name in kernels)
        finite = np.isfinite(a) & np.isfinite(b)
        denom = np.maximum(np.abs(a[finite]), np.abs(b[finite]))
        diff = np.abs(a[finite] - b[finite])
        rel = np.max(diff / np.where(denom > 0, denom, 1.0))
        print(f"\nmax relative disagreement: {rel:.3e} "
              "(expect ~1e-16 ulp-level difference, not bitwise equality)")


if __name__ == "__main__":
    main()
