"""Kernel selection and compiled/NumPy reduction parity."""

from __future__ import annotations

import math

import numpy as np
import pytest

from fran_tradeoff.mc import kernels
from fran_tradeoff.mc.sampling import sample_realization

COLUMNS = 14


def reduce_with(kernel, scene, scenario):
    net = scenario.network
    fb = scenario.feedback
    return np.asarray(kernel.reduce_realization(
        np.ascontiguousarray(scene.fap_sq_distances),
        np.ascontiguousarray(scene.fap_fading),
        np.ascontiguousarray(scene.cache_marks.astype(np.uint8)),
        np.ascontiguousarray(scene.rrh_sq_distances),
        np.ascontiguousarray(scene.rrh_fading),
        net.p_f, net.p_r, net.alpha, net.sigma2, fb.zeta, fb.upsilon))


def reduce_arrays(kernel, r2_f, h_f, marks, r2_r, h_r, alpha=4.0):
    return np.asarray(kernel.reduce_realization(
        np.ascontiguousarray(r2_f, dtype=float),
        np.ascontiguousarray(h_f, dtype=float),
        np.ascontiguousarray(marks, dtype=np.uint8),
        np.ascontiguousarray(r2_r, dtype=float),
        np.ascontiguousarray(h_r, dtype=float),
        20.0, 0.2, alpha, 0.0, 0.65, 0.4))


class TestSelection:
    def test_numpy_always_available(self):
        names = kernels.available_kernels()
        assert "numpy" in names
        assert kernels.get_kernel("numpy").KERNEL_NAME == "numpy"

    def test_active_name_is_available(self):
        assert kernels.active_kernel_name() in kernels.available_kernels()

    def test_environment_forces_numpy(self, monkeypatch):
        monkeypatch.setenv("FRAN_TRADEOFF_KERNEL", "numpy")
        assert kernels.get_kernel().KERNEL_NAME == "numpy"

    def test_environment_rejects_unknown(self, monkeypatch):
        monkeypatch.setenv("FRAN_TRADEOFF_KERNEL", "fortran")
        with pytest.raises(ValueError, match="unknown kernel 'fortran'"):
            kernels.get_kernel()

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError, match="unknown kernel"):
            kernels.get_kernel("bogus")

    def test_missing_extension_fallback(self, monkeypatch):
        monkeypatch.setattr(kernels, "_kernel_c", None)
        assert kernels.available_kernels() == ("numpy",)
        assert kernels.get_kernel().KERNEL_NAME == "numpy"
        with pytest.raises(RuntimeError, match="not built"):
            kernels.get_kernel("cython")


@pytest.mark.skipif("cython" not in kernels.available_kernels(),
                    reason="compiled kernel not built")
class TestParity:
    @pytest.mark.parametrize("alpha", [4.0, 3.5])
    def test_reductions_agree(self, fast_scenario, alpha):
        """The two kernels follow the same accumulation order; elementwise
        pow/log1p may differ from libm by an ulp, so parity is relative
        1e-12 rather than bitwise."""
        import dataclasses
        scenario = fast_scenario.replace(network=dataclasses.replace(
            fast_scenario.network, alpha=alpha))
        c = kernels.get_kernel("cython")
        py = kernels.get_kernel("numpy")
        for index in range(25):
            scene = sample_realization(scenario, index, seed=13)
            a = reduce_with(c, scene, scenario)
            b = reduce_with(py, scene, scenario)
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=0.0)


@pytest.mark.parametrize("name", kernels.available_kernels())
class TestConventions:
    def test_empty_tiers(self, name):
        kernel = kernels.get_kernel(name)
        out = reduce_arrays(kernel, [], [], [], [10000.0], [1.0])
        assert out.shape == (COLUMNS,)
        t_f, t_r, r2_f0, w_f0 = out[0], out[1], out[2], out[3]
        assert t_f == 0.0 and math.isinf(r2_f0) and w_f0 == 0.0
        assert t_r > 0.0
        # hit-class slots are empty too
        assert math.isinf(out[6]) and out[7] == 0.0 and out[8] == 0.0
        assert out[11] == 0.0 and out[12] == 0.0

    def test_mark_routing(self, name):
        """All-hit scenes put the F-AP rate mass in the hit column,
        all-miss scenes in the miss column, identically."""
        kernel = kernels.get_kernel(name)
        r2 = [10000.0, 40000.0, 250000.0]
        h = [1.0, 0.5, 2.0]
        all_hit = reduce_arrays(kernel, r2, h, [1, 1, 1], [90000.0], [1.0])
        all_miss = reduce_arrays(kernel, r2, h, [0, 0, 0], [90000.0], [1.0])
        assert all_hit[11] > 0.0 and all_hit[12] == 0.0
        assert all_miss[11] == 0.0 and all_miss[12] > 0.0
        assert all_hit[11] == all_miss[12]
        assert all_hit[8] == all_miss[9]  # best-candidate power moves too
        # nearest-hit slots track the nearest F-AP when every mark is set
        assert all_hit[6] == all_hit[2] and all_hit[7] == all_hit[3]

    def test_nearest_and_totals(self, name):
        kernel = kernels.get_kernel(name)
        out = reduce_arrays(kernel, [40000.0, 10000.0], [2.0, 1.0], [0, 1],
                            [2500.0, 640000.0], [1.0, 4.0])
        w_f = 20.0 * np.array([2.0, 1.0]) / np.array([40000.0, 10000.0]) ** 2
        w_r = 0.2 * np.array([1.0, 4.0]) / np.array([2500.0, 640000.0]) ** 2
        assert out[0] == pytest.approx(w_f.sum(), rel=1e-15)
        assert out[1] == pytest.approx(w_r.sum(), rel=1e-15)
        assert out[2] == 10000.0 and out[3] == pytest.approx(w_f[1])
        assert out[4] == 2500.0 and out[5] == pytest.approx(w_r[0])
        assert out[6] == 10000.0  # the only marked F-AP
        assert out[10] == pytest.approx(w_r.max(), rel=1e-15)
