"""Cache-hit cluster benchmark: association, success, rate, latency."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from fran_tradeoff.analytic.caching import hit_probability
from fran_tradeoff.analytic.cluster import (assoc_prob_cluster,
                                            avg_delivery_latency_cluster,
                                            ergodic_rate_cluster,
                                            solve_cluster_operating_point,
                                            success_prob_cluster,
                                            success_prob_cluster_fap,
                                            success_prob_cluster_rrh)
from fran_tradeoff.analytic.queueing import StabilityError
from fran_tradeoff.numerics import interference_constant, rho


class TestAssociation:
    def test_zero_radius_forces_fallback(self, defaults):
        assert assoc_prob_cluster(defaults, 0.0) == (0.0, 1.0)

    def test_huge_radius_captures_everyone(self, defaults):
        a_fap, a_rrh = assoc_prob_cluster(defaults, 1e5)
        assert a_fap == pytest.approx(1.0, abs=1e-12)
        assert a_rrh == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("radius", [30.0, 75.0, 125.0])
    def test_void_probability_formula(self, defaults, radius):
        lam_hit = hit_probability(defaults) * defaults.network.lambda_f
        a_fap, a_rrh = assoc_prob_cluster(defaults, radius)
        assert a_fap == pytest.approx(
            1.0 - math.exp(-math.pi * lam_hit * radius * radius), rel=1e-15)
        assert a_fap + a_rrh == pytest.approx(1.0, abs=1e-15)

    def test_reference_split(self, defaults):
        assert assoc_prob_cluster(defaults, 30.0)[0] == pytest.approx(
            0.04682924419913781, rel=1e-12)
        assert assoc_prob_cluster(defaults, 125.0)[0] == pytest.approx(
            0.5651090502976082, rel=1e-12)

    def test_negative_radius_rejected(self, defaults):
        with pytest.raises(ValueError, match="radius"):
            assoc_prob_cluster(defaults, -1.0)


class TestSuccessProbability:
    def test_zero_threshold_is_certain(self, defaults):
        assert success_prob_cluster(defaults, 30.0, 0.0) == 1.0
        assert success_prob_cluster_fap(defaults, 30.0, 0.0) == 1.0
        assert success_prob_cluster_rrh(defaults, 30.0, 0.0) == 1.0

    def test_bounds_and_monotone_in_threshold(self, defaults):
        deltas = np.logspace(-2.0, 2.0, 17)
        for radius in (30.0, 125.0):
            values = [success_prob_cluster(defaults, radius, d)
                      for d in deltas]
            assert all(0.0 < v < 1.0 for v in values)
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_mixture_identity(self, defaults):
        for radius in (30.0, 125.0):
            a_fap, a_rrh = assoc_prob_cluster(defaults, radius)
            mix = (a_fap * success_prob_cluster_fap(defaults, radius, 1.0)
                   + a_rrh * success_prob_cluster_rrh(defaults, radius, 1.0))
            assert success_prob_cluster(defaults, radius, 1.0) == \
                pytest.approx(mix, rel=1e-12)

    @pytest.mark.parametrize("delta", [0.1, 1.0, 10.0])
    def test_zero_radius_fallback_closed_form(self, defaults, delta):
        """With an empty cluster the fallback link sees the full caching
        field, so the quadrature must collapse to the nearest-RRH form
        with power-weighted cross-tier interference."""
        net = defaults.network
        fb = defaults.feedback
        two_over_alpha = 2.0 / net.alpha
        weight = (delta * net.p_f / (fb.zeta * net.p_r)) ** two_over_alpha
        oracle = net.lambda_r / (
            net.lambda_r * (1.0 + rho(fb.upsilon * delta / fb.zeta,
                                      net.alpha))
            + net.lambda_f * interference_constant(net.alpha) * weight)
        got = success_prob_cluster_rrh(defaults, 0.0, delta)
        assert got == pytest.approx(oracle, rel=1e-9)

    @pytest.mark.parametrize("delta", [0.5, 2.0])
    def test_huge_radius_cached_closed_form(self, defaults, delta):
        """An unbounded cluster reduces the cached branch to the standard
        nearest-point success probability of the thinned field."""
        net = defaults.network
        p_hit = hit_probability(defaults)
        lam_hit = p_hit * net.lambda_f
        two_over_alpha = 2.0 / net.alpha
        cross = ((1.0 - p_hit) * net.lambda_f
                 + net.lambda_r * (net.p_r / net.p_f) ** two_over_alpha)
        oracle = lam_hit / (
            lam_hit * (1.0 + rho(delta, net.alpha))
            + interference_constant(net.alpha) * delta ** two_over_alpha
            * cross)
        got = success_prob_cluster_fap(defaults, 1e5, delta)
        assert got == pytest.approx(oracle, rel=1e-9)

    def test_reference_values(self, defaults):
        assert success_prob_cluster(defaults, 30.0, 1.0) == pytest.approx(
            0.3308759121239465, rel=1e-9)
        assert success_prob_cluster(defaults, 125.0, 1.0) == pytest.approx(
            0.41951062051612203, rel=1e-9)

    def test_negative_threshold_rejected(self, defaults):
        with pytest.raises(ValueError, match="delta"):
            success_prob_cluster_fap(defaults, 30.0, -0.5)
        with pytest.raises(ValueError, match="delta"):
            success_prob_cluster_rrh(defaults, 30.0, -0.5)


class TestErgodicRate:
    def test_reference_values(self, defaults):
        assert ergodic_rate_cluster(defaults, 30.0) == pytest.approx(
            1.4480654075714143, rel=1e-9)
        assert ergodic_rate_cluster(defaults, 125.0) == pytest.approx(
            1.6238585261372558, rel=1e-9)


class TestOperatingPoint:
    def test_no_backhaul_class(self, defaults):
        op = solve_cluster_operating_point(defaults, 75.0)
        assert op.loads.n_fap_miss == 0.0
        assert op.assoc_fap + op.assoc_rrh == pytest.approx(1.0, abs=1e-15)


class TestDeliveryLatency:
    def test_reference_values(self, defaults):
        assert avg_delivery_latency_cluster(defaults, 30.0).total == \
            pytest.approx(2.494157949101333, rel=1e-9)
        assert avg_delivery_latency_cluster(defaults, 125.0).total == \
            pytest.approx(4.203685409048876, rel=1e-9)

    def test_composition_identity(self, defaults):
        report = avg_delivery_latency_cluster(defaults, 125.0)
        op = report.operating_point
        total = (op.assoc_fap * report.queue_fap
                 + op.assoc_rrh * (report.queue_rrh + op.links.d_front))
        assert report.total == pytest.approx(total, rel=1e-15)

    def test_cached_queue_instability_reported(self, defaults):
        traffic = dataclasses.replace(defaults.traffic, xi=0.008)
        scenario = defaults.replace(traffic=traffic)
        with pytest.raises(StabilityError) as err:
            avg_delivery_latency_cluster(scenario, 125.0)
        assert err.value.queue == "fap_hit"
        assert err.value.offered >= err.value.rate

    def test_fallback_queue_instability_reported(self, defaults):
        traffic = dataclasses.replace(defaults.traffic, xi=0.08)
        scenario = defaults.replace(traffic=traffic)
        with pytest.raises(StabilityError) as err:
            avg_delivery_latency_cluster(scenario, 30.0)
        assert err.value.queue == "rrh"
