"""Quadrature primitives against independent closed forms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.special import exp1

from fran_tradeoff.numerics import (QuadratureError, QuadratureSpec,
                                    beta_fn, ergodic_rate_integral,
                                    feedback_coeffs, gamma_fn,
                                    interference_constant, rho,
                                    rho_closed_form_alpha4, rho_integral,
                                    semi_infinite_quadrature, tail_weight)


def _tail_alpha6(x: float) -> float:
    """Independent closed form of int_x^inf du/(1+u^3) (partial fractions)."""

    def antideriv(u: float) -> float:
        return (math.log((u + 1.0) ** 2 / (u * u - u + 1.0)) / 6.0
                + math.atan((2.0 * u - 1.0) / math.sqrt(3.0)) / math.sqrt(3.0))

    limit = math.pi / (2.0 * math.sqrt(3.0))
    return limit - antideriv(x)


class TestRho:
    def test_quadrature_matches_closed_form_alpha4(self):
        for delta in np.logspace(-3, 3, 61):
            assert rho_integral(float(delta), 4.0) == pytest.approx(
                rho_closed_form_alpha4(float(delta)), abs=1e-8)

    def test_alpha6_against_partial_fraction_form(self):
        for delta in (1e-2, 0.3, 1.0, 7.0, 1e2):
            scale = delta ** (1.0 / 3.0)
            expected = scale * _tail_alpha6(1.0 / scale)
            assert rho_integral(delta, 6.0) == pytest.approx(expected,
                                                             rel=1e-9)

    def test_dispatcher_uses_closed_form_at_alpha4(self):
        assert rho(2.5, 4.0) == rho_closed_form_alpha4(2.5)

    def test_zero_threshold_gives_zero_weight(self):
        assert rho(0.0, 4.0) == 0.0
        assert rho_integral(0.0, 3.1) == 0.0

    def test_monotone_increasing_in_threshold(self):
        grid = np.logspace(-2, 2, 25)
        for alpha in (2.5, 4.0, 5.5):
            values = [rho(float(d), alpha) for d in grid]
            assert all(b > a for a, b in zip(values, values[1:]))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rho(-1.0, 4.0)
        with pytest.raises(ValueError):
            rho(1.0, 2.0)
        with pytest.raises(ValueError):
            tail_weight(-0.5, 4.0)


class TestTailWeight:
    def test_at_zero_equals_interference_constant(self):
        for alpha in (2.5, 3.0, 4.0, 6.0):
            assert tail_weight(0.0, alpha) == pytest.approx(
                interference_constant(alpha), rel=1e-9)

    def test_alpha6_against_partial_fraction_form(self):
        for x in (0.0, 0.4, 1.0, 5.0):
            assert tail_weight(x, 6.0) == pytest.approx(_tail_alpha6(x),
                                                        rel=1e-9)


class TestInterferenceConstant:
    def test_known_values(self):
        assert interference_constant(4.0) == pytest.approx(math.pi / 2.0,
                                                           rel=1e-15)
        assert interference_constant(6.0) == pytest.approx(
            2.0 * math.pi / (3.0 * math.sqrt(3.0)), rel=1e-15)

    def test_diverges_toward_alpha2(self):
        assert interference_constant(2.01) > interference_constant(2.5) > \
            interference_constant(4.0)


class TestSpecialFunctions:
    def test_gamma_factorial(self):
        assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-15)
        with pytest.raises(ValueError):
            gamma_fn(0.0)

    def test_beta_matches_gamma_ratio(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            x, y = rng.uniform(0.1, 8.0, size=2)
            expected = gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y)
            assert beta_fn(float(x), float(y)) == pytest.approx(expected,
                                                                rel=1e-12)
        with pytest.raises(ValueError):
            beta_fn(-1.0, 2.0)


class TestFeedbackCoefficients:
    def test_reference_configuration(self):
        fb = feedback_coeffs(4, 4)
        assert fb.zeta == pytest.approx(0.6504258682613615, rel=1e-12)
        assert fb.upsilon == pytest.approx(2.0 ** (-4.0 / 3.0), rel=1e-15)

    def test_zero_bits_random_beam(self):
        # One codebook entry: mean aligned power 1/antennas, interference
        # unsuppressed.
        for antennas in (2, 4, 8):
            fb = feedback_coeffs(0, antennas)
            assert fb.zeta == pytest.approx(1.0 / antennas, rel=1e-12)
            assert fb.upsilon == 1.0

    def test_more_feedback_recovers_signal(self):
        zetas = [feedback_coeffs(b, 4).zeta for b in range(0, 12)]
        assert all(b > a for a, b in zip(zetas, zetas[1:]))
        assert zetas[-1] < 1.0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            feedback_coeffs(-1, 4)
        with pytest.raises(ValueError):
            feedback_coeffs(4, 1)


class TestQuadrature:
    def test_exponential_integral(self):
        assert semi_infinite_quadrature(lambda x: math.exp(-x)) == \
            pytest.approx(1.0, rel=1e-10)

    def test_lower_limit(self):
        assert semi_infinite_quadrature(lambda x: math.exp(-x), lower=2.0) \
            == pytest.approx(math.exp(-2.0), rel=1e-10)

    def test_failure_raises_with_diagnostics(self):
        # Conditionally convergent oscillation defeats QUADPACK on the
        # semi-infinite range.
        with pytest.raises(QuadratureError) as excinfo:
            semi_infinite_quadrature(lambda x: math.sin(x) / (1.0 + x))
        assert math.isfinite(excinfo.value.error_estimate) or \
            math.isnan(excinfo.value.error_estimate) is False

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=5)


class TestErgodicRateIntegral:
    def test_exponential_tail_against_e1(self):
        # P(SINR > d) = exp(-c d) gives the closed form e^c E1(c) / ln 2.
        for c in (0.25, 0.5, 1.0, 2.0):
            expected = math.exp(c) * float(exp1(c)) / math.log(2.0)
            got = ergodic_rate_integral(
                lambda d, c=c: math.exp(-c * d))
            assert got == pytest.approx(expected, rel=1e-8)

    def test_certain_success_has_divergent_head_handled(self):
        # A hard cutoff P(SINR > d) = 1{d < 1} integrates to log2(2) = 1.
        got = ergodic_rate_integral(lambda d: 1.0 if d < 1.0 else 0.0)
        assert got == pytest.approx(1.0, rel=1e-6)
