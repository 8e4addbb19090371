"""Quadrature helpers and special-function primitives.

Everything downstream (success probabilities, ergodic rates, the delay
benchmark) reduces to a handful of semi-infinite integrals over smooth,
monotonically decaying integrands.  This module wraps adaptive quadrature
with explicit tolerances and provides the recurring interference weight

    rho(delta, alpha) = delta^(2/alpha) * int_{delta^(-2/alpha)}^inf
                            du / (1 + u^(alpha/2))

together with its closed form at alpha = 4 and the full-plane constant
C(alpha) = (2*pi/alpha) / sin(2*pi/alpha) obtained as the x -> 0 limit of
the tail integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "DEFAULT_QUADRATURE",
    "gamma_fn",
    "beta_fn",
    "FeedbackCoefficients",
    "feedback_coeffs",
    "tail_weight",
    "rho_integral",
    "rho_closed_form_alpha4",
    "rho",
    "interference_constant",
    "semi_infinite_quadrature",
    "ergodic_rate_integral",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive quadrature.

    A result is accepted when the estimated absolute error is below
    ``abs_tol + rel_tol * |value|``; otherwise :class:`QuadratureError`
    is raised carrying the achieved error estimate.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")


DEFAULT_QUADRATURE = QuadratureSpec()


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to meet the requested tolerance."""

    def __init__(self, message, value=math.nan, error_estimate=math.nan):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def gamma_fn(x: float) -> float:
    """Gamma function on the positive real axis."""
    if x <= 0:
        raise ValueError("gamma_fn requires a positive argument")
    return math.gamma(x)


def beta_fn(x: float, y: float) -> float:
    """Beta function B(x, y) for positive arguments, evaluated in log space."""
    if x <= 0 or y <= 0:
        raise ValueError("beta_fn requires positive arguments")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


@dataclass(frozen=True)
class FeedbackCoefficients:
    """Limited-feedback beamforming factors.

    ``zeta`` scales the useful signal power after quantized channel
    feedback; ``upsilon`` scales interference received from other
    transmitters of the same multi-antenna tier.  Both lie in (0, 1].
    """

    zeta: float
    upsilon: float


def feedback_coeffs(feedback_bits: int, antennas: int) -> FeedbackCoefficients:
    """Signal and interference scaling for B-bit codebook feedback.

    With a codebook of ``2**feedback_bits`` entries and ``antennas``
    transmit antennas, the mean signal power is reduced by

        zeta = 1 - 2**B * Beta(2**B, antennas / (antennas - 1))

    and cross-beam interference is reduced by
    ``upsilon = 2**(-B / (antennas - 1))``.  ``feedback_bits = 0``
    (random beam) gives the smallest zeta and upsilon = 1.
    """
    if feedback_bits < 0:
        raise ValueError("feedback_bits must be nonnegative")
    if antennas < 2:
        raise ValueError("antennas must be at least 2 for beamforming feedback")
    codebook = 2.0 ** feedback_bits
    zeta = 1.0 - codebook * beta_fn(codebook, antennas / (antennas - 1.0))
    upsilon = 2.0 ** (-feedback_bits / (antennas - 1.0))
    return FeedbackCoefficients(zeta=zeta, upsilon=upsilon)


def _check_alpha(alpha: float) -> None:
    if alpha <= 2:
        raise ValueError("alpha must exceed 2")


def tail_weight(x: float, alpha: float,
                spec: QuadratureSpec | None = None) -> float:
    """Tail integral T(x) = int_x^inf du / (1 + u^(alpha/2)).

    T(0) equals the full-plane interference constant C(alpha); for
    alpha = 4 the integral is arctan-shaped and evaluated in closed form.
    """
    _check_alpha(alpha)
    if x < 0:
        raise ValueError("tail_weight requires a nonnegative lower limit")
    if alpha == 4.0:
        return math.pi / 2.0 - math.atan(x)
    return semi_infinite_quadrature(
        lambda u: 1.0 / (1.0 + u ** (alpha / 2.0)), lower=x, spec=spec)


def rho_integral(delta: float, alpha: float,
                 spec: QuadratureSpec | None = None) -> float:
    """Interference weight rho(delta, alpha) by adaptive quadrature.

    This is the pure quadrature route, kept independent of the alpha = 4
    closed form so the two can be cross-checked.
    """
    _check_alpha(alpha)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if delta == 0:
        return 0.0
    scale = delta ** (2.0 / alpha)
    value = semi_infinite_quadrature(
        lambda u: 1.0 / (1.0 + u ** (alpha / 2.0)),
        lower=1.0 / scale, spec=spec)
    return scale * value


def rho_closed_form_alpha4(delta: float) -> float:
    """rho(delta, 4) = sqrt(delta) * (pi/2 - arctan(1/sqrt(delta)))."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if delta == 0:
        return 0.0
    root = math.sqrt(delta)
    return root * (math.pi / 2.0 - math.atan(1.0 / root))


def rho(delta: float, alpha: float,
        spec: QuadratureSpec | None = None) -> float:
    """Canonical interference weight: closed form at alpha = 4, quadrature otherwise.

    Every success-probability evaluator routes through this dispatcher so
    that alpha = 4 results are bit-identical wherever rho appears.
    """
    _check_alpha(alpha)
    if alpha == 4.0:
        return rho_closed_form_alpha4(delta)
    return rho_integral(delta, alpha, spec=spec)


def interference_constant(alpha: float) -> float:
    """Full-plane constant C(alpha) = (2*pi/alpha) / sin(2*pi/alpha) for alpha > 2."""
    _check_alpha(alpha)
    return (2.0 * math.pi / alpha) / math.sin(2.0 * math.pi / alpha)


def ergodic_rate_integral(success_at: Callable[[float], float],
                          spec: QuadratureSpec | None = None) -> float:
    """E[log2(1 + SINR)] = int_0^inf P(SINR > 2^t - 1) dt.

    ``success_at`` maps an SINR threshold to a tail probability.  The
    substitution 2^t - 1 overflows float64 for t above roughly 1024;
    the tail contribution there is far below any tolerance, so it is
    treated as zero.
    """
    ln2 = math.log(2.0)

    def integrand(t: float) -> float:
        if t * ln2 > 700.0:
            return 0.0
        return success_at(math.expm1(t * ln2))

    return semi_infinite_quadrature(integrand, spec=spec)


def semi_infinite_quadrature(f: Callable[[float], float],
                             lower: float = 0.0,
                             spec: QuadratureSpec | None = None) -> float:
    """Integrate ``f`` over [lower, inf) with tolerance checking.

    The integrand is assumed smooth and absolutely integrable.  Raises
    :class:`QuadratureError` when the subdivision budget is exhausted or
    the achieved error estimate exceeds the spec tolerance.
    """
    if spec is None:
        spec = DEFAULT_QUADRATURE
    result = quad(f, lower, math.inf,
                  epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        raise QuadratureError(
            f"quadrature did not converge: {result[3]} "
            f"(value {value!r}, error estimate {abserr!r})",
            value=value, error_estimate=abserr)
    if abserr > spec.abs_tol + spec.rel_tol * abs(value):
        raise QuadratureError(
            f"quadrature error estimate {abserr!r} exceeds tolerance "
            f"for value {value!r}", value=value, error_estimate=abserr)
    return value
