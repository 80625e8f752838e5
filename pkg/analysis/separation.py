"""
separation.py

Exact separation distances for products of independent exponentially
converging coordinates, the exceedance function θ_n and the sandwich bounds
relating the two.

All products of probabilities close to 1 are accumulated in log space with
numpy's log1p/expm1, which switch to their series forms for small arguments.
Results are clamped to [0, 1] to absorb last-bit rounding.
"""

import math
from typing import Sequence, Tuple

import numpy as np

from analysis.errors import PreconditionError
from schemas.envelope import ZERO_ENVELOPE, PerturbationEnvelope
from schemas.measure import RateMeasure, ScaledMeasure

LOG2 = math.log(2.0)


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, float(value)))


def log1mexp(a: np.ndarray) -> np.ndarray:
    """
    Stable log(1 - e^{-a}) for a >= 0.

    Uses log(-expm1(-a)) below log 2 and log1p(-e^{-a}) above it; a = 0 maps to -inf.
    """
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(a < LOG2, np.log(-np.expm1(-a)), np.log1p(-np.exp(-a)))


def sep_single(lam: float, t: float) -> float:
    """Separation of one pure-exponential coordinate: e^{-λt}."""
    return math.exp(-lam * t)


def sep_product(seps: Sequence[float]) -> float:
    """
    Combine coordinate separations into the separation of the tuple.

    sep = 1 - Π(1 - sep_i), evaluated as -expm1(Σ log1p(-sep_i)). A coordinate
    at full separation forces the tuple to full separation.

    Args:
        seps (Sequence[float]): Values in [0, 1].

    Returns:
        float: Tuple separation in [0, 1].
    """
    values = np.asarray(seps, dtype=float)
    if np.any(values >= 1.0):
        return 1.0
    return _clamp(-np.expm1(np.sum(np.log1p(-values))))


def sep_tuple(measure: RateMeasure, t: float) -> float:
    """
    Separation distance of the n-tuple described by μ_n at time t (g ≡ 0).

    sep(t) = 1 - exp(n ∫ log(1 - e^{-tλ}) μ_n(dλ)), a finite sum over atoms
    weighted by n·μ_n({λ}).

    Args:
        measure (RateMeasure): Rate measure of the tuple.
        t (float): Time t >= 0; t = 0 gives 1.

    Returns:
        float: Separation in [0, 1].
    """
    if t <= 0:
        return 1.0
    log_survival = float(np.dot(measure.weight_array, log1mexp(measure.rate_array * t)))
    if not math.isfinite(log_survival):
        return 1.0
    return _clamp(-math.expm1(log_survival))


def theta(measure: RateMeasure, t: float) -> float:
    """
    Mean number of level-t exceedances: θ_n(t) = n ∫ e^{-λt} μ_n(dλ).

    θ_n(0) = n, and θ_n is non-increasing in t.
    """
    return float(np.dot(measure.weight_array, np.exp(-measure.rate_array * t)))


def theta_scaled(scaled: ScaledMeasure, t: float) -> float:
    """θ_n through the rescaled measure: β_n ∫ exp(-tλ*x) ν_n(dx)."""
    return scaled.beta * float(
        np.dot(scaled.weight_array, np.exp(-t * scaled.lambda_star * scaled.point_array))
    )


def _check_bound_domain(measure: RateMeasure, t: float) -> None:
    threshold = LOG2 / measure.kappa
    if t < threshold:
        raise PreconditionError(
            f"sandwich bounds need t >= log 2/κ = {threshold:.10g}, got t = {t:.10g}"
        )


def sandwich_bounds(
    measure: RateMeasure,
    t: float,
    g: PerturbationEnvelope = ZERO_ENVELOPE,
) -> Tuple[float, float]:
    """
    Lower and upper bounds on the separation in terms of θ_n.

        1 - exp(-e^{-t·g(t)} θ_n(t))  <=  sep(t)  <=  1 - exp(-2 e^{2t·g(t)} θ_n(t))

    Valid for every t >= log 2/κ_n, where each coordinate's term e^{-λt} is at
    most 1/2.

    Args:
        measure (RateMeasure): Rate measure of the tuple.
        t (float): Time, at least log 2/κ_n.
        g (PerturbationEnvelope): Envelope of the coordinates' deviation from
            pure exponential decay.

    Returns:
        tuple[float, float]: (lower, upper), lower <= upper.

    Raises:
        PreconditionError: If t < log 2/κ_n.
    """
    _check_bound_domain(measure, t)
    th = theta(measure, t)
    gt = t * g(t)
    lower = -math.expm1(-math.exp(-gt) * th)
    upper = -math.expm1(-2.0 * math.exp(2.0 * gt) * th)
    return _clamp(lower), _clamp(upper)


def refined_upper_bound(
    measure: RateMeasure,
    t: float,
    g: PerturbationEnvelope = ZERO_ENVELOPE,
) -> float:
    """
    The tighter upper bound 1 - exp(-e^{t·g(t)} θ_n(t) - e^{2t·g(t)} θ_n(2t)).

    It sits between sep(t) and the sandwich's upper bound, since θ_n(2t) <= θ_n(t).
    Same domain as sandwich_bounds.
    """
    _check_bound_domain(measure, t)
    gt = t * g(t)
    exponent = math.exp(gt) * theta(measure, t) + math.exp(2.0 * gt) * theta(measure, 2.0 * t)
    return _clamp(-math.expm1(-exponent))
