"""
rate_measure.py

Construction and evaluation of the discrete rate measures μ_n and of their
rescalings ν_n. A measure places mass (multiplicity)/n on each distinct
exponential rate of an n-tuple of independent chains.
"""

import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from analysis.errors import DomainError, MeasureValidationError
from dependencies import logger
from schemas.measure import RateMeasure, ScaledMeasure

# Significant digits kept by the optional quantization of raw rates
QUANTIZE_DIGITS = 12


def quantize_rates(rates: np.ndarray) -> np.ndarray:
    """Round every rate to QUANTIZE_DIGITS significant digits."""
    return np.array([float(f"{r:.{QUANTIZE_DIGITS - 1}e}") for r in rates], dtype=float)


def build_measure(rates: Sequence[float], quantize: bool = False) -> RateMeasure:
    """
    Build μ_n from the list of n coordinate rates.

    Equal rates are aggregated by exact comparison of their binary values, so
    rates produced by floating-point formulas stay distinct unless `quantize`
    is set, in which case each rate is first rounded to 12 significant digits.

    Args:
        rates (Sequence[float]): One rate per coordinate; n = len(rates).
        quantize (bool): Round rates before aggregation.

    Returns:
        RateMeasure: Measure with integer counts and masses count/n.

    Raises:
        MeasureValidationError: If the list is empty or a rate is non-positive
            or non-finite (the message names the first offending index).
    """
    values = np.asarray(rates, dtype=float).ravel()
    if values.size == 0:
        raise MeasureValidationError("at least one rate is required (n >= 1)")
    bad = np.flatnonzero(~np.isfinite(values) | (values <= 0))
    if bad.size:
        raise MeasureValidationError(f"rate at index {bad[0]} is invalid: {values[bad[0]]!r}")
    if quantize:
        values = quantize_rates(values)

    distinct, counts = np.unique(values, return_counts=True)
    n = int(values.size)
    logger.debug(f"built measure with n={n} and {distinct.size} atoms")
    return RateMeasure(
        n=n,
        rates=tuple(distinct.tolist()),
        masses=tuple((counts / n).tolist()),
        counts=tuple(int(c) for c in counts),
    )


def from_atoms(
    n: int,
    atoms: Iterable[Tuple[float, float]],
    counts: Optional[Sequence[int]] = None,
) -> RateMeasure:
    """
    Canonicalize (rate, mass) pairs into a measure.

    Pairs are sorted by rate and pairs sharing a rate are merged by summing
    their masses (and counts). Splitting an atom into pieces at the same rate
    therefore yields the same measure.

    Args:
        n (int): Tuple dimension carried alongside the masses.
        atoms (Iterable[tuple]): (rate, mass) pairs; masses need not be multiples of 1/n.
        counts (Sequence[int], optional): Multiplicity per pair.

    Returns:
        RateMeasure: The canonical measure.
    """
    pairs = list(atoms)
    if counts is not None and len(counts) != len(pairs):
        raise MeasureValidationError("one count is needed per atom")
    merged = {}
    merged_counts = {}
    for i, (rate, mass) in enumerate(pairs):
        rate = float(rate)
        if not math.isfinite(rate) or rate <= 0:
            raise MeasureValidationError(f"atom at index {i} has invalid rate {rate!r}")
        merged.setdefault(rate, []).append(float(mass))
        if counts is not None:
            merged_counts[rate] = merged_counts.get(rate, 0) + int(counts[i])

    ordered = sorted(merged)
    return RateMeasure(
        n=n,
        rates=tuple(ordered),
        masses=tuple(math.fsum(merged[r]) for r in ordered),
        counts=tuple(merged_counts[r] for r in ordered) if counts is not None else None,
    )


def expand_rates(measure: RateMeasure) -> np.ndarray:
    """
    Recover the per-coordinate rate list (each rate repeated by its multiplicity).

    Requires integer counts; masses-only measures have no coordinate list.
    """
    if measure.counts is None:
        raise DomainError("the measure has no integer counts to expand")
    return np.repeat(measure.rate_array, measure.counts)


def _prefix_index(measure: RateMeasure, lam: float) -> int:
    return int(np.searchsorted(measure.rate_array, lam, side="right"))


def cumulative(measure: RateMeasure, lam: float) -> float:
    """
    Evaluate μ_n(0, λ].

    A right-continuous step function: 0 below κ_n, exactly 1 from the largest
    rate on. When counts are known the value is (integer count)/n.

    Args:
        measure (RateMeasure): The measure μ_n.
        lam (float): Rate λ >= 0.

    Returns:
        float: Mass in [0, 1].
    """
    k = _prefix_index(measure, lam)
    return 0.0 if k == 0 else float(measure.mass_prefix[k - 1])


def counting(measure: RateMeasure, lam: float) -> float:
    """n·μ_n(0, λ]: the number of coordinates whose rate is at most λ."""
    k = _prefix_index(measure, lam)
    return 0.0 if k == 0 else float(measure.count_prefix[k - 1])


def scale(measure: RateMeasure, lambda_star: float) -> ScaledMeasure:
    """
    Rescale μ_n around λ* into ν_n.

    ν_n({x}) = μ_n({λ*x}) / μ_n(0, λ*], so that ν_n(0, 1] = 1 and the total
    mass is 1/μ_n(0, λ*]. β_n = n·μ_n(0, λ*].

    Args:
        measure (RateMeasure): The measure μ_n.
        lambda_star (float): Any rate with μ_n(0, λ*] > 0, usually the maximizer
            chosen by cutoff_time.

    Returns:
        ScaledMeasure: ν_n together with λ* and β_n.

    Raises:
        DomainError: If μ_n(0, λ*] = 0.
    """
    k = _prefix_index(measure, lambda_star)
    if k == 0:
        raise DomainError(f"μ(0, {lambda_star}] = 0: no mass at or below λ*")
    if measure.counts is not None:
        # exact ratio of integers
        counts = np.asarray(measure.counts, dtype=float)
        weights = counts / float(measure.count_prefix[k - 1])
    else:
        weights = np.asarray(measure.masses, dtype=float) / float(measure.mass_prefix[k - 1])
    return ScaledMeasure(
        base=measure,
        lambda_star=lambda_star,
        beta=float(measure.count_prefix[k - 1]),
        points=tuple((measure.rate_array / lambda_star).tolist()),
        weights=tuple(weights.tolist()),
    )


def scaled_cumulative(scaled: ScaledMeasure, x: float) -> float:
    """
    Evaluate ν_n(0, x] = n·μ_n(0, xλ*] / β_n.

    Args:
        scaled (ScaledMeasure): The rescaled measure.
        x (float): Point on the rescaled axis.

    Returns:
        float: Scaled mass, between 0 and the total mass.
    """
    k = int(np.searchsorted(scaled.point_array, x, side="right"))
    return 0.0 if k == 0 else float(scaled.base.count_prefix[k - 1]) / scaled.beta


def unscale(scaled: ScaledMeasure) -> RateMeasure:
    """Map ν_n back to μ_n: rates x·λ*, masses ν_n({x})·μ_n(0, λ*]."""
    base = scaled.base
    head = scaled.beta / base.n
    return RateMeasure(
        n=base.n,
        rates=tuple((scaled.point_array * scaled.lambda_star).tolist()),
        masses=tuple((scaled.weight_array * head).tolist()),
        counts=base.counts,
    )
