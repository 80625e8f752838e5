"""
evt.py

Extreme-value side of the separation cutoff: the Gumbel limit for walks whose
coordinate rates are drawn at random, the separation averaged over that
randomness, and θ_n read as a mean number of exceedances.
"""

import math
from typing import Tuple

import numpy as np

from analysis.errors import DomainError
from dependencies import logger
from dependencies.rng import run_blocks
from schemas.evt import AnnealedSeparation, RandomRateModel
from schemas.measure import RateMeasure

# Upper bound on replicas x coordinates drawn at once by exceedance_mean_mc
DRAW_CELLS = 2**20


def gumbel_limit(model: RandomRateModel, c: float) -> float:
    """
    Limit 1 - exp(-q*·e^{-c}) of the separation at t = (log n + c)/(2p*).

    Depends on the rates only through which of them is smallest.
    """
    with np.errstate(over="ignore"):
        return float(-np.expm1(-model.q_star * np.exp(-c)))


def annealed_sep(model: RandomRateModel, n: int, c: float) -> AnnealedSeparation:
    """
    Separation averaged over i.i.d. coordinate rates, at t = (log n + c)/(2p*).

        1 - (1 - Σ_k q_k (e^{-c}/n)^{p_k/p*})^n

    evaluated in log space. When the inner sum reaches 1 (very negative c,
    small n) the value is clamped to 1 and flagged.

    Args:
        model (RandomRateModel): Law of the coordinate rates.
        n (int): Dimension, n >= 1.
        c (float): Offset from log n.

    Returns:
        AnnealedSeparation: The value and whether it was clamped.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    exponents = np.asarray(model.p, dtype=float) / model.p_star
    log_base = -c - math.log(n)
    inner = float(np.dot(np.asarray(model.q, dtype=float), np.exp(exponents * log_base)))
    if inner >= 1.0:
        logger.warning(f"annealed sum {inner:.10g} >= 1 at n={n}, c={c}: clamped to 1")
        return AnnealedSeparation(n=n, c=c, value=1.0, clamped=True)
    value = -math.expm1(n * math.log1p(-inner))
    return AnnealedSeparation(n=n, c=c, value=min(1.0, max(0.0, value)))


def annealed_gap(model: RandomRateModel, n: int, c: float) -> float:
    """Distance |annealed_sep - gumbel_limit| at (n, c)."""
    return abs(annealed_sep(model, n, c).value - gumbel_limit(model, c))


def exceedance_mean_mc(measure: RateMeasure, t: float, replicas: int, seed: int) -> Tuple[float, float]:
    """
    Monte-Carlo estimate of θ_n(t) as the mean number of exceedances of level t.

    Each replica draws n i.i.d. variables V_i, each exponential with a rate
    picked from μ_n, and counts how many exceed t.

    Args:
        measure (RateMeasure): Mixing measure μ_n.
        t (float): Level t >= 0.
        replicas (int): Number of replicas, >= 1.
        seed (int): Run seed.

    Returns:
        tuple[float, float]: (estimate, standard error of the mean).
    """
    if t < 0:
        raise DomainError("the level t must be >= 0")
    if replicas < 1:
        raise DomainError("replicas must be >= 1")
    n = measure.n
    rates = measure.rate_array
    probs = np.asarray(measure.masses, dtype=float)
    probs = probs / probs.sum()

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        width = max(1, min(n, DRAW_CELLS // size))
        exceedances = np.zeros(size)
        for start in range(0, n, width):
            chosen = rates[rng.choice(rates.size, size=(size, min(width, n - start)), p=probs)]
            values = rng.exponential(1.0 / chosen)
            exceedances += np.count_nonzero(values > t, axis=1)
        return exceedances

    counts = run_blocks(replicas, seed, draw)
    estimate = float(counts.mean())
    error = float(counts.std(ddof=1) / math.sqrt(replicas)) if replicas > 1 else 0.0
    return estimate, error
