"""
families.py

Preset sequences of rate measures and hypercube walks, indexed by n.
"""

import math

import numpy as np

from analysis.errors import DomainError, FamilyGenerationError, MeasureFileError
from analysis.rate_measure import build_measure
from dependencies import logger
from dependencies.rng import seeded_generator
from files.normalize import read_measure_file
from schemas.evt import RandomRateModel
from schemas.family import FamilyDescriptor, FamilyMember
from schemas.walk import WalkSpec


def symmetric_rho(n: int) -> np.ndarray:
    return np.ones(n)


def odd_windows_rho(n: int) -> np.ndarray:
    """
    ρ_i = max{1, 2·log_n(i)} for i = 1..n, with log_n(i) = ln i / ln n.

    The resulting rates 2ρ_i lie in [2, 4]; coordinate i = 1 sits at the floor.
    No quantization: distinct i give distinct rates except exact collisions.
    The floor applies exactly when i² <= n, decided in integers so that the
    atom at rate 2 holds ⌊√n⌋ coordinates.
    """
    if n < 2:
        raise DomainError("odd_windows needs n >= 2 (log base n)")
    i = np.arange(1, n + 1, dtype=np.int64)
    log_ratio = np.log(i.astype(float)) / np.log(float(n))
    return np.where(i * i <= n, 1.0, np.maximum(1.0, 2.0 * log_ratio))


def slow_coordinate_rho(n: int) -> np.ndarray:
    """
    One coordinate with ρ = 1/(2·log n) and n - 1 coordinates with ρ = 1.

    Here τ_n = log n/2 and κ_n = 1/log n, so τ_nκ_n = 1/2 for every n.
    """
    if n < 2:
        raise DomainError("slow_coordinate needs n >= 2")
    rho = np.ones(n)
    rho[0] = 1.0 / (2.0 * math.log(n))
    return rho


def random_rates_rho(model: RandomRateModel, n: int, seed: int) -> np.ndarray:
    """n i.i.d. coordinate rates from `model`, reproducible per (seed, n)."""
    rng = seeded_generator(seed, n)
    index = rng.choice(len(model.p), size=n, p=np.asarray(model.q, dtype=float))
    return np.asarray(model.p, dtype=float)[index]


def walk_member(rho: np.ndarray) -> FamilyMember:
    """Bundle a hypercube walk with its rate measure (rates λ_i = 2ρ_i)."""
    walk = WalkSpec(n=int(rho.size), rho=tuple(rho.tolist()))
    return FamilyMember(measure=build_measure(walk.clock_rates), walk=walk)


def generate(family: FamilyDescriptor, n: int) -> FamilyMember:
    """
    Generate the n-th member of a family.

    Args:
        family (FamilyDescriptor): Family kind and parameters.
        n (int): Dimension, n >= 1 (n >= 2 for odd_windows and slow_coordinate).

    Returns:
        FamilyMember: The measure, plus the walk for coordinate-rate families.

    Raises:
        FamilyGenerationError: Wrapping the underlying domain or file error,
            naming n.
    """
    if n < 1:
        raise FamilyGenerationError(n, "n must be >= 1")
    try:
        if family.kind == "symmetric":
            return walk_member(symmetric_rho(n))
        if family.kind == "odd_windows":
            return walk_member(odd_windows_rho(n))
        if family.kind == "slow_coordinate":
            return walk_member(slow_coordinate_rho(n))
        if family.kind == "random_rates":
            return walk_member(random_rates_rho(family.model, n, family.seed))
        measure = read_measure_file(family.path, n)
        if measure.n != n:
            logger.warning(f"{family.path} describes n={measure.n}; requested n={n} ignored")
        return FamilyMember(measure=measure)
    except (DomainError, MeasureFileError) as exc:
        raise FamilyGenerationError(n, str(exc)) from exc
    except OSError as exc:
        raise FamilyGenerationError(n, f"cannot read {family.path}: {exc}") from exc
