import math
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, confloat, model_validator

from analysis.errors import MeasureValidationError

# Tolerance on the total mass of a probability measure
MASS_TOLERANCE = 1e-12


class RateMeasure(BaseModel):
    """
    Discrete probability measure μ_n on (0, ∞) describing the exponential
    convergence rates of the n coordinates of a product chain.

    Atoms are stored as parallel tuples so that measures with millions of
    distinct rates stay cheap to validate. When the measure was built from a
    rate list, `counts` holds the integer multiplicity of each atom and every
    cumulative quantity is computed from those integers.

    Attributes:
        n (int): Tuple dimension.
        rates (tuple[float]): Distinct rates, strictly increasing, positive and finite.
        masses (tuple[float]): Mass of each rate, in (0, 1], summing to 1.
        counts (tuple[int], optional): Multiplicities; sum to n when present.
    """

    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    rates: Tuple[float, ...]
    masses: Tuple[float, ...]
    counts: Optional[Tuple[int, ...]] = None

    @model_validator(mode="after")
    def check_atoms(self):
        """
        Enforce the measure invariants.

        Raises:
            MeasureValidationError: On empty or mismatched atoms, non-positive or
                non-finite rates, rates out of order, masses outside (0, 1], a total
                mass away from 1, or counts that do not add up to n.
        """
        if not self.rates:
            raise MeasureValidationError("a measure needs at least one atom")
        if len(self.rates) != len(self.masses):
            raise MeasureValidationError("rates and masses differ in length")
        rates = np.asarray(self.rates, dtype=float)
        masses = np.asarray(self.masses, dtype=float)
        bad = np.flatnonzero(~np.isfinite(rates) | (rates <= 0))
        if bad.size:
            raise MeasureValidationError(f"atom {bad[0]} has invalid rate {rates[bad[0]]}")
        if rates.size > 1 and np.any(np.diff(rates) <= 0):
            i = int(np.flatnonzero(np.diff(rates) <= 0)[0]) + 1
            raise MeasureValidationError(f"rates must be strictly increasing (atom {i})")
        bad = np.flatnonzero(~((masses > 0) & (masses <= 1)))
        if bad.size:
            raise MeasureValidationError(f"atom {bad[0]} has invalid mass {masses[bad[0]]}")
        total = math.fsum(self.masses)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise MeasureValidationError(f"masses sum to {total!r}, not 1")
        if self.counts is not None:
            if len(self.counts) != len(self.rates) or min(self.counts) < 1:
                raise MeasureValidationError("counts must be positive, one per atom")
            if sum(self.counts) != self.n:
                raise MeasureValidationError(f"counts sum to {sum(self.counts)}, not n={self.n}")
        return self

    @property
    def kappa(self) -> float:
        """Smallest rate in the support (the spectral gap of the tuple)."""
        return self.rates[0]

    @property
    def max_rate(self) -> float:
        return self.rates[-1]

    @cached_property
    def rate_array(self) -> np.ndarray:
        return np.asarray(self.rates, dtype=float)

    @cached_property
    def weight_array(self) -> np.ndarray:
        """n·μ_n({λ}) per atom: the exact multiplicity when counts are known."""
        if self.counts is not None:
            return np.asarray(self.counts, dtype=float)
        return self.n * np.asarray(self.masses, dtype=float)

    @cached_property
    def count_prefix(self) -> np.ndarray:
        """n·μ_n(0, λ_k] for each atom index k."""
        if self.counts is not None:
            return np.cumsum(np.asarray(self.counts, dtype=np.int64)).astype(float)
        prefix = np.cumsum(np.asarray(self.masses, dtype=float))
        prefix[-1] = 1.0
        return self.n * prefix

    @cached_property
    def mass_prefix(self) -> np.ndarray:
        """μ_n(0, λ_k] for each atom index k, ending exactly at 1."""
        if self.counts is not None:
            return np.cumsum(np.asarray(self.counts, dtype=np.int64)) / self.n
        prefix = np.cumsum(np.asarray(self.masses, dtype=float))
        prefix[-1] = 1.0
        return prefix


class ScaledMeasure(BaseModel):
    """
    The rescaled measure ν_n({x}) = μ_n({λ*x}) / μ_n(0, λ*].

    Attributes:
        base (RateMeasure): The measure μ_n being rescaled.
        lambda_star (float): The rate mapped to x = 1.
        beta (float): β_n = n·μ_n(0, λ*].
        points (tuple[float]): x = λ/λ* per atom of the base measure.
        weights (tuple[float]): ν_n({x}) per atom.
    """

    model_config = ConfigDict(frozen=True)

    base: RateMeasure
    lambda_star: confloat(gt=0, allow_inf_nan=False)
    beta: confloat(ge=0, allow_inf_nan=False)
    points: Tuple[float, ...]
    weights: Tuple[float, ...]

    @model_validator(mode="after")
    def check_normalization(self):
        """ν_n(0, 1] must equal 1 and β_n must match the base measure."""
        k = int(np.searchsorted(self.base.rate_array, self.lambda_star, side="right"))
        head = math.fsum(self.weights[:k])
        if abs(head - 1.0) > MASS_TOLERANCE:
            raise MeasureValidationError(f"scaled mass on (0,1] is {head!r}, not 1")
        expected = float(self.base.count_prefix[k - 1])
        if abs(self.beta - expected) > MASS_TOLERANCE * max(1.0, expected):
            raise MeasureValidationError(f"beta={self.beta!r} but n·μ(0,λ*]={expected!r}")
        return self

    @property
    def total_mass(self) -> float:
        """Total mass 1/μ_n(0, λ*], which lies in [1, n]."""
        return math.fsum(self.weights)

    @cached_property
    def point_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


class MeasureAtom(BaseModel):
    rate: confloat(gt=0, allow_inf_nan=False)
    mass: confloat(gt=0, le=1)


class MeasureFile(BaseModel):
    """JSON measure file: `{"n": int, "atoms": [{"rate": float, "mass": float}]}`."""

    n: PositiveInt
    atoms: List[MeasureAtom]
