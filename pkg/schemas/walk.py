import math
from functools import cached_property
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, conint, model_validator

# Entropy accepted by numpy SeedSequence: a non-negative 64-bit integer
Seed = conint(ge=0, lt=2**64)


class WalkSpec(BaseModel):
    """
    Continuous-time random walk on the hypercube Z_2^n.

    Coordinate i carries a Poisson clock of rate 2ρ_i; at each ring the
    coordinate is set to a fair random bit (flipped with probability 1/2).
    Its first ring is an optimal strong stationary time for that coordinate.

    Attributes:
        n (int): Dimension.
        rho (tuple[float]): Positive, finite coordinate rates, one per coordinate.
    """

    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    rho: Tuple[float, ...]

    @model_validator(mode="after")
    def check_rates(self):
        if len(self.rho) != self.n:
            raise ValueError(f"expected {self.n} coordinate rates, got {len(self.rho)}")
        for i, r in enumerate(self.rho):
            if not math.isfinite(r) or r <= 0:
                raise ValueError(f"coordinate rate at index {i} is invalid: {r!r}")
        return self

    @cached_property
    def clock_rates(self) -> np.ndarray:
        """Poisson clock rate 2ρ_i per coordinate."""
        return 2.0 * np.asarray(self.rho, dtype=float)


class SimResult(BaseModel):
    """
    Monte-Carlo samples of strong stationary times or coupling times.

    Attributes:
        spec (WalkSpec): The simulated walk.
        kind (str): "sst" or "coupling".
        seed (int): Run seed.
        replicas (int): Number of samples.
        samples (tuple[float]): One time per replica, indexed by replica.
        disagreement (tuple[bool], optional): Fixed initial disagreement mask
            used by a coupling run; None means a stationary second copy.
    """

    model_config = ConfigDict(frozen=True)

    spec: WalkSpec
    kind: Literal["sst", "coupling"]
    seed: Seed
    replicas: PositiveInt
    samples: Tuple[float, ...]
    disagreement: Optional[Tuple[bool, ...]] = None

    @model_validator(mode="after")
    def check_samples(self):
        if len(self.samples) != self.replicas:
            raise ValueError("there must be exactly one sample per replica")
        if min(self.samples) < 0:
            raise ValueError("sampled times must be non-negative")
        return self

    @cached_property
    def sorted_samples(self) -> np.ndarray:
        return np.sort(np.asarray(self.samples, dtype=float))

    def survival(self, t):
        """
        Empirical survival P(T > t): the fraction of samples strictly above t.

        Non-increasing and right-continuous in t, valued in [0, 1]; accepts a
        scalar or an array of times.
        """
        above = self.replicas - np.searchsorted(self.sorted_samples, t, side="right")
        values = above / self.replicas
        return float(values) if np.ndim(values) == 0 else values

    def quantiles(self, levels: Sequence[float] = (0.5, 0.9, 0.99)) -> dict:
        values = np.quantile(self.sorted_samples, levels)
        return {f"{level:g}": float(v) for level, v in zip(levels, values)}
