import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from schemas.measure import MASS_TOLERANCE


class RandomRateModel(BaseModel):
    """
    Law of a randomly chosen coordinate rate: P(ρ = p_k) = q_k, k = 1..m.

    Attributes:
        p (tuple[float]): Positive, finite rate values.
        q (tuple[float]): Probabilities summing to 1.
    """

    model_config = ConfigDict(frozen=True)

    p: Tuple[float, ...]
    q: Tuple[float, ...]

    @model_validator(mode="after")
    def check_law(self):
        if not self.p or len(self.p) != len(self.q):
            raise ValueError("p and q must be non-empty and of equal length")
        if any(not math.isfinite(v) or v <= 0 for v in self.p):
            raise ValueError("every p_k must be positive and finite")
        if any(not 0 <= v <= 1 for v in self.q):
            raise ValueError("every q_k must lie in [0, 1]")
        if abs(math.fsum(self.q) - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"q sums to {math.fsum(self.q)!r}, not 1")
        return self

    @property
    def p_star(self) -> float:
        """Smallest rate value p*."""
        return min(self.p)

    @property
    def q_star(self) -> float:
        """Total probability of the smallest rate value."""
        p_star = self.p_star
        return math.fsum(q for p, q in zip(self.p, self.q) if p == p_star)


class AnnealedSeparation(BaseModel):
    """Separation averaged over the rate randomness at t = (log n + c)/(2p*)."""

    model_config = ConfigDict(frozen=True)

    n: int
    c: float
    value: float
    clamped: bool = False
