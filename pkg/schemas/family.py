from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, model_validator

from schemas.evt import RandomRateModel
from schemas.measure import RateMeasure
from schemas.walk import Seed, WalkSpec

FAMILY_KINDS = ("symmetric", "odd_windows", "random_rates", "slow_coordinate", "from_file")


class FamilyDescriptor(BaseModel):
    """
    A named sequence of rate measures indexed by n.

    Kinds:
        symmetric        every coordinate rate ρ = 1
        odd_windows      ρ_i = max{1, 2·log_n(i)}, i = 1..n
        random_rates     n i.i.d. coordinate rates drawn from `model` with `seed`
        slow_coordinate  one coordinate with ρ = 1/(2·log n), the rest ρ = 1
        from_file        a fixed measure read from `path`
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["symmetric", "odd_windows", "random_rates", "slow_coordinate", "from_file"]
    model: Optional[RandomRateModel] = None
    seed: Optional[Seed] = None
    path: Optional[Path] = None

    @model_validator(mode="after")
    def check_parameters(self):
        if self.kind == "random_rates" and (self.model is None or self.seed is None):
            raise ValueError("random_rates needs a rate model and a seed")
        if self.kind == "from_file" and self.path is None:
            raise ValueError("from_file needs a path")
        return self


class FamilyMember(BaseModel):
    """A generated measure, with its walk when the rates are hypercube coordinate rates."""

    model_config = ConfigDict(frozen=True)

    measure: RateMeasure
    walk: Optional[WalkSpec] = None
