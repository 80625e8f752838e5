import math
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PositiveInt, confloat, model_validator

from schemas.envelope import PerturbationEnvelope
from schemas.walk import Seed


class GridSpec(BaseModel):
    """
    Inclusive grid `min:max:step`.

    Points are min + k·step. When max lies within half a step of a grid
    point it is included, and the grid never goes past max: a last point
    overshooting max is replaced by max. A single number is a one-point grid.
    """

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: confloat(gt=0) = 1.0

    @model_validator(mode="after")
    def check_order(self):
        if self.stop < self.start:
            raise ValueError(f"grid max {self.stop} is below grid min {self.start}")
        return self

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """
        Parse `min:max:step` or a single number.

        Raises:
            ValueError: On any other shape or non-numeric part.
        """
        parts = [p.strip() for p in text.split(":")]
        if len(parts) == 1:
            value = float(parts[0])
            return cls(start=value, stop=value)
        if len(parts) != 3:
            raise ValueError(f"expected min:max:step, got {text!r}")
        return cls(start=float(parts[0]), stop=float(parts[1]), step=float(parts[2]))

    def values(self) -> List[float]:
        count = math.floor((self.stop - self.start) / self.step + 0.5) + 1
        return [min(self.start + k * self.step, self.stop) for k in range(count)]


class RunConfig(BaseModel):
    """
    Validated settings of one CLI invocation.

    Attributes:
        subcommand (str): cutoff, profile, bounds, simulate, evt or diagnose.
        family (str, optional): Preset family; exclusive with measure_file.
        measure_file (Path, optional): CSV or JSON measure; exclusive with family.
        n_list (list[int]): Dimensions to evaluate.
        p, q (tuple[float]): Rate law for random_rates and evt.
        family_seed (int): Seed of random_rates draws, in [0, 2^64).
        c_grid, t_grid (GridSpec, optional): Offsets and times.
        window (str): left, right, unit or custom; b is the custom length.
        envelope (PerturbationEnvelope): Envelope for bounds.
        kind (str): sst or coupling, for simulate.
        replicas (int): Monte-Carlo replicas.
        seed (int): Monte-Carlo seed, in [0, 2^64).
        output (Path, optional): Output file; defaults to CUTOFF_OUTPUT_DIR or stdout.
        comparison (Path, optional): simulate only, `t,empirical,exact` CSV.
        format (str): csv or json.
    """

    model_config = ConfigDict(frozen=True)

    subcommand: Literal["cutoff", "profile", "bounds", "simulate", "evt", "diagnose"]
    family: Optional[Literal["symmetric", "odd_windows", "random_rates", "slow_coordinate"]] = None
    measure_file: Optional[Path] = None
    n_list: List[PositiveInt] = []
    p: Tuple[float, ...] = ()
    q: Tuple[float, ...] = ()
    family_seed: Seed = 0
    c_grid: Optional[GridSpec] = None
    t_grid: Optional[GridSpec] = None
    window: Literal["left", "right", "unit", "custom"] = "unit"
    b: Optional[confloat(gt=0)] = None
    envelope: PerturbationEnvelope = PerturbationEnvelope()
    kind: Literal["sst", "coupling"] = "sst"
    replicas: PositiveInt = 10000
    seed: Seed = 0
    output: Optional[Path] = None
    comparison: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def check_sources(self):
        """
        Enforce exactly one measure source, the grids each subcommand needs and
        the parameters each family needs.
        """
        if self.subcommand == "evt":
            if not self.p or not self.q:
                raise ValueError("evt needs --p and --q")
            if not self.n_list or self.c_grid is None:
                raise ValueError("evt needs --n and --c")
            return self
        if (self.family is None) == (self.measure_file is None):
            raise ValueError("give exactly one of --family or --measure-file")
        if self.family is not None and not self.n_list:
            raise ValueError("--family needs --n")
        if self.family == "random_rates" and (not self.p or not self.q):
            raise ValueError("random_rates needs --p and --q")
        if self.subcommand in ("profile", "diagnose") and self.c_grid is None:
            raise ValueError(f"{self.subcommand} needs --c")
        if self.subcommand == "bounds" and self.t_grid is None:
            raise ValueError("bounds needs --t")
        if self.subcommand in ("profile", "bounds", "simulate") and len(self.n_list) > 1:
            raise ValueError(f"{self.subcommand} takes a single --n")
        if self.subcommand == "diagnose" and self.family is None:
            raise ValueError("diagnose needs --family")
        if self.window == "custom" and self.b is None:
            raise ValueError("--window custom needs --b")
        return self
