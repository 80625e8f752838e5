from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator


class CutoffReport(BaseModel):
    """
    Cutoff time, critical rate and window bounds of one rate measure.

    Attributes:
        n (int): Tuple dimension.
        tau (float): Cutoff time τ_n = max_λ log(n·μ_n(0,λ])/λ.
        lambda_star (float): Smallest atom attaining the maximum.
        kappa (float): Smallest rate κ_n.
        beta (float): β_n = n·μ_n(0,λ*] = exp(τ_n·λ*).
        tau_kappa (float): The diagnostic τ_n·κ_n; cutoff along a sequence
            requires it to diverge.
        b_left (float): Left-window bound 1/λ*.
        b_right (float, optional): Right-window bound W(τ_nκ_n)/κ_n, absent when
            τ_nκ_n <= 0.
        below_unit_mass (bool): Set when n·μ_n(0,κ_n] < 1, where the maximand is
            negative at the first atom. Not serialized.
    """

    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    tau: float
    lambda_star: float
    kappa: float
    beta: float
    tau_kappa: float
    b_left: float
    b_right: Optional[float] = None
    below_unit_mass: bool = Field(default=False, exclude=True)


class ProfileRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float
    t: float
    sep: float
    lower: Optional[float] = None
    upper: Optional[float] = None


class SeparationProfile(BaseModel):
    """
    Separation evaluated along t = τ_n + c·b for a grid of c.

    Rows are sorted by c. Grid points with t < 0 are dropped and counted in
    `dropped`. Sandwich bounds are attached only where t >= log 2/κ_n.
    """

    model_config = ConfigDict(frozen=True)

    report: CutoffReport
    window_choice: Literal["left", "right", "unit", "custom"]
    window: float
    rows: List[ProfileRow]
    dropped: int = 0

    @model_validator(mode="after")
    def check_rows(self):
        cs = [row.c for row in self.rows]
        if cs != sorted(cs):
            raise ValueError("profile rows must be sorted by c")
        if any(row.t < 0 for row in self.rows):
            raise ValueError("profile rows must have t >= 0")
        return self


class FamilyDiagnostics(BaseModel):
    """
    Cutoff reports of one family along increasing n.

    The trend of τ_nκ_n is reported as observed data (increasing, decreasing,
    bounded when flat, or non-monotone); it is never turned into a yes/no
    cutoff verdict, since cutoff is a statement about the limit n → ∞.

    Attributes:
        family (str): Family kind.
        reports (list[CutoffReport]): One per n, in n order.
        tau_kappa (list[float]): τ_nκ_n per n.
        trend (str): Observed monotone trend of tau_kappa.
        c_grid (list[float]): Offsets at which the profile was sampled.
        window_choice (str): Window b used for t = τ_n + c·b.
        profiles (dict[int, list[float | None]]): sep(τ_n + c·b) per n and c,
            None where t < 0 or the window is undefined.
        necessary_floor (list[float]): exp(-2τ_nκ_n), a lower bound on sep(2τ_n).
    """

    model_config = ConfigDict(frozen=True)

    family: str
    reports: List[CutoffReport]
    tau_kappa: List[float]
    trend: Literal["increasing", "decreasing", "bounded", "non-monotone"]
    c_grid: List[float]
    window_choice: str
    profiles: Dict[int, List[Optional[float]]]
    necessary_floor: List[float]

    def rows(self) -> List[Tuple]:
        """Flattened (n, report fields..., floor, sep per c) rows for tabular output."""
        table = []
        for report, floor in zip(self.reports, self.necessary_floor):
            table.append(
                (
                    report.n,
                    report.tau,
                    report.lambda_star,
                    report.kappa,
                    report.beta,
                    report.tau_kappa,
                    report.b_left,
                    report.b_right,
                    floor,
                    *self.profiles[report.n],
                )
            )
        return table
