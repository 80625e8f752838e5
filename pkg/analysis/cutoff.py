"""
cutoff.py

Cutoff times, asymmetric window bounds and cutoff profiles for rate measures,
plus diagnostics of a measure family along increasing n.
"""

import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from analysis.errors import DomainError, FamilyGenerationError, PreconditionError
from analysis.families import generate
from analysis.lambert import lambert_w
from analysis.separation import LOG2, sandwich_bounds, sep_tuple
from dependencies import logger
from schemas.cutoff import CutoffReport, FamilyDiagnostics, ProfileRow, SeparationProfile
from schemas.envelope import ZERO_ENVELOPE, PerturbationEnvelope
from schemas.family import FamilyDescriptor
from schemas.measure import RateMeasure

# Relative tolerance under which two maximand values count as a tie
TIE_TOLERANCE = 1e-9

# Relative spread under which a τκ sequence is reported as flat
FLAT_TOLERANCE = 1e-9

WINDOW_CHOICES = ("left", "right", "unit", "custom")


def cutoff_time(measure: RateMeasure) -> CutoffReport:
    """
    Compute τ_n = max_{λ >= κ_n} log(n·μ_n(0, λ]) / λ and the quantities derived from it.

    The maximum is taken over atoms only: between two consecutive atoms the
    numerator is constant while the denominator grows, so the ratio can only
    peak at an atom. λ* is the smallest atom whose value is within a relative
    1e-9 of the maximum.

    Args:
        measure (RateMeasure): The rate measure μ_n.

    Returns:
        CutoffReport: τ_n, λ*, κ_n, β_n, τ_nκ_n and the window bounds. b_right is
            absent when τ_nκ_n <= 0.
    """
    counts = measure.count_prefix
    values = np.log(counts) / measure.rate_array
    best = float(values.max())
    candidates = np.flatnonzero(values >= best - TIE_TOLERANCE * abs(best))
    k = int(candidates[0])

    lambda_star = float(measure.rate_array[k])
    tau = float(values[k])
    kappa = measure.kappa
    tau_kappa = tau * kappa
    below_unit_mass = bool(counts[0] < 1.0)
    if below_unit_mass:
        logger.warning(f"n·μ(0,κ] = {counts[0]:.10g} < 1: the maximand is negative at κ")

    b_right = float(lambert_w(tau_kappa)) / kappa if tau_kappa > 0 else None
    logger.debug(f"cutoff n={measure.n}: tau={tau:.10g}, lambda*={lambda_star:.10g}")
    return CutoffReport(
        n=measure.n,
        tau=tau,
        lambda_star=lambda_star,
        kappa=kappa,
        beta=float(counts[k]),
        tau_kappa=tau_kappa,
        b_left=1.0 / lambda_star,
        b_right=b_right,
        below_unit_mass=below_unit_mass,
    )


def window_length(report: CutoffReport, choice: str, b: Optional[float] = None) -> float:
    """
    Resolve a window choice to its length b.

    Raises:
        DomainError: For an unknown choice or a non-positive custom b.
        PreconditionError: For the right window when τ_nκ_n <= 0.
    """
    if choice == "left":
        return report.b_left
    if choice == "right":
        if report.b_right is None:
            raise PreconditionError("the right window needs τ_nκ_n > 0")
        return report.b_right
    if choice == "unit":
        return 1.0
    if choice == "custom":
        if b is None or not b > 0:
            raise DomainError("a custom window needs b > 0")
        return float(b)
    raise DomainError(f"unknown window choice {choice!r}")


def profile(
    measure: RateMeasure,
    window_choice: str,
    c_grid: Sequence[float],
    b: Optional[float] = None,
    envelope: PerturbationEnvelope = ZERO_ENVELOPE,
) -> SeparationProfile:
    """
    Evaluate the separation along t = τ_n + c·b.

    Args:
        measure (RateMeasure): The rate measure.
        window_choice (str): left (1/λ*), right (W(τκ)/κ), unit (1) or custom.
        c_grid (Sequence[float]): Offsets; evaluated in increasing order.
        b (float, optional): Window length for the custom choice.
        envelope (PerturbationEnvelope): Envelope used by the attached bounds.

    Returns:
        SeparationProfile: Rows for every c with t >= 0; bounds attached where
            t >= log 2/κ_n.
    """
    if len(c_grid) == 0:
        raise DomainError("the c grid is empty")
    report = cutoff_time(measure)
    window = window_length(report, window_choice, b)
    threshold = LOG2 / measure.kappa

    rows: List[ProfileRow] = []
    dropped = 0
    for c in sorted(float(c) for c in c_grid):
        t = report.tau + c * window
        if t < 0:
            dropped += 1
            continue
        lower = upper = None
        if t >= threshold:
            lower, upper = sandwich_bounds(measure, t, envelope)
        rows.append(ProfileRow(c=c, t=t, sep=sep_tuple(measure, t), lower=lower, upper=upper))

    if dropped:
        logger.info(f"dropped {dropped} grid points with t < 0")
    return SeparationProfile(
        report=report,
        window_choice=window_choice,
        window=window,
        rows=rows,
        dropped=dropped,
    )


def classify_trend(values: Sequence[float]) -> str:
    """Describe an observed sequence as increasing, decreasing, bounded (flat) or non-monotone."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return "bounded"
    spread = float(values.max() - values.min())
    if spread <= FLAT_TOLERANCE * max(1.0, float(np.abs(values).max())):
        return "bounded"
    steps = np.diff(values)
    if np.all(steps > 0):
        return "increasing"
    if np.all(steps < 0):
        return "decreasing"
    return "non-monotone"


def necessary_floor(report: CutoffReport, c: float) -> float:
    """
    Lower bound exp(-c·τ_nκ_n) on sep(c·τ_n) from the mass at κ_n alone.

    When τ_nκ_n stays bounded this floor stays away from 0 for every c > 1,
    which rules out a cutoff at τ_n.
    """
    return math.exp(-c * report.tau_kappa)


def right_window_theta_bound(report: CutoffReport, s: float) -> float:
    """Upper bound e^{-sκ_n}(τ_n/s + 1) on θ_n(τ_n + s), for s > 0."""
    if s <= 0:
        raise DomainError("the right-window bound needs s > 0")
    return math.exp(-s * report.kappa) * (report.tau / s + 1.0)


def family_diagnostics(
    family: FamilyDescriptor,
    n_list: Sequence[int],
    c_grid: Sequence[float] = (-1.0, 0.0, 1.0),
    window_choice: str = "unit",
    b: Optional[float] = None,
) -> FamilyDiagnostics:
    """
    Cutoff reports and profile samples of a family along increasing n.

    Args:
        family (FamilyDescriptor): Family to generate.
        n_list (Sequence[int]): Strictly increasing dimensions, each >= 1.
        c_grid (Sequence[float]): Offsets c for sep(τ_n + c·b).
        window_choice (str): Window used for b.
        b (float, optional): Custom window length.

    Returns:
        FamilyDiagnostics: Reports, the τ_nκ_n sequence with its trend, profile
            samples per n and the floor exp(-2τ_nκ_n) per n.

    Raises:
        DomainError: If n_list is empty, not strictly increasing or contains n < 1.
        FamilyGenerationError: If the family cannot be generated for some n.
    """
    ns = [int(n) for n in n_list]
    if not ns or min(ns) < 1 or any(b2 <= a for a, b2 in zip(ns, ns[1:])):
        raise DomainError("n_list must be a non-empty, strictly increasing list of n >= 1")
    cs = sorted(float(c) for c in c_grid)

    reports = []
    profiles = {}
    for n in ns:
        try:
            measure = generate(family, n).measure
        except FamilyGenerationError:
            raise
        except ValueError as exc:
            raise FamilyGenerationError(n, str(exc)) from exc
        report = cutoff_time(measure)
        reports.append(report)
        try:
            window = window_length(report, window_choice, b)
        except PreconditionError:
            window = None
        samples = []
        for c in cs:
            t = None if window is None else report.tau + c * window
            samples.append(None if t is None or t < 0 else sep_tuple(measure, t))
        profiles[n] = samples
        logger.info(f"{family.kind} n={n}: tau*kappa={report.tau_kappa:.10g}")

    tau_kappa = [r.tau_kappa for r in reports]
    return FamilyDiagnostics(
        family=family.kind,
        reports=reports,
        tau_kappa=tau_kappa,
        trend=classify_trend(tau_kappa),
        c_grid=cs,
        window_choice=window_choice,
        profiles=profiles,
        necessary_floor=[necessary_floor(r, 2.0) for r in reports],
    )


def level_crossing(
    tail: Callable[[float], float],
    level: float,
    lo: float = 0.0,
    hi: float = 1.0,
    tol: float = 1e-12,
) -> float:
    """
    Smallest t at which a non-increasing tail drops to `level` or below.

    The upper bracket is doubled until tail(hi) <= level, then the bracket is
    bisected down to a relative width `tol`.

    Raises:
        DomainError: If the tail never reaches the level.
    """
    for _ in range(1100):
        if tail(hi) <= level:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise DomainError(f"the tail does not fall to {level} on any finite horizon")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if tail(mid) <= level:
            hi = mid
        else:
            lo = mid
    return hi


def mixing_time(measure: RateMeasure, eps: float) -> float:
    """Separation mixing time: the smallest t with sep(t) <= eps, for eps in (0, 1)."""
    if not 0.0 < eps < 1.0:
        raise DomainError("eps must lie in (0, 1)")
    return level_crossing(lambda t: sep_tuple(measure, t), eps, hi=max(1.0 / measure.kappa, 1e-12))
