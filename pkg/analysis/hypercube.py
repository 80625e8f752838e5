"""
hypercube.py

The continuous-time random walk on Z_2^n with coordinate rates ρ_i: exact
tails of its optimal strong stationary time and of the independent-then-
synchronous coupling, a brute-force separation oracle over all 2^n states,
and Monte-Carlo samplers for both times.

The samplers draw the exponential times directly instead of simulating clock
trajectories; the two are equal in distribution.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np

from analysis.cutoff import level_crossing
from analysis.errors import DomainError, RefusalError
from analysis.separation import log1mexp, sep_product
from dependencies import logger
from dependencies.rng import run_blocks
from schemas.walk import SimResult, WalkSpec

# Largest dimension the brute-force oracle accepts (2^20 states)
BRUTE_FORCE_MAX_N = 20


def exact_sep_tail(spec: WalkSpec, t: float) -> float:
    """
    Separation at time t, equal to P(max_i T_i > t) for the first clock rings T_i.

    1 - Π_i (1 - e^{-2ρ_i t}), combined coordinate by coordinate.
    """
    if t <= 0:
        return 1.0
    return sep_product(np.exp(-spec.clock_rates * t))


def _mask(spec: WalkSpec, disagreement: Optional[Sequence[bool]]) -> Optional[np.ndarray]:
    if disagreement is None:
        return None
    mask = np.asarray(disagreement, dtype=bool)
    if mask.shape != (spec.n,):
        raise DomainError(f"the disagreement mask needs {spec.n} entries")
    return mask


def exact_coupling_tail(
    spec: WalkSpec,
    t: float,
    disagreement: Optional[Sequence[bool]] = None,
) -> float:
    """
    Tail P(T^c > t) of the coupling that moves disagreeing coordinates
    independently until they first agree and synchronously afterwards.

    With a stationary second copy each coordinate disagrees with probability
    1/2 and, if so, agrees at the first ring of its rate-2ρ_i clock:
    1 - Π_i (1 - e^{-2ρ_i t}/2). A fixed `disagreement` mask replaces the
    coin: masked coordinates contribute (1 - e^{-2ρ_i t}), the others nothing.

    Args:
        spec (WalkSpec): The walk.
        t (float): Time t >= 0.
        disagreement (Sequence[bool], optional): Initial disagreement per coordinate.

    Returns:
        float: Coupling-time tail in [0, 1].
    """
    mask = _mask(spec, disagreement)
    decay = np.exp(-spec.clock_rates * max(t, 0.0))
    if mask is None:
        return min(1.0, max(0.0, -math.expm1(float(np.sum(np.log1p(-0.5 * decay))))))
    if not mask.any():
        return 0.0
    if t <= 0:
        return 1.0
    log_agreed = float(np.sum(log1mexp(spec.clock_rates[mask] * t)))
    return min(1.0, max(0.0, -math.expm1(log_agreed)))


def brute_force_sep(spec: WalkSpec, t: float, start: Optional[Sequence[int]] = None) -> float:
    """
    Separation max_y (1 - P^t(start, y) / 2^{-n}) by enumeration of all states.

    Each coordinate stays put with probability (1 + e^{-2ρ_i t})/2. The row of
    the product kernel out of `start` is built as an n-fold Kronecker product,
    which needs O(2^n) memory and never forms the full 2^n × 2^n matrix.

    Args:
        spec (WalkSpec): The walk, n <= 20.
        t (float): Time t >= 0.
        start (Sequence[int], optional): Starting bit vector; all zeros by default.

    Returns:
        float: Separation in [0, 1].

    Raises:
        RefusalError: If n > 20.
    """
    if spec.n > BRUTE_FORCE_MAX_N:
        raise RefusalError(f"brute force over 2^{spec.n} states refused (n <= {BRUTE_FORCE_MAX_N})")
    bits = np.zeros(spec.n, dtype=int) if start is None else np.asarray(start, dtype=int)
    if bits.shape != (spec.n,) or np.any((bits != 0) & (bits != 1)):
        raise DomainError("start must be a 0/1 vector of length n")

    decay = np.exp(-spec.clock_rates * max(t, 0.0))
    row = np.ones(1)
    for bit, d in zip(bits, decay):
        stay, move = 0.5 * (1.0 + d), 0.5 * (1.0 - d)
        row = np.kron(row, [stay, move] if bit == 0 else [move, stay])
    sep = float(np.max(1.0 - row * 2.0**spec.n))
    return min(1.0, max(0.0, sep))


def _draw_samples(spec: WalkSpec, kind: str, replicas: int, seed: int, draw: Callable) -> np.ndarray:
    if replicas < 1:
        raise DomainError("replicas must be >= 1")
    logger.debug(f"simulating {replicas} {kind} replicas for n={spec.n} with seed {seed}")
    return run_blocks(replicas, seed, draw)


def simulate_sst(spec: WalkSpec, replicas: int, seed: int) -> SimResult:
    """
    Sample the optimal strong stationary time max_i T_i, T_i ~ Exp(2ρ_i).

    Reproducible given (seed, replicas) and the configured block size.
    """
    scales = 1.0 / spec.clock_rates

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.exponential(scales, size=(size, spec.n)).max(axis=1)

    samples = _draw_samples(spec, "sst", replicas, seed, draw)
    return SimResult(spec=spec, kind="sst", seed=seed, replicas=replicas, samples=tuple(samples.tolist()))


def simulate_coupling(
    spec: WalkSpec,
    replicas: int,
    seed: int,
    disagreement: Optional[Sequence[bool]] = None,
) -> SimResult:
    """
    Sample the coupling time of the independent-then-synchronous coupling.

    Each replica draws the initial disagreement set (a fair coin per
    coordinate, or the fixed mask) and returns the largest Exp(2ρ_i) agreement
    time over disagreeing coordinates, 0 when none disagree.
    """
    mask = _mask(spec, disagreement)
    scales = 1.0 / spec.clock_rates

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        if mask is None:
            disagree = rng.random((size, spec.n)) < 0.5
        else:
            disagree = np.broadcast_to(mask, (size, spec.n))
        times = rng.exponential(scales, size=(size, spec.n))
        return np.where(disagree, times, 0.0).max(axis=1)

    samples = _draw_samples(spec, "coupling", replicas, seed, draw)
    return SimResult(
        spec=spec,
        kind="coupling",
        seed=seed,
        replicas=replicas,
        samples=tuple(samples.tolist()),
        disagreement=None if mask is None else tuple(bool(b) for b in mask),
    )


def dkw_half_width(replicas: int, alpha: float = 0.01) -> float:
    """Dvoretzky–Kiefer–Wolfowitz band half-width √(ln(2/α) / (2·replicas))."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * replicas))


def sup_distance(result: SimResult, exact_tail: Callable[[float], float], t_grid: Sequence[float]) -> float:
    """Largest |empirical survival - exact tail| over a grid of times."""
    grid = np.asarray(t_grid, dtype=float)
    empirical = np.atleast_1d(result.survival(grid))
    exact = np.array([exact_tail(float(t)) for t in grid])
    return float(np.max(np.abs(empirical - exact)))


def exact_tail_for(result: SimResult) -> Callable[[float], float]:
    """The exact tail matching a simulation run's kind (and disagreement mask)."""
    if result.kind == "sst":
        return lambda t: exact_sep_tail(result.spec, t)
    return lambda t: exact_coupling_tail(result.spec, t, result.disagreement)


def crossing_gap(spec: WalkSpec, level: float = 0.5) -> float:
    """|t_coupling - t_sep| where the coupling and separation tails cross `level`."""
    t_sep = level_crossing(lambda t: exact_sep_tail(spec, t), level)
    t_coupling = level_crossing(lambda t: exact_coupling_tail(spec, t), level)
    return abs(t_coupling - t_sep)
