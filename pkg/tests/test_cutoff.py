import math

import numpy as np
import pytest

from analysis.cutoff import (
    classify_trend,
    cutoff_time,
    family_diagnostics,
    level_crossing,
    mixing_time,
    necessary_floor,
    profile,
    right_window_theta_bound,
    window_length,
)
from analysis.errors import DomainError, FamilyGenerationError, PreconditionError
from analysis.families import odd_windows_rho
from analysis.lambert import lambert_w
from analysis.rate_measure import build_measure, from_atoms
from analysis.separation import LOG2, sep_tuple, theta
from schemas.family import FamilyDescriptor
from tests.conftest import random_measures

ODD_WINDOWS = FamilyDescriptor(kind="odd_windows")


def test_cutoff_time_point_mass(point_mass):
    report = cutoff_time(point_mass)
    assert report.tau == pytest.approx(2.3025850930, abs=1e-10)
    assert report.lambda_star == 2.0
    assert report.beta == 100
    assert report.kappa == 2.0
    assert report.b_left == 0.5
    assert report.b_right == pytest.approx(lambert_w(math.log(100)) / 2)


def test_cutoff_time_odd_windows():
    """
    Test τ_n = ln 10, λ* = 2 and β_n = 100 for the odd-windows measure at n = 10^4.
    """
    report = cutoff_time(build_measure(2.0 * odd_windows_rho(10**4)))
    assert report.lambda_star == 2.0
    assert report.beta == pytest.approx(100, rel=1e-9)
    assert report.tau == pytest.approx(math.log(10), rel=1e-9)
    assert report.tau_kappa == pytest.approx(math.log(10**4) / 2, rel=1e-9)


def test_cutoff_time_two_atoms(two_atoms):
    report = cutoff_time(two_atoms)
    assert report.tau == pytest.approx(3.9120230054, abs=1e-10)
    assert report.lambda_star == 1.0
    assert report.beta == 50


def test_cutoff_time_takes_smallest_maximizer():
    """
    Test that ties pick the smallest rate: log(2)/1 and log(4)/2 are equal.
    """
    report = cutoff_time(build_measure([1.0, 1.0, 2.0, 2.0]))
    assert report.lambda_star == 1.0
    assert report.beta == 2


def test_cutoff_time_flags_mass_below_one_coordinate():
    measure = from_atoms(2, [(1.0, 0.1), (2.0, 0.9)])
    report = cutoff_time(measure)
    assert report.below_unit_mass
    assert "below_unit_mass" not in report.model_dump()


def test_cutoff_time_nonpositive_tau_kappa_has_no_right_window():
    measure = from_atoms(1, [(1.0, 0.5), (2.0, 0.5)])
    report = cutoff_time(measure)
    assert report.tau_kappa <= 0
    assert report.b_right is None
    with pytest.raises(PreconditionError):
        window_length(report, "right")


def test_report_invariants():
    for measure in random_measures(200, seed=12):
        report = cutoff_time(measure)
        assert report.beta == pytest.approx(math.exp(report.tau * report.lambda_star), rel=1e-10)
        assert report.kappa <= report.lambda_star <= measure.max_rate
        assert 1 <= report.beta <= measure.n
        if report.tau_kappa >= math.e:
            assert report.b_left <= report.b_right


def test_time_scaling_covariance():
    """
    Test that multiplying every rate by s divides τ and both windows by s exactly.
    """
    for measure in random_measures(50, seed=13):
        report = cutoff_time(measure)
        for s in (0.25, 2.0, 8.0):
            scaled = build_measure(np.repeat(measure.rate_array * s, measure.counts))
            other = cutoff_time(scaled)
            assert other.tau == report.tau / s
            assert other.b_left == report.b_left / s
            assert other.beta == report.beta
            assert other.lambda_star * other.tau == report.lambda_star * report.tau
            if report.b_right is not None:
                assert other.b_right == report.b_right / s


def test_theta_lower_bound_around_tau():
    """
    Test θ(τ + c/λ*) >= e^{-c} wherever τ + c/λ* >= 0.
    """
    for measure in random_measures(200, seed=14):
        report = cutoff_time(measure)
        for c in (-2, -1, 0, 1, 2):
            t = report.tau + c / report.lambda_star
            if t < 0:
                continue
            assert theta(measure, t) >= math.exp(-c) - 1e-10


def test_right_window_theta_bound():
    for measure in random_measures(200, seed=15):
        report = cutoff_time(measure)
        if report.b_right is None:
            continue
        for c in (0.5, 1.0, 2.0, 5.0):
            s = c * report.b_right
            assert theta(measure, report.tau + s) <= right_window_theta_bound(report, s) * (1 + 1e-9)
    with pytest.raises(DomainError):
        right_window_theta_bound(report, 0.0)


def test_profile_point_mass(point_mass):
    result = profile(point_mass, "unit", [0.0])
    assert result.rows[0].sep == pytest.approx(0.6339676587, abs=1e-10)
    assert result.window == 1.0


def test_profile_decreasing_and_bounds_attached(point_mass):
    """
    Test a symmetric c grid: sep strictly decreases and bounds appear only from t >= log 2/κ.
    """
    grid = [c / 2 for c in range(-4, 5)]
    result = profile(point_mass, "unit", grid)
    seps = [row.sep for row in result.rows]
    assert all(b < a for a, b in zip(seps, seps[1:]))
    threshold = LOG2 / point_mass.kappa
    for row in result.rows:
        assert (row.lower is not None) == (row.t >= threshold)
        if row.lower is not None:
            assert row.lower <= row.sep <= row.upper


def test_profile_drops_negative_times(point_mass):
    result = profile(point_mass, "unit", [-10.0, -3.0, 0.0, 1.0])
    assert result.dropped == 2
    assert [row.c for row in result.rows] == [0.0, 1.0]
    assert all(row.t >= 0 for row in result.rows)


def test_profile_sorts_grid(point_mass):
    result = profile(point_mass, "unit", [1.0, -1.0, 0.0])
    assert [row.c for row in result.rows] == [-1.0, 0.0, 1.0]


def test_profile_deep_right_tail(two_atoms):
    result = profile(two_atoms, "right", [50.0])
    assert result.rows[0].sep < 1e-6


def test_profile_rejects_empty_grid_and_bad_window(point_mass):
    with pytest.raises(DomainError):
        profile(point_mass, "unit", [])
    with pytest.raises(DomainError):
        profile(point_mass, "custom", [0.0])
    with pytest.raises(DomainError):
        profile(point_mass, "custom", [0.0], b=-1.0)
    assert profile(point_mass, "custom", [1.0], b=0.25).rows[0].t == pytest.approx(math.log(10) + 0.25)


def test_odd_windows_asymmetric_windows():
    """
    Test the right window W(τκ)/κ shrinking the profile at c = 2 while the left window 1/λ* does not.

    sep(τ + 2·b_R) decreases along n and ends below 0.15; sep(τ + 3·b_L) stays above 0.08.
    """
    right, left = [], []
    for n in (10**3, 10**4, 10**5, 10**6):
        measure = build_measure(2.0 * odd_windows_rho(n))
        report = cutoff_time(measure)
        right.append(sep_tuple(measure, report.tau + 2 * report.b_right))
        left.append(sep_tuple(measure, report.tau + 3 * report.b_left))
    assert all(b < a for a, b in zip(right, right[1:]))
    assert right[-1] < 0.15
    assert min(left) > 0.08


def test_symmetric_profile_matches_limit():
    measure = build_measure([2.0] * 10**4)
    for c in range(-3, 4):
        limit = 1 - math.exp(-math.exp(-2 * c))
        assert abs(sep_tuple(measure, math.log(10**4) / 2 + c) - limit) < 0.01


def test_classify_trend():
    assert classify_trend([1.0, 2.0, 3.0]) == "increasing"
    assert classify_trend([3.0, 2.0]) == "decreasing"
    assert classify_trend([0.5, 0.5, 0.5]) == "bounded"
    assert classify_trend([1.0, 3.0, 2.0]) == "non-monotone"


def test_family_diagnostics_symmetric():
    result = family_diagnostics(FamilyDescriptor(kind="symmetric"), [10, 100, 1000])
    expected = [math.log(10), math.log(100), math.log(1000)]
    assert result.tau_kappa == pytest.approx(expected, rel=1e-12)
    assert result.trend == "increasing"
    assert result.necessary_floor == pytest.approx([math.exp(-2 * v) for v in expected])
    assert set(result.profiles) == {10, 100, 1000}
    assert all(len(samples) == 3 for samples in result.profiles.values())


def test_family_diagnostics_slow_coordinate_is_bounded():
    """
    Test the family with one coordinate at ρ = 1/(2 log n): τκ stays at 1/2, so no cutoff.
    """
    result = family_diagnostics(FamilyDescriptor(kind="slow_coordinate"), [10, 100, 1000, 10**4])
    assert result.tau_kappa == pytest.approx([0.5] * 4, rel=1e-12)
    assert result.trend == "bounded"
    assert min(result.necessary_floor) == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_family_diagnostics_odd_windows():
    ns = [100, 10**4]
    result = family_diagnostics(ODD_WINDOWS, ns)
    assert result.tau_kappa == pytest.approx([math.log(n) / 2 for n in ns], rel=1e-9)
    assert result.trend == "increasing"


def test_family_diagnostics_errors():
    with pytest.raises(DomainError):
        family_diagnostics(ODD_WINDOWS, [100, 10])
    with pytest.raises(DomainError):
        family_diagnostics(ODD_WINDOWS, [])
    with pytest.raises(FamilyGenerationError) as info:
        family_diagnostics(ODD_WINDOWS, [1, 10])
    assert info.value.n == 1


def test_necessary_floor_bounds_separation():
    for measure in random_measures(50, seed=16):
        report = cutoff_time(measure)
        assert sep_tuple(measure, 2 * report.tau) >= necessary_floor(report, 2.0) - 1e-12


def test_level_crossing_and_mixing_time(point_mass):
    t = level_crossing(lambda s: math.exp(-s), 0.25)
    assert t == pytest.approx(math.log(4), rel=1e-10)

    eps = 0.1
    t_mix = mixing_time(point_mass, eps)
    assert sep_tuple(point_mass, t_mix) <= eps
    assert sep_tuple(point_mass, t_mix * (1 - 1e-9)) > eps
    with pytest.raises(DomainError):
        mixing_time(point_mass, 1.5)
