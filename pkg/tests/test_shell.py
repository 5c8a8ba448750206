import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from casimir_bounce.constants import SOLAR_MASS, casimir_constant_geometric, mass_to_geometric
from casimir_bounce.errors import DomainError
from casimir_bounce.shell import (
    ShellScenario, apex_radius, classify_bounce, eom_rhs, proper_time_trajectory, rdot_sq,
)

masses = st.floats(min_value=1e-3, max_value=1e6)


def free_fall_clock(R, M):
    # antiderivative of R / sqrt(M R + M^2/4) for the C = 0 infall
    w = M * R + M * M / 4.0
    return ((2.0 / 3.0) * w**1.5 - (M * M / 2.0) * math.sqrt(w)) / (M * M)


# -- equation of motion ------------------------------------------------------

def test_free_fall_rhs():
    s = ShellScenario(2.0)
    assert eom_rhs(5.0, s) == pytest.approx(1.0 + 2.0 / 10.0, rel=1e-15)
    assert rdot_sq(5.0, s) == pytest.approx(2.0 / 5.0 + 4.0 / 100.0, rel=1e-15)


def test_rest_at_infinity():
    s = ShellScenario(1.0, 0.5)
    assert eom_rhs(1e12, s) == pytest.approx(1.0, abs=1e-11)
    values = [rdot_sq(R, s) for R in (1e3, 1e6, 1e9, 1e12)]
    assert all(v > 0.0 for v in values)
    assert values == sorted(values, reverse=True)
    assert values[-1] < 1e-11


def test_unit_turning_point():
    s = ShellScenario(1.0, 2.0)
    assert apex_radius(s) == 2.0
    assert eom_rhs(2.0, s) == pytest.approx(1.0, rel=1e-15)
    assert rdot_sq(2.0, s) == pytest.approx(0.0, abs=1e-15)
    assert rdot_sq(2.5, s) < 0.0 < rdot_sq(1.5, s)


def test_rhs_just_outside_apex():
    # x(R) is ~ -1e-16 here, so 1 + x alone would round to exactly 1
    s = ShellScenario(1.0, 2.0)
    R = math.nextafter(2.0, 3.0)
    assert rdot_sq(R, s) < 0.0
    assert eom_rhs(R, s) < 1.0


def test_literal_form_of_the_rhs():
    s = ShellScenario(1.3, 0.7)
    for R in (0.3, 1.0, 7.0, 100.0):
        k = s.C / (2 * s.M * R)
        assert eom_rhs(R, s) == pytest.approx(1 - k + (s.M / (2 * R)) / (1 - k), rel=1e-14)


@pytest.mark.parametrize("R", [0.5, 0.25, -1.0, float("nan")])
def test_inside_singular_radius(R):
    s = ShellScenario(1.0, 1.0)
    with pytest.raises(DomainError):
        eom_rhs(R, s)
    with pytest.raises(DomainError):
        rdot_sq(R, s)


@pytest.mark.parametrize("kwargs", [dict(M=0.0), dict(M=1.0, C=-1.0), dict(M=1.0, C=2.0, R_start=1.0)])
def test_scenario_domain(kwargs):
    with pytest.raises(DomainError):
        ShellScenario(**kwargs)


@settings(max_examples=300, deadline=None)
@given(masses, st.floats(min_value=1e-3, max_value=1e6))
def test_free_fall_reduction(M, x):
    R = x * M
    s = ShellScenario(M)
    expected = M / R + M * M / (4.0 * R * R)
    assert abs(rdot_sq(R, s) - expected) <= 4 * math.ulp(expected)


@settings(max_examples=300, deadline=None)
@given(masses, st.floats(min_value=0.0, max_value=20.0), st.floats(min_value=1e-6, max_value=1e3))
def test_rhs_above_one_iff_allowed(M, c_ratio, x):
    s = ShellScenario(M, c_ratio * M * M)
    R = s.singular_radius + x * M
    assert (eom_rhs(R, s) >= 1.0) == (rdot_sq(R, s) >= 0.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-2, max_value=1e2), st.floats(min_value=0.01, max_value=0.9),
       st.floats(min_value=1.0, max_value=1e3))
def test_rdot_sq_increases_with_mass(M, c_ratio, x):
    C = c_ratio * M * M
    heavier = ShellScenario(1.05 * M, C)
    R = x * M + heavier.singular_radius + ShellScenario(M, C).singular_radius
    assert rdot_sq(R, heavier) > rdot_sq(R, ShellScenario(M, C))


# -- classification ----------------------------------------------------------

def test_classify_unit_turning_point():
    cls = classify_bounce(ShellScenario(1.0, 2.0))
    assert cls.kind == "turning_point"
    assert cls.R_critical == 2.0
    assert cls.paper_approx_R_min == 1.0
    assert cls.R_rootfind == pytest.approx(2.0, rel=1e-12)


def test_classify_free_fall():
    cls = classify_bounce(ShellScenario(1.0))
    assert (cls.kind, cls.R_critical, cls.paper_approx_R_min) == ("no_bounce", 0.0, 0.0)


def test_classify_boundary_is_singular():
    cls = classify_bounce(ShellScenario(1.0, 1.0))
    assert cls.kind == "singular_approach"
    assert cls.R_critical == 0.5


def test_classify_solar_mass():
    M = mass_to_geometric(SOLAR_MASS)
    C = casimir_constant_geometric()
    cls = classify_bounce(ShellScenario(M, C))
    assert cls.kind == "singular_approach"
    assert cls.R_critical == pytest.approx(C / (2 * M), rel=1e-10)
    assert cls.R_critical == pytest.approx(8.2e-75, rel=1e-2)
    assert cls.paper_approx_R_min == cls.R_critical


@settings(max_examples=300, deadline=None)
@given(masses, st.floats(min_value=1.01, max_value=1e3))
def test_turning_point_rootfind_matches_closed_form(M, ratio):
    s = ShellScenario(M, ratio * M * M)
    cls = classify_bounce(s)
    assert cls.kind == "turning_point"
    assert cls.R_rootfind == pytest.approx(cls.R_critical, rel=1e-12)
    assert cls.R_critical > s.singular_radius


def test_large_ratio_apex_approaches_singular_radius():
    s = ShellScenario(1.0, 1e6)
    assert apex_radius(s) / s.singular_radius == pytest.approx(1.0, rel=2e-6)


# -- trajectories ------------------------------------------------------------

def test_free_fall_trajectory_matches_quadrature():
    M = 1.0
    s = ShellScenario(M, 0.0, 20.0)
    traj = proper_time_trajectory(s, R_floor=0.05)
    assert traj.terminal_event == "reached_target"
    assert traj.R[-1] == pytest.approx(0.05, rel=1e-9)
    T0 = free_fall_clock(20.0, M)
    expected = np.array([T0 - free_fall_clock(R, M) for R in traj.R])
    assert np.allclose(traj.t[1:], expected[1:], rtol=1e-6, atol=0.0)


@pytest.mark.parametrize("M, C", [(1.0, 0.0), (1.0, 0.5), (1.0, 2.0), (3.0, 50.0)])
def test_trajectory_satisfies_first_integral(M, C):
    s = ShellScenario(M, C)
    traj = proper_time_trajectory(s)
    expected = np.array([max(rdot_sq(R, s), 0.0) for R in traj.R])
    moving = expected > 1e-6 * expected.max()
    assert np.allclose(traj.V[moving] ** 2, expected[moving], rtol=1e-6, atol=0.0)
    assert np.all(np.diff(traj.t) > 0.0)


def test_turning_point_trajectory_starts_at_rest_at_apex():
    s = ShellScenario(1.0, 2.0)
    traj = proper_time_trajectory(s)
    assert traj.R[0] == 2.0
    assert abs(traj.V[0]) < 1e-3 * np.max(np.abs(traj.V))
    assert traj.terminal_event == "reached_target"
    assert traj.R[-1] == pytest.approx(1.001 * s.singular_radius, rel=1e-9)


def test_start_beyond_apex_rejected():
    with pytest.raises(DomainError):
        proper_time_trajectory(ShellScenario(1.0, 2.0, 3.0))


def test_singular_approach_speeds_up():
    s = ShellScenario(1.0, 0.5)
    traj = proper_time_trajectory(s)
    assert traj.terminal_event == "reached_target"
    assert np.all(np.diff(traj.V**2) > 0.0)
    assert rdot_sq(1.0001 * s.singular_radius, s) > rdot_sq(1.001 * s.singular_radius, s)


def test_solar_mass_trajectory_is_partial_or_complete():
    s = ShellScenario(mass_to_geometric(SOLAR_MASS), casimir_constant_geometric(), 3e4)
    traj = proper_time_trajectory(s)
    assert traj.terminal_event in ("reached_target", "step_limit")
    assert np.all(np.diff(traj.t) > 0.0)
    assert np.all(np.diff(traj.R) < 0.0)


def test_trajectory_is_deterministic():
    s = ShellScenario(1.0, 2.0)
    a, b = proper_time_trajectory(s), proper_time_trajectory(s)
    assert np.array_equal(a.t, b.t) and np.array_equal(a.R, b.R)
