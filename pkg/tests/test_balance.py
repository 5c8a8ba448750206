import inspect
import math

import pytest
from hypothesis import given, settings, strategies as st

from casimir_bounce.balance import (
    annulus_inner_radius, annulus_required_sigma, solve_tau, tau_balance_residual,
)
from casimir_bounce.constants import CASIMIR_COEFFICIENT, HBAR_C
from casimir_bounce.errors import DomainError, SolverError
from casimir_bounce.pressures import cone_force_dilute

sigmas = st.floats(min_value=1e-4, max_value=10.0)
dilute = st.floats(min_value=-0.1, max_value=0.1).filter(lambda x: abs(x) > 1e-6)
mus = st.floats(min_value=0.9, max_value=1.1).filter(lambda m: abs(m - 1.0) > 1e-6)


def exact_inner_radius(sigma, mu, kappa):
    # full dilute balance solved for a at fixed kappa = b/a
    a3 = (CASIMIR_COEFFICIENT * HBAR_C * (mu - 1.0) ** 2 * (1.0 + kappa**-2)
          / (64.0 * math.pi * sigma * (1.0 + kappa)))
    return a3 ** (1.0 / 3.0)


# -- tau balance -------------------------------------------------------------

def test_tau_reference_point():
    sol = solve_tau(0.073, 0.01)
    assert sol.tau == pytest.approx(2.52e-19, rel=5e-3)
    assert sol.tau_c == pytest.approx(0.76e-10, rel=1e-2)
    assert sol.tau_c == sol.tau * 2.99792458e8
    assert sol.rootfind_rel_diff < 1e-10


def test_tau_has_no_radius_argument():
    assert list(inspect.signature(solve_tau).parameters) == ["sigma", "epsilon_minus_1"]


def test_tau_sigma_scaling():
    assert solve_tau(8 * 0.073, 0.01).tau == pytest.approx(solve_tau(0.073, 0.01).tau / 2, rel=1e-15)


def test_tau_dilution_scaling():
    ratio = solve_tau(0.073, 0.02).tau / solve_tau(0.073, 0.01).tau
    assert ratio == pytest.approx(4 ** (1 / 3), rel=1e-15)


@pytest.mark.parametrize("sigma", [0.0, -0.073, float("inf")])
def test_tau_domain(sigma):
    with pytest.raises(DomainError):
        solve_tau(sigma, 0.01)


def test_tau_zero_dilution_rejected():
    with pytest.raises(DomainError):
        solve_tau(0.073, 0.0)


@settings(max_examples=200, deadline=None)
@given(sigmas, dilute)
def test_tau_balance_residual_small(sigma, e):
    sol = solve_tau(sigma, e)
    assert abs(tau_balance_residual(sol.tau, sigma, e)) < 1e-12
    assert sol.rootfind_rel_diff < 1e-10
    assert sol.tau == solve_tau(sigma, -e).tau


# -- annulus -----------------------------------------------------------------

def test_required_sigma_balances_force():
    a, b, mu = 1e-9, 1e-8, 1.01
    sigma = annulus_required_sigma(a, b, mu)
    residual = cone_force_dilute(a, b, mu) - 2 * sigma * (a + b)
    assert abs(residual) <= 4 * math.ulp(cone_force_dilute(a, b, mu))
    assert annulus_required_sigma(a, b, 1.0) == 0.0


def test_required_sigma_at_rounded_coefficient_radius():
    sigma = annulus_required_sigma(1.29e-11, 1.29e-10, 1.01)
    ratio = 0.073 / sigma
    # the rounded 1/(640 pi) coefficient accounts for the whole deviation
    expected = (1.29e-11 / exact_inner_radius(0.073, 1.01, 10.0)) ** 3
    assert ratio == pytest.approx(expected, rel=1e-2)
    assert 1.0 < ratio < 1.25


def test_inner_radius_rounded_variant():
    a = annulus_inner_radius(0.073, 1.01, 10.0, "paper_640pi")
    assert a == pytest.approx(1.29e-11, rel=5e-3)


def test_inner_radius_exact_variant_against_closed_form():
    for mu in (1.01, 0.99, 1.1):
        for kappa in (5.0, 10.0, 1e3):
            a = annulus_inner_radius(0.073, mu, kappa, "exact")
            assert a == pytest.approx(exact_inner_radius(0.073, mu, kappa), rel=1e-12)


def test_variants_within_ten_percent():
    exact = annulus_inner_radius(0.073, 1.01, 10.0, "exact")
    rounded = annulus_inner_radius(0.073, 1.01, 10.0, "paper_640pi")
    ratio = exact / rounded
    assert abs(ratio - 1.0) < 0.1
    # coefficient-ratio oracle including the finite kappa terms
    assert ratio == pytest.approx((0.9235 * 10 * (1 + 1e-2) / 11) ** (1 / 3), rel=1e-12)


def test_variants_converge_to_coefficient_ratio_for_thin_holes():
    kappa = 1e6
    ratio = (annulus_inner_radius(0.073, 1.01, kappa, "exact")
             / annulus_inner_radius(0.073, 1.01, kappa, "paper_640pi"))
    assert ratio == pytest.approx(0.9235 ** (1 / 3), rel=2e-6)


def test_homogeneous_has_no_radius():
    with pytest.raises(SolverError):
        annulus_inner_radius(0.073, 1.0, 10.0)


@pytest.mark.parametrize("kwargs", [dict(ratio_b_over_a=4.0), dict(sigma=0.0), dict(mu=1.5),
                                    dict(variant="rounded")])
def test_inner_radius_domain(kwargs):
    args = dict(sigma=0.073, mu=1.01, ratio_b_over_a=10.0, variant="exact") | kwargs
    with pytest.raises(DomainError):
        annulus_inner_radius(**args)


def test_inner_radius_out_of_bracket():
    with pytest.raises(SolverError):
        annulus_inner_radius(1e-40, 1.01, 10.0)


@settings(max_examples=150, deadline=None)
@given(sigmas, mus, st.floats(min_value=5.0, max_value=1e4))
def test_inner_radius_substitutes_back(sigma, mu, kappa):
    a = annulus_inner_radius(sigma, mu, kappa)
    back = annulus_required_sigma(a, kappa * a, mu)
    assert back == pytest.approx(sigma, rel=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-12, max_value=1e-3), st.floats(min_value=2.0, max_value=50.0),
       st.floats(min_value=1e-4, max_value=0.09))
def test_required_sigma_monotonicity(a, kappa, dmu):
    base = annulus_required_sigma(a, kappa * a, 1.0 + dmu)
    assert annulus_required_sigma(a, kappa * a, 1.0 + 1.1 * dmu) > base
    assert annulus_required_sigma(a, kappa * a, 1.0 - dmu) == pytest.approx(base, rel=1e-12)
    assert annulus_required_sigma(1.1 * a, 1.1 * kappa * a, 1.0 + dmu) < base
