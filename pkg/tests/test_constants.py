from fractions import Fraction

import pytest

from casimir_bounce.constants import (
    C_LIGHT, CONSTANTS, G_NEWTON, HBAR, HBAR_C, PLANCK_AREA, SOLAR_MASS,
    casimir_constant_geometric, casimir_constant_si, geometric_to_mass, mass_to_geometric,
)
from casimir_bounce.errors import DomainError

# exact rational versions of the pinned decimal constants
HBAR_Q = Fraction("1.054571817e-34")
C_Q = Fraction(299792458)
G_Q = Fraction("6.67430e-11")


def test_pinned_values():
    assert HBAR == 1.054571817e-34
    assert C_LIGHT == 2.99792458e8
    assert G_NEWTON == 6.67430e-11
    assert HBAR_C == HBAR * C_LIGHT
    assert CONSTANTS.hbar_c == HBAR_C
    assert CONSTANTS.planck_area == PLANCK_AREA


def test_repeated_calls_bit_identical():
    assert casimir_constant_geometric() == casimir_constant_geometric()
    assert mass_to_geometric(3.7) == mass_to_geometric(3.7)


def test_one_kilogram():
    expected = float(G_Q / C_Q**2)
    assert mass_to_geometric(1.0) == pytest.approx(expected, rel=1e-15)
    assert mass_to_geometric(1.0) == pytest.approx(7.426e-28, rel=1e-3)


def test_solar_mass():
    expected = float(G_Q * Fraction(SOLAR_MASS) / C_Q**2)
    assert mass_to_geometric(SOLAR_MASS) == pytest.approx(expected, rel=1e-15)
    assert mass_to_geometric(SOLAR_MASS) == pytest.approx(1477.0, abs=0.1)


@pytest.mark.parametrize("mass", [1e-30, 1.0, 5.97e24, SOLAR_MASS, 1e40])
def test_round_trip(mass):
    assert geometric_to_mass(mass_to_geometric(mass)) == pytest.approx(mass, rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_mass_domain(bad):
    with pytest.raises(DomainError):
        mass_to_geometric(bad)


def test_casimir_constant_geometric():
    expected = float(Fraction("0.09235") * HBAR_Q * G_Q / C_Q**3)
    assert casimir_constant_geometric() == pytest.approx(expected, rel=1e-15)
    assert casimir_constant_geometric() == pytest.approx(2.412e-71, rel=1e-3)
    assert casimir_constant_geometric() / PLANCK_AREA == pytest.approx(0.09235, rel=1e-15)


def test_casimir_constant_si_two_digits():
    assert casimir_constant_si() == pytest.approx(2.9e-27, rel=0.01)
