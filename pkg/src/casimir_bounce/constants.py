"""Physical constants (CODATA 2018) and SI <-> geometric (G = c = 1) conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Reduced Planck constant [J s]
HBAR = 1.054571817e-34

# Speed of light [m / s]
C_LIGHT = 2.99792458e8

# Newtonian gravitational constant [m^3 / (kg s^2)]
G_NEWTON = 6.67430e-11

# hbar*c [J m]
HBAR_C = HBAR * C_LIGHT

# hbar*G/c^3 [m^2]
PLANCK_AREA = HBAR * G_NEWTON / C_LIGHT**3

# Dimensionless coefficient of the singular-shell / isorefractive Casimir pressure
CASIMIR_COEFFICIENT = 0.09235

# Solar mass [kg], only used in examples and tests
SOLAR_MASS = 1.98892e30


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    c: float = C_LIGHT
    G: float = G_NEWTON

    @property
    def hbar_c(self):
        return self.hbar * self.c

    @property
    def planck_area(self):
        return self.hbar * self.G / self.c**3

    def as_dict(self):
        return {
            "hbar": self.hbar,
            "c": self.c,
            "G": self.G,
            "hbar_c": self.hbar_c,
            "planck_area": self.planck_area,
            "casimir_coefficient": CASIMIR_COEFFICIENT,
        }


CONSTANTS = PhysicalConstants()


def mass_to_geometric(mass_kg):
    """Return the gravitational length G*M/c^2 [m] of a mass in kg."""
    mass_kg = float(mass_kg)
    if not math.isfinite(mass_kg) or mass_kg <= 0.0:
        raise DomainError(f"mass must be positive and finite, got {mass_kg!r}")
    return G_NEWTON * mass_kg / C_LIGHT**2


def geometric_to_mass(length_m):
    """Inverse of :func:`mass_to_geometric`."""
    length_m = float(length_m)
    if not math.isfinite(length_m) or length_m <= 0.0:
        raise DomainError(f"length must be positive and finite, got {length_m!r}")
    return length_m * C_LIGHT**2 / G_NEWTON


def casimir_constant_si():
    """Casimir constant 0.09235*hbar*c of a singular shell [J m]."""
    return CASIMIR_COEFFICIENT * HBAR_C


def casimir_constant_geometric():
    """The same constant expressed in geometric units [m^2]."""
    return CASIMIR_COEFFICIENT * PLANCK_AREA
