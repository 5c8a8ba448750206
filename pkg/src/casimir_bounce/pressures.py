"""Closed-form Casimir surface pressures and forces.

Sign convention: positive pressure points outward.  The dielectric-ball
stresses are attractive and therefore negative; the isorefractive pressures
are repulsive and non-negative.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import C_LIGHT, CASIMIR_COEFFICIENT, HBAR, HBAR_C
from .errors import DilutenessWarning, DomainError

# Coefficient of the mu-dependent correction in the isorefractive pressure
ISOREFRACTIVE_CORRECTION = 0.311

DILUTE_WARN = 0.05
DILUTE_MAX = 0.1


def _check_dilute(name, excess):
    if not math.isfinite(excess):
        raise DomainError(f"{name} must be finite")
    # small allowance so that decimal inputs such as mu = 1.1 sit on the cap
    if abs(excess) > DILUTE_MAX * (1.0 + 1e-12):
        raise DomainError(f"|{name}| = {abs(excess):g} exceeds the dilute limit {DILUTE_MAX}")
    if abs(excess) > DILUTE_WARN:
        warnings.warn(f"|{name}| = {abs(excess):g} > {DILUTE_WARN}: dilute formulas are "
                      "only approximate here", DilutenessWarning, stacklevel=3)


def _positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class BallScenario:
    """Dilute dielectric ball of radius ``radius_a`` in vacuum.

    ``epsilon_minus_1`` may carry either sign; only its square enters.
    """

    radius_a: float
    epsilon_minus_1: float
    tau: float

    def __post_init__(self):
        _positive("radius_a", self.radius_a)
        if not math.isfinite(self.tau) or self.tau <= 0.0:
            raise DomainError("tau must be positive: the cutoff stress diverges at tau = 0")
        _check_dilute("epsilon_minus_1", self.epsilon_minus_1)

    @property
    def dilute_warning(self):
        return abs(self.epsilon_minus_1) > DILUTE_WARN

    @property
    def delta(self):
        """Dimensionless cutoff tau*c/a."""
        return self.tau * C_LIGHT / self.radius_a


@dataclass(frozen=True)
class AnnulusScenario:
    """Isorefractive fluid shell ``inner_a < r < outer_b`` with vacuum on both sides.

    The permittivity is never stored: isorefractivity fixes it to ``1/mu12``.
    """

    inner_a: float
    outer_b: float
    mu12: float
    sigma: float

    def __post_init__(self):
        _positive("inner_a", self.inner_a)
        _positive("outer_b", self.outer_b)
        _positive("mu12", self.mu12)
        _positive("sigma", self.sigma)
        if self.inner_a >= self.outer_b:
            raise DomainError("need inner_a < outer_b")

    @property
    def epsilon(self):
        return 1.0 / self.mu12


def ball_surface_stress(s):
    """Total radial stress on the ball surface [Pa], cutoff and finite parts.

    Equal to -(eps-1)^2 hbar c / (256 pi a^4) * (16/delta^3 + 1/4).  It is
    summed from the two parts so that total <= cutoff holds in floating point.
    """
    return ball_cutoff_stress(s) + ball_finite_stress(s.radius_a, s.epsilon_minus_1)


def ball_cutoff_stress(s):
    """Cutoff-dependent part of :func:`ball_surface_stress` [Pa]."""
    e2 = s.epsilon_minus_1**2
    return -e2 / (16.0 * math.pi) * HBAR / (s.radius_a * C_LIGHT**2 * s.tau**3)


def ball_finite_stress(radius_a, epsilon_minus_1):
    """Cutoff-independent remainder of the ball stress [Pa]."""
    return -epsilon_minus_1**2 * HBAR_C / (1024.0 * math.pi * radius_a**4)


def _canonical_ratio(mu12):
    # mu and fl(1/mu) both map to the same float <= 1, so that the
    # mu -> 1/mu symmetry holds bit-for-bit.
    return 1.0 / mu12 if mu12 > 1.0 else 1.0 / (1.0 / mu12)


def isorefractive_factor(mu12):
    """Material factor f(mu12) of the isorefractive pressure; f(1) = 0."""
    mu12 = _positive("mu12", mu12)
    m = _canonical_ratio(mu12)
    reflect = ((m - 1.0) / (m + 1.0)) ** 2
    return reflect * (1.0 + ISOREFRACTIVE_CORRECTION * m / (m + 1.0) ** 2)


def isorefractive_surface_pressure(mu12, r):
    """Outward Casimir pressure on a sphere of radius ``r`` separating two
    isorefractive media with permeability ratio ``mu12`` [Pa]."""
    r = _positive("r", r)
    return CASIMIR_COEFFICIENT / (8.0 * math.pi) * HBAR_C / r**4 * isorefractive_factor(mu12)


def _check_shell(a, b):
    a = _positive("a", a)
    b = _positive("b", b)
    if a >= b:
        raise DomainError(f"need a < b, got a={a!r}, b={b!r}")
    return a, b


def cone_force_dilute(a, b, mu):
    """Net outward Casimir force per steradian on the fluid shell, dilute limit [N/sr]."""
    a, b = _check_shell(a, b)
    _check_dilute("mu - 1", mu - 1.0)
    return (CASIMIR_COEFFICIENT * HBAR_C / (32.0 * math.pi) * (mu - 1.0) ** 2
            * (1.0 / a**2 + 1.0 / b**2))


def cone_force_exact(a, b, mu):
    """Same force from the full isorefractive pressure, a^2 P(a) + b^2 P(b) [N/sr]."""
    a, b = _check_shell(a, b)
    return a**2 * isorefractive_surface_pressure(mu, a) + b**2 * isorefractive_surface_pressure(mu, b)


def hole_pressure_constant(mu12=None, f_unity=False):
    """Constant C [J m] such that the hole-surface pressure is C/(8 pi R^4).

    With ``f_unity`` the material factor is replaced by one.
    """
    if f_unity:
        return CASIMIR_COEFFICIENT * HBAR_C
    if mu12 is None:
        raise DomainError("mu12 is required unless f_unity is set")
    return CASIMIR_COEFFICIENT * HBAR_C * isorefractive_factor(mu12)


def hole_surface_pressure(C, R):
    """Casimir pressure C/(8 pi R^4) on a hole of radius ``R`` [Pa]."""
    C = float(C)
    if not math.isfinite(C) or C < 0.0:
        raise DomainError(f"C must be non-negative, got {C!r}")
    R = _positive("R", R)
    return C / (8.0 * math.pi * R**4)


def clausius_mossotti_density_derivative(epsilon):
    """rho * d(eps)/d(rho) for a nonpolar medium obeying Clausius-Mossotti."""
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or epsilon < 1.0:
        raise DomainError(f"epsilon must be >= 1, got {epsilon!r}")
    return (epsilon - 1.0) * (epsilon + 2.0) / 3.0
