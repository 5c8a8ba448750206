"""Filling of a spherical vacuum hole in an ideal incompressible fluid, with a
repulsive Casimir pressure C/(8 pi R^4) on the hole surface.

The surface speed obeys the first integral

    V^2 = (a - R) (R - R*) q(R) / R^4,

where R* is the bounce radius and q(R) > 0 is a quadratic.  The exact
factorisation is what every routine here builds on: it gives the turning
point as the single positive root of a cubic and lets the filling-time
integral be written without cancellation at either endpoint.

Surface tension, viscosity, compressibility and the re-expansion after the
bounce are not modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SolverError
from .numerics import find_root, integrate, ode_solve
from .pressures import _positive
from .trajectory import Trajectory


@dataclass(frozen=True)
class HoleScenario:
    """Hole of initial radius ``a`` [m] released from rest at t = 0.

    ``p_inf`` [Pa] is the pressure at infinity, ``rho`` [kg/m^3] the fluid
    density and ``C`` [J m] the Casimir constant (0 switches the Casimir
    pressure off).
    """

    a: float
    p_inf: float
    rho: float
    C: float = 0.0

    def __post_init__(self):
        _positive("a", self.a)
        _positive("p_inf", self.p_inf)
        _positive("rho", self.rho)
        if not math.isfinite(self.C) or self.C < 0.0:
            raise DomainError(f"C must be non-negative and finite, got {self.C!r}")
        if self.C >= 8.0 * math.pi * self.p_inf * self.a**4:
            raise DomainError(
                "Casimir pressure at R = a is not below p_inf: the hole does not fill")

    @property
    def drive(self):
        """2 p_inf / (3 rho) [m^2/s^2]."""
        return 2.0 * self.p_inf / (3.0 * self.rho)

    @property
    def casimir(self):
        """C / (4 pi rho) [m^5/s^2]."""
        return self.C / (4.0 * math.pi * self.rho)

    @property
    def rayleigh_time(self):
        """Time scale a * sqrt(rho / p_inf) [s]."""
        return self.a * math.sqrt(self.rho / self.p_inf)


def vsq(R, s):
    """Squared surface speed at radius ``R`` for a hole released at rest from ``a``.

    Negative values mark the forbidden region below the bounce radius.
    """
    R = float(R)
    if not (0.0 < R <= s.a):
        raise DomainError(f"need 0 < R <= a, got R={R!r}")
    a = s.a
    return (a - R) * (s.drive * (a * a + a * R + R * R) / R**3 - s.casimir / (a * R**4))


def ode_rhs(R, Vsq, s):
    """d(V^2)/dR of the reduced Euler equation."""
    R = float(R)
    if R <= 0.0:
        raise DomainError("R must be positive")
    return s.C / (4.0 * math.pi * s.rho * R**5) - 2.0 * s.p_inf / (s.rho * R) - 3.0 * Vsq / R


def energy(R, Vsq, s):
    """First integral V^2 R^3 + (2 p/3 rho) R^3 + C/(4 pi rho R); constant in time."""
    return Vsq * R**3 + s.drive * R**3 + s.casimir / R


def bounce_radius_asymptotic(s):
    """Small-R estimate of the bounce radius, 3C / (8 pi p_inf a^3)."""
    if s.C == 0.0:
        raise DomainError("C = 0: no bounce")
    return 3.0 * s.C / (8.0 * math.pi * s.p_inf * s.a**3)


def _turning_cubic(R, s):
    # zero of V^2 in (0, a); increasing in R
    a = s.a
    return s.drive * R * (a * a + a * R + R * R) - s.casimir / a


def bounce_radius_exact(s):
    """Radius in (0, a) at which the inward surface speed vanishes."""
    if s.C == 0.0:
        raise DomainError("C = 0: no bounce")
    return find_root(lambda R: _turning_cubic(R, s), 0.0, s.a, rel_tol=1e-15)


def _turning_radius(s):
    return bounce_radius_exact(s) if s.C > 0.0 else 0.0


class _Quadrature:
    """Elapsed-time integrals dt = dR / |V| between two radii.

    Three pieces: below ``lower_split`` the substitution R = R* + w^2, above
    ``upper_split`` (>= a/2) the substitution R = a - u^2, plain R in
    between.  The substitutions cancel the inverse square roots exactly, and
    keeping R = a - u^2 away from small R avoids cancellation in a - u^2.
    """

    def __init__(self, s, rstar, rel_tol):
        self.s = s
        self.rstar = rstar
        self.rel_tol = rel_tol
        self.lower_split = math.sqrt(s.a * rstar) if rstar > 0.0 else 0.5 * s.a
        self.upper_split = max(self.lower_split, 0.5 * s.a)

    def _q(self, R):
        a, r0 = self.s.a, self.rstar
        return self.s.drive * (R * R + R * r0 + r0 * r0 + a * (R + r0) + a * a)

    def _lower(self, w):
        R = self.rstar + w * w
        return 2.0 * R * R / math.sqrt((self.s.a - R) * self._q(R))

    def _middle(self, R):
        return R * R / math.sqrt((self.s.a - R) * (R - self.rstar) * self._q(R))

    def _upper(self, u):
        R = self.s.a - u * u
        return 2.0 * R * R / math.sqrt((R - self.rstar) * self._q(R))

    def elapsed(self, lo, hi):
        """Time taken to move from radius ``hi`` down to ``lo``."""
        a, r0 = self.s.a, self.rstar
        s1, s2 = self.lower_split, self.upper_split
        tol = self.rel_tol
        total = 0.0
        if lo < s1:
            total += integrate(self._lower, math.sqrt(lo - r0), math.sqrt(min(hi, s1) - r0),
                               rel_tol=tol)
        if lo < s2 and hi > s1:
            total += integrate(self._middle, max(lo, s1), min(hi, s2), rel_tol=tol)
        if hi > s2:
            total += integrate(self._upper, math.sqrt(a - hi), math.sqrt(a - max(lo, s2)),
                               rel_tol=tol)
        return total


def fill_time(R_target, s, rel_tol=1e-12):
    """Time for the hole to shrink from ``a`` to ``R_target`` [s].

    For C = 0, ``R_target = 0`` gives the complete collapse time.
    """
    R_target = float(R_target)
    rstar = _turning_radius(s)
    if R_target > s.a or R_target < 0.0:
        raise DomainError(f"R_target must lie in [0, a], got {R_target!r}")
    if R_target < rstar or (s.C > 0.0 and R_target == 0.0):
        raise DomainError(
            f"R_target={R_target!r} is in the forbidden region below the bounce radius {rstar!r}")
    if R_target == s.a:
        return 0.0
    return _Quadrature(s, rstar, rel_tol).elapsed(R_target, s.a)


def simulate(s, n_samples=200, R_floor=None, eps_start=1e-6, eps_stop=1e-4, rel_tol=1e-12):
    """Sample t(R) and V(R) on a geometric grid of radii.

    The grid runs from ``a*(1 - eps_start)`` down to
    ``max(R_floor, R*(1 + eps_stop))``; a leading sample at rest at ``R = a``
    is always included.  Without Casimir pressure ``R_floor`` defaults to
    ``1e-6 * a``.
    """
    if n_samples < 2:
        raise DomainError("n_samples must be at least 2")
    if not (0.0 < eps_start < 1.0 and 0.0 < eps_stop <= 1e-3):
        raise DomainError("need 0 < eps_start < 1 and 0 < eps_stop <= 1e-3")
    rstar = _turning_radius(s)
    if R_floor is None:
        R_floor = 1e-6 * s.a if s.C == 0.0 else 0.0
    R_floor = float(R_floor)
    if s.C == 0.0 and R_floor <= 0.0:
        raise DomainError("R_floor must be positive when C = 0")
    bounce_end = rstar * (1.0 + eps_stop)
    R_end = max(R_floor, bounce_end)
    R_first = s.a * (1.0 - eps_start)
    if R_end >= R_first:
        raise DomainError("R_floor leaves no room for a trajectory")
    terminal = "bounce" if s.C > 0.0 and R_end == bounce_end else "reached_target"

    grid = np.geomspace(R_first, R_end, n_samples - 1)
    grid[-1] = R_end
    quad = _Quadrature(s, rstar, rel_tol)
    radii = [s.a] + grid.tolist()
    times = [0.0]
    for hi, lo in zip(radii, radii[1:]):
        times.append(times[-1] + quad.elapsed(lo, hi))
    speeds = [0.0 - math.sqrt(max(vsq(R, s), 0.0)) for R in radii]
    return Trajectory(times, radii, speeds, terminal)


def vsq_numeric(radii, s, rel_tol=1e-13):
    """V^2 at ``radii`` from direct integration of the reduced Euler equation.

    Independent of the closed form: the ODE is stepped from rest at ``R = a``
    in the variable ln R.  ``radii`` must be decreasing and lie in (R*, a].
    """
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or radii.size == 0:
        raise DomainError("radii must be a non-empty 1-d sequence")
    if np.any(np.diff(radii) >= 0.0) or radii[0] > s.a or radii[-1] <= 0.0:
        raise DomainError("radii must be strictly decreasing inside (0, a]")

    def rhs(x, y):
        R = math.exp(x)
        return R * ode_rhs(R, y, s)

    scale = 2.0 * s.p_inf / s.rho
    x_eval = np.log(radii)
    sol = ode_solve(rhs, 0.0, math.log(s.a), x_eval[-1], rel_tol=rel_tol,
                    abs_tol=1e-6 * rel_tol * scale, x_eval=x_eval)
    if not sol.complete:
        raise SolverError(f"integration stopped early: {sol.message}")
    return sol.y
