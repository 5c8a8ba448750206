"""Collapse of a singular dust shell with an added Casimir surface pressure.

Model study in geometric units (G = c = 1): the Casimir pressure C/(8 pi R^4)
is simply added to the junction condition, which ignores the gravity of the
Casimir energy itself.  The resulting first integral is

    sqrt(1 + Rdot^2) = 1 - k/R + M / (2 (R - k)),    k = C / (2M),

with Rdot the derivative with respect to proper time.  The right-hand side
has a pole at the singular radius k.  Writing it as 1 + x(R),

    x(R) = [R (M/2 - k) + k^2] / (R (R - k)),

shows the three regimes:

* C = 0: x = M/(2R) > 0, free fall from rest at infinity down to R = 0.
* 0 < C <= M^2: x > 0 for all R > k; Rdot^2 diverges as R -> k.
* C > M^2: x vanishes at R_tp = C^2 / (2M (C - M^2)) and is negative
  beyond it.  R_tp is a maximum radius: a shell at rest there falls inward
  and again reaches k with diverging speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SolverError
from .numerics import find_root, ode_solve
from .pressures import _positive
from .trajectory import Trajectory

BOUNCE_KINDS = ("turning_point", "singular_approach", "no_bounce")

STOP_FACTOR = 1.001


@dataclass(frozen=True)
class ShellScenario:
    """Shell of Schwarzschild mass ``M`` [m] and Casimir constant ``C`` [m^2].

    The proper surface density is fixed by 4 pi R^2 sigma = M and is not
    stored.  ``R_start`` defaults to the apex R_tp when C > M^2 and to 20 M
    otherwise.
    """

    M: float
    C: float = 0.0
    R_start: float | None = None

    def __post_init__(self):
        _positive("M", self.M)
        if not math.isfinite(self.C) or self.C < 0.0:
            raise DomainError(f"C must be non-negative and finite, got {self.C!r}")
        if self.R_start is not None:
            _positive("R_start", self.R_start)
            if self.R_start <= self.singular_radius:
                raise DomainError("R_start must lie outside the singular radius C/(2M)")

    @property
    def singular_radius(self):
        return self.C / (2.0 * self.M)

    @property
    def start(self):
        if self.R_start is not None:
            return float(self.R_start)
        if self.C > self.M**2:
            return apex_radius(self)
        return 20.0 * self.M


@dataclass(frozen=True)
class BounceClassification:
    kind: str
    R_critical: float
    paper_approx_R_min: float
    R_rootfind: float | None = None


def apex_radius(s):
    """Closed-form zero of Rdot^2 (exists only for C > M^2)."""
    if not s.C > s.M**2:
        raise DomainError("Rdot^2 has no zero unless C > M^2")
    return s.C**2 / (2.0 * s.M * (s.C - s.M**2))


def _check_outside(R, s):
    R = float(R)
    if not R > s.singular_radius or not math.isfinite(R):
        raise DomainError(f"R={R!r} must exceed the singular radius {s.singular_radius!r}")
    return R


def _excess(R, s):
    k = s.singular_radius
    return 0.5 * s.M / (R - k) - k / R


def eom_rhs(R, s):
    """Right-hand side of the first integral, sqrt(1 + Rdot^2)."""
    R = _check_outside(R, s)
    x = _excess(R, s)
    # keep "rhs >= 1" equivalent to "Rdot^2 >= 0" when 1 + x rounds to 1
    if x < 0.0:
        return min(1.0 + x, math.nextafter(1.0, 0.0))
    return 1.0 + x


def rdot_sq(R, s):
    """Rdot^2 at radius R; negative values are forbidden."""
    R = _check_outside(R, s)
    x = _excess(R, s)
    return x * (2.0 + x)


def _rdot_sq_slope(R, s):
    k = s.singular_radius
    x = _excess(R, s)
    dx = k / R**2 - 0.5 * s.M / (R - k) ** 2
    return 2.0 * (1.0 + x) * dx


def classify_bounce(s):
    """Classify the inner end of the collapse.

    The estimate C/(2M) is always reported alongside as
    ``paper_approx_R_min``.  For C > M^2 the closed-form apex is confirmed by
    a bracketed root search of Rdot^2 that does not use the closed form.
    """
    k = s.singular_radius
    if s.C == 0.0:
        return BounceClassification("no_bounce", 0.0, 0.0)
    if s.C <= s.M**2:
        return BounceClassification("singular_approach", k, k)

    closed = apex_radius(s)
    lo = k * (1.0 + 2.0**-40)
    hi = 2.0 * k
    for _ in range(1100):
        if rdot_sq(hi, s) < 0.0:
            break
        hi *= 2.0
    else:
        raise SolverError("could not bracket the zero of Rdot^2")
    root = find_root(lambda R: rdot_sq(R, s), lo, hi, rel_tol=1e-15)
    return BounceClassification("turning_point", closed, k, root)


def proper_time_trajectory(s, R_floor=None, rel_tol=1e-11, max_steps=200_000):
    """Integrate the infall in proper time from ``s.start``.

    The state (R, Rdot) obeys Rddot = (d Rdot^2/dR)/2, which stays regular at
    an apex where Rdot = 0.  Integration stops at 1.001 * C/(2M) when C > 0
    (or at ``R_floor``, default ``1e-3 * R_start``, when C = 0).  Step sizes
    shrink with the distance to the singular radius; if they underflow the
    partial trajectory is returned with ``terminal_event="step_limit"``.
    """
    R0 = s.start
    g0 = rdot_sq(R0, s)
    if s.C > s.M**2 and R0 > apex_radius(s) * (1.0 + 1e-12):
        raise DomainError("R_start lies beyond the apex: Rdot^2 < 0 there")
    if g0 < 0.0:
        g0 = 0.0
    if s.C > 0.0:
        R_stop = STOP_FACTOR * s.singular_radius
        if R_floor is not None:
            R_stop = max(R_stop, float(R_floor))
    else:
        R_stop = 1e-3 * R0 if R_floor is None else _positive("R_floor", R_floor)
    if R_stop >= R0:
        raise DomainError("stop radius is not below R_start")

    def rhs(tau, y):
        return np.array([y[1], 0.5 * _rdot_sq_slope(y[0], s)])

    # generous upper bound on the proper time; the stop event ends the run
    tau_max = 1e3 * (R0**1.5 / math.sqrt(s.M) + R0)
    sol = ode_solve(rhs, [R0, 0.0 - math.sqrt(g0)], 0.0, tau_max, rel_tol=rel_tol,
                    abs_tol=np.array([0.0, 1e-14]), event=lambda tau, y: y[0] - R_stop,
                    max_steps=max_steps)
    t, R, V = sol.x, sol.y[:, 0], sol.y[:, 1]
    if sol.status == "event":
        terminal = "reached_target"
    else:
        terminal = "step_limit"
        # drop trailing samples where the clock no longer advances
        keep = np.concatenate([[True], np.diff(t) > 0.0])
        t, R, V = t[keep], R[keep], V[keep]
    return Trajectory(t, R, V, terminal)
