"""Static force balances between Casimir stresses and surface tension."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import C_LIGHT, HBAR, HBAR_C
from .errors import DomainError, SolverError
from .numerics import find_root
from .pressures import _check_dilute, _positive, cone_force_dilute

TAU_BRACKET = (1e-25, 1e-10)
RADIUS_BRACKET = (1e-15, 1.0)
ANNULUS_VARIANTS = ("exact", "paper_640pi")


@dataclass(frozen=True)
class TauSolution:
    tau: float
    tau_c: float
    sigma: float
    epsilon_minus_1: float
    tau_rootfind: float

    @property
    def rootfind_rel_diff(self):
        return abs(self.tau_rootfind - self.tau) / self.tau


def _cutoff_pressure_times_radius(tau, epsilon_minus_1):
    # |P_cutoff| * a, which is independent of a
    return epsilon_minus_1**2 / (16.0 * math.pi) * HBAR / (C_LIGHT**2 * tau**3)


def tau_balance_residual(tau, sigma, epsilon_minus_1):
    """Relative imbalance between the cutoff stress and the Laplace pressure."""
    return _cutoff_pressure_times_radius(tau, epsilon_minus_1) / (2.0 * sigma) - 1.0


def solve_tau(sigma, epsilon_minus_1):
    """Time-splitting parameter for which the cutoff stress equals 2 sigma / a.

    The ball radius drops out of the balance, so it is not an argument.
    The closed form is cross-checked against a bracketed root search on the
    balance residual.
    """
    sigma = _positive("sigma", sigma)
    _check_dilute("epsilon_minus_1", epsilon_minus_1)
    if epsilon_minus_1 == 0.0:
        raise DomainError("epsilon_minus_1 = 0: no Casimir stress to balance")
    tau = (epsilon_minus_1**2 * HBAR / (32.0 * math.pi * sigma * C_LIGHT**2)) ** (1.0 / 3.0)

    # log-space residual is monotone and well scaled over the whole bracket
    def residual(log_tau):
        return math.log(_cutoff_pressure_times_radius(math.exp(log_tau), epsilon_minus_1)
                        / (2.0 * sigma))

    lo, hi = (math.log(v) for v in TAU_BRACKET)
    tau_rf = math.exp(find_root(residual, lo, hi, rel_tol=0.0, abs_tol=1e-14))
    return TauSolution(tau, tau * C_LIGHT, sigma, epsilon_minus_1, tau_rf)


def annulus_required_sigma(a, b, mu):
    """Surface tension that exactly balances the dilute Casimir cone force [N/m]."""
    return cone_force_dilute(a, b, mu) / (2.0 * (a + b))


def annulus_inner_radius(sigma, mu, ratio_b_over_a, variant="exact"):
    """Inner radius at which surface tension holds the fluid shell together.

    ``variant="paper_640pi"`` uses the thin-hole approximation with the
    rounded 1/(640 pi) coefficient; ``"exact"`` root-finds the full balance
    at the given ``b/a``.
    """
    sigma = _positive("sigma", sigma)
    kappa = _positive("ratio_b_over_a", ratio_b_over_a)
    if kappa < 5.0:
        raise DomainError("ratio_b_over_a must be >= 5 (thin-hole regime)")
    _check_dilute("mu - 1", mu - 1.0)
    if variant not in ANNULUS_VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    if mu == 1.0:
        raise SolverError("mu = 1: Casimir force vanishes, no balance radius exists")

    if variant == "paper_640pi":
        return (HBAR_C * (mu - 1.0) ** 2 / (640.0 * math.pi * sigma * kappa)) ** (1.0 / 3.0)

    def residual(log_a):
        a = math.exp(log_a)
        return math.log(cone_force_dilute(a, kappa * a, mu) / (2.0 * sigma * a * (1.0 + kappa)))

    lo, hi = (math.log(v) for v in RADIUS_BRACKET)
    if residual(lo) * residual(hi) > 0.0:
        raise SolverError(f"no balance radius in {RADIUS_BRACKET} m")
    return math.exp(find_root(residual, lo, hi, rel_tol=0.0, abs_tol=1e-14))

