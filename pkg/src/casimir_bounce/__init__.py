"""Casimir-pressure balances and bounce dynamics.

Modules
-------
constants   pinned CODATA constants, SI <-> geometric conversion
pressures   closed-form Casimir pressures and forces
balance     static Casimir / surface-tension balances
hole        hole filling with a Casimir bounce
shell       singular-shell collapse with a Casimir term (geometric units)
numerics    root finding, quadrature and ODE kernels
"""

from .errors import (AccuracyError, BracketError, CasimirError, ConvergenceError,
                     DilutenessWarning, DomainError, SolverError)
from .trajectory import Trajectory

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BracketError", "CasimirError", "ConvergenceError",
    "DilutenessWarning", "DomainError", "SolverError", "Trajectory",
]
