"""Optimal jamming power for proactive eavesdropping over Rayleigh fading."""

from .closed_form import (
    ClosedFormSolution,
    Regime,
    avg_rate,
    p0_outage,
    p1_outage,
    psi,
    psi_inv,
    r_star,
    solve_optimal,
)
from .errors import ConvergenceError, DomainError, InvalidParam, NonPositiveLinear
from .params import CANONICAL, SystemParams, db_to_linear, linear_to_db, validate

__all__ = [
    "CANONICAL",
    "ClosedFormSolution",
    "ConvergenceError",
    "DomainError",
    "InvalidParam",
    "NonPositiveLinear",
    "Regime",
    "SystemParams",
    "avg_rate",
    "db_to_linear",
    "linear_to_db",
    "p0_outage",
    "p1_outage",
    "psi",
    "psi_inv",
    "r_star",
    "solve_optimal",
    "validate",
]
