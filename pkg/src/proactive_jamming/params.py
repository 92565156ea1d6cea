"""Scenario parameters and dB/linear power conversions.

All powers are linear and normalised so that channel gains and noise powers
share a scale. The defaults reproduce the reference scenario: a unit-mean
suspicious channel, eavesdropping and jamming channels ten times weaker,
unit noise, P = 20 dB, Q_max = 30 dB and a 5 % target outage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import InvalidParam, NonPositiveLinear

# Type aliases; every quantity is a plain double.
Probability = float
RateBpsHz = float
PowerLinear = float
PowerDb = float


def db_to_linear(x_db):
    """Convert dB to linear power, ``10 ** (x_db / 10)``."""
    out = np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def linear_to_db(x):
    """Convert linear power to dB. Raises ``NonPositiveLinear`` for x <= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise NonPositiveLinear(f"linear power must be > 0, got {x!r}")
    out = 10.0 * np.log10(arr)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SystemParams:
    """Constants of one surveillance scenario.

    ``lambda0``, ``lambda1`` and ``lambda2`` are the exponential rates (inverse
    mean power gains) of the suspicious, eavesdropping and jamming links.
    Construction validates every field, so an instance is always usable.
    """

    p_tx: float = 100.0
    sigma0_sq: float = 1.0
    sigma1_sq: float = 1.0
    lambda0: float = 1.0
    lambda1: float = 10.0
    lambda2: float = 10.0
    delta: float = 0.05
    q_max: float = 1000.0

    def __post_init__(self):
        validate(self)

    def replace(self, **changes) -> SystemParams:
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_POSITIVE = ("p_tx", "sigma0_sq", "sigma1_sq", "lambda0", "lambda1", "lambda2")


def validate(params: SystemParams) -> None:
    """Check the invariants of ``params``; raise ``InvalidParam`` on the first violation."""
    for name in _POSITIVE:
        value = getattr(params, name)
        if not (math.isfinite(value) and value > 0):
            raise InvalidParam(name, value, f"0 < {name} < inf")
    if not 0 < params.delta < 1:
        raise InvalidParam("delta", params.delta, "0 < delta < 1")
    if not (math.isfinite(params.q_max) and params.q_max > 0):
        raise InvalidParam("q_max", params.q_max, "0 < q_max < inf")


CANONICAL = SystemParams()
