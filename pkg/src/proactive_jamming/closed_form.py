"""Analytical model of proactive eavesdropping via jamming.

A suspicious transmitter sends at fixed rate ``R`` with power ``P``; its
receiver sees SINR ``g0 P / (g2 Q + sigma0^2)`` because a full-duplex monitor
jams with power ``Q``. The monitor decodes when ``log2(1 + g1 P / sigma1^2) >= R``.
The transmitter keeps its own outage pinned at ``delta``, so every jamming
power ``Q`` maps to one rate ``R = psi_inv(Q)``, and the monitor maximises
its average eavesdropping rate ``R * (1 - p1_outage(R))`` over ``Q``.

Internally most formulas are written in ``x = 2**R - 1`` and evaluated with
``expm1``/``log1p`` so that small rates and small jamming powers keep full
precision. Functions accept scalars or numpy arrays.

The eavesdropping outage and the unconstrained optimum use the monitor noise
``sigma1_sq``. With the reference scenario (unit noise on both links) this is
indistinguishable from using ``sigma0_sq``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .lambertw import lambert_w0, lambert_w0_excess_ratio
from .params import PowerLinear, RateBpsHz, SystemParams

LN2 = math.log(2.0)

# Slack allowed above psi_inv(0) before psi refuses the rate.
PSI_DOMAIN_TOL = 1e-12


class Regime(str, Enum):
    NO_JAMMING = "NoJamming"
    INTERIOR = "Interior"
    POWER_LIMITED = "PowerLimited"


@dataclass(frozen=True)
class ClosedFormSolution:
    r_star: RateBpsHz
    r_opt: RateBpsHz
    q_opt: PowerLinear
    r_zero_jam: RateBpsHz
    r_max_jam: RateBpsHz
    avg_rate_opt: RateBpsHz
    regime: Regime


@dataclass(frozen=True)
class ChannelRealizationRates:
    """Per-block SINR/SNR and achievable rates (fields may be arrays)."""

    r0: np.ndarray | float
    r1: np.ndarray | float
    sinr0: np.ndarray | float
    snr1: np.ndarray | float


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def _x_of_rate(r):
    return np.expm1(np.asarray(r, dtype=float) * LN2)


def instantaneous_rates(params: SystemParams, g0, g1, g2, q: PowerLinear) -> ChannelRealizationRates:
    if not 0 <= q <= params.q_max:
        raise DomainError(f"jamming power must lie in [0, q_max], got {q!r}")
    g0 = np.asarray(g0, dtype=float)
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    if np.any(g0 < 0) or np.any(g1 < 0) or np.any(g2 < 0):
        raise DomainError("channel gains must be nonnegative")
    sinr0 = g0 * params.p_tx / (g2 * q + params.sigma0_sq)
    snr1 = g1 * params.p_tx / params.sigma1_sq
    return ChannelRealizationRates(
        r0=_out(np.log1p(sinr0) / LN2),
        r1=_out(np.log1p(snr1) / LN2),
        sinr0=_out(sinr0),
        snr1=_out(snr1),
    )


def p0_outage(params: SystemParams, r, q):
    """Decoding outage probability at the suspicious receiver.

    ``1 - exp(-lambda0 sigma0^2 x / P) / (1 + lambda0 x Q / (lambda2 P))``
    with ``x = 2**r - 1``; at ``Q = 0`` this is the plain Rayleigh outage.
    """
    r = np.asarray(r, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError(f"rate must be > 0, got {r!r}")
    if np.any(q < 0):
        raise DomainError(f"jamming power must be >= 0, got {q!r}")
    x = _x_of_rate(r)
    noise_term = params.lambda0 * params.sigma0_sq * x / params.p_tx
    jam_term = np.log1p(params.lambda0 * x * q / (params.lambda2 * params.p_tx))
    return _out(-np.expm1(-noise_term - jam_term))


def p1_outage(params: SystemParams, r):
    """Eavesdropping outage ``P(g1 < (2**r - 1) sigma1^2 / P)``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError(f"rate must be >= 0, got {r!r}")
    k = params.lambda1 * params.sigma1_sq / params.p_tx
    return _out(-np.expm1(-k * _x_of_rate(r)))


def psi_inv(params: SystemParams, q):
    """Rate the transmitter settles on when the monitor jams with power ``q``.

    ``q = 0`` gives ``log2(1 - P ln(1 - delta) / (lambda0 sigma0^2))``. For
    ``q > 0`` the Lambert-W form is evaluated through
    ``lambert_w0_excess_ratio`` with ``s = sigma0^2 lambda2 / q``: the
    classic expression ``(P / (sigma0^2 lambda0)) * (W(...) - s)`` is the
    difference of two numbers that grow like ``1 / q``.
    """
    q = np.asarray(q, dtype=float)
    if np.any(~(q >= 0)) or np.any(~np.isfinite(q)):
        raise DomainError(f"jamming power must be finite and >= 0, got {q!r}")
    log_gain = -math.log1p(-params.delta)
    scale = params.p_tx / (params.sigma0_sq * params.lambda0)
    # s * t -> log_gain as q -> 0, so the q = 0 branch is the continuous limit.
    st = np.full(q.shape, log_gain)
    pos = q > 0
    if np.any(pos):
        s = params.sigma0_sq * params.lambda2 / q[pos]
        st[pos] = s * lambert_w0_excess_ratio(s, log_gain)
    return _out(np.log1p(scale * st) / LN2)


def psi(params: SystemParams, r):
    """Jamming power that pins the receiver outage at ``delta`` for rate ``r``.

    Strictly decreasing on ``(0, psi_inv(0)]``; rates above ``psi_inv(0)``
    would need negative power and raise ``DomainError``.
    """
    r = np.asarray(r, dtype=float)
    r_zero = psi_inv(params, 0.0)
    if np.any(~(r > 0)) or np.any(r > r_zero + PSI_DOMAIN_TOL):
        raise DomainError(f"psi is defined on (0, {r_zero!r}], got {r!r}")
    x = _x_of_rate(r)
    a = params.lambda0 * params.sigma0_sq * x / params.p_tx
    scale = params.lambda2 * params.p_tx / (params.lambda0 * x * (1.0 - params.delta))
    return _out(np.maximum(scale * (params.delta + np.expm1(-a)), 0.0))


def avg_rate(params: SystemParams, r):
    """Average eavesdropping rate ``r * (1 - p1_outage(r))``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError(f"rate must be >= 0, got {r!r}")
    k = params.lambda1 * params.sigma1_sq / params.p_tx
    return _out(r * np.exp(-k * _x_of_rate(r)))


def avg_rate_derivative(params: SystemParams, r):
    """Derivative of the average rate with respect to ``x = 2**r - 1``.

    ``phi(x) = log2(1 + x) exp(-k x)`` with ``k = lambda1 sigma1^2 / P``, so
    ``phi'(x) = exp(-k x) (1 / (ln2 (1 + x)) - k log2(1 + x))``. Positive below
    ``r_star``, negative above it.
    """
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError(f"rate must be > 0, got {r!r}")
    k = params.lambda1 * params.sigma1_sq / params.p_tx
    x = _x_of_rate(r)
    return _out(np.exp(-k * x) * (1.0 / (LN2 * (1.0 + x)) - k * r))


def r_star(params: SystemParams) -> RateBpsHz:
    """Unconstrained maximiser ``W(P / (lambda1 sigma1^2)) / ln 2`` of the average rate."""
    return lambert_w0(params.p_tx / (params.lambda1 * params.sigma1_sq)) / LN2


def solve_optimal(params: SystemParams) -> ClosedFormSolution:
    """Optimal rate and jamming power, clamping ``r_star`` to the feasible interval."""
    rs = r_star(params)
    r_zero = psi_inv(params, 0.0)
    r_max = psi_inv(params, params.q_max)
    if rs >= r_zero:
        regime, r_opt, q_opt = Regime.NO_JAMMING, r_zero, 0.0
    elif rs <= r_max:
        regime, r_opt, q_opt = Regime.POWER_LIMITED, r_max, params.q_max
    else:
        q_opt = psi(params, rs)
        if q_opt >= params.q_max:
            regime, r_opt, q_opt = Regime.POWER_LIMITED, r_max, params.q_max
        elif q_opt <= 0.0:
            regime, r_opt, q_opt = Regime.NO_JAMMING, r_zero, 0.0
        else:
            regime, r_opt = Regime.INTERIOR, rs
    return ClosedFormSolution(
        r_star=rs,
        r_opt=r_opt,
        q_opt=q_opt,
        r_zero_jam=r_zero,
        r_max_jam=r_max,
        avg_rate_opt=avg_rate(params, r_opt),
        regime=regime,
    )
