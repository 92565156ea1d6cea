"""Principal branch of the Lambert W function for nonnegative real arguments.

Everything is solved in the log domain: with ``u = ln w`` the defining
equation ``w e^w = x`` becomes ``g(u) = e^u + u - ln x = 0``. ``g`` is convex
and strictly increasing, so Newton's method converges from any starting
point (monotonically after the first step) and never overflows, whatever
the size of ``ln x``.

All functions accept scalars or numpy arrays and return the same shape.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DomainError

MAX_ITER = 50
_EPS = np.finfo(float).eps


def _scalar_or_array(a):
    return float(a) if np.ndim(a) == 0 else a


def _w_from_log(ln_x: np.ndarray) -> np.ndarray:
    # Starting point: w ~ x for small x, w ~ ln x for large x.
    u = np.where(ln_x < 1.0, ln_x, np.log(np.maximum(ln_x, 1.0)))
    for _ in range(MAX_ITER):
        ew = np.exp(u)
        du = (ew + u - ln_x) / (ew + 1.0)
        u = u - du
        if np.all(np.abs(du) <= 4 * _EPS * np.maximum(1.0, np.abs(u))):
            return np.exp(u)
    raise ConvergenceError("Lambert W log-domain iteration did not converge")


def lambert_w0(x):
    """Principal branch ``W0(x)`` for finite ``x >= 0``.

    >>> lambert_w0(0.0)
    0.0
    >>> round(lambert_w0(np.e), 12)
    1.0
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"lambert_w0 needs finite x >= 0, got {x!r}")
    pos = arr > 0
    out = np.zeros_like(arr)
    if np.any(pos):
        out[pos] = _w_from_log(np.log(arr[pos]))
    return _scalar_or_array(out)


def lambert_w0_of_exp(ln_x):
    """``W0(exp(ln_x))`` without forming ``exp(ln_x)``.

    Solves ``w + ln w = ln_x``; valid for any finite ``ln_x``, including
    values far beyond the float overflow threshold of ``exp``.
    """
    arr = np.asarray(ln_x, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise DomainError(f"lambert_w0_of_exp needs finite ln_x, got {ln_x!r}")
    return _scalar_or_array(_w_from_log(arr))


def lambert_w0_excess_ratio(s, log_gain):
    """Return ``t = W0(s * exp(s + log_gain)) / s - 1`` for ``s > 0``, ``log_gain >= 0``.

    Writing ``W0(...) = s (1 + t)`` turns the defining equation into

        log1p(t) + s * t = log_gain,

    which is solved for ``t`` directly. Forming ``W0(...)`` and subtracting
    ``s`` loses every significant digit once ``s`` is large; this form keeps
    full relative precision in ``t`` for all ``s``.

    The root lies in ``[0, expm1(log_gain)]``. Newton's method is started at
    the upper end; the residual is concave and increasing in ``t``, so the
    first step lands at or below the root and later steps climb to it
    monotonically.
    """
    s_arr, g_arr = np.broadcast_arrays(np.asarray(s, dtype=float),
                                       np.asarray(log_gain, dtype=float))
    if (np.any(~(s_arr > 0)) or np.any(~np.isfinite(s_arr))
            or np.any(~np.isfinite(g_arr)) or np.any(g_arr < 0)):
        raise DomainError("lambert_w0_excess_ratio needs finite s > 0 and finite log_gain >= 0")
    t = np.expm1(g_arr)
    for _ in range(MAX_ITER):
        f = np.log1p(t) + s_arr * t - g_arr
        dt = f / (1.0 / (1.0 + t) + s_arr)
        t = t - dt
        if np.all(np.abs(dt) <= 4 * _EPS * np.abs(t)):
            break
    else:
        raise ConvergenceError("lambert_w0_excess_ratio did not converge")
    return _scalar_or_array(t)
