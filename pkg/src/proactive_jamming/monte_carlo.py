"""Monte-Carlo oracle for the closed forms.

Randomness comes from numpy's Philox4x64 counter-based generator. A sample
of size ``n`` is cut into fixed-size chunks; chunk ``i`` uses
``Philox(key=seed, counter=[0, 0, i, 0])``, which gives non-overlapping
substreams. Estimates are therefore a deterministic function of
``(params, n, seed)`` whatever the number of worker threads.

Exponential gains use inverse-transform sampling, ``g = -ln(u) / lam`` with
``u`` uniform on (0, 1].
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from . import closed_form
from .errors import DomainError
from .params import PowerLinear, RateBpsHz, SystemParams

CHUNK_SIZE = 1 << 17
N_SIGMA = 4.0


@dataclass(frozen=True)
class ChannelDraw:
    g0: float
    g1: float
    g2: float


@dataclass(frozen=True)
class ChannelDraws:
    """A block of channel realisations stored column-wise."""

    g0: np.ndarray
    g1: np.ndarray
    g2: np.ndarray

    def __len__(self) -> int:
        return len(self.g0)

    def __iter__(self) -> Iterator[ChannelDraw]:
        for a, b, c in zip(self.g0, self.g1, self.g2):
            yield ChannelDraw(float(a), float(b), float(c))


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int

    def agrees_with(self, value: float, n_sigma: float = N_SIGMA) -> bool:
        return abs(self.mean - value) <= n_sigma * self.std_error


class GridSearchResult(NamedTuple):
    q_best: PowerLinear
    r_best: RateBpsHz
    avg_best: RateBpsHz


def _uniforms(seed: int, chunk: int, size: int, width: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(counter=[0, 0, chunk, 0], key=seed))
    # random() is on [0, 1); flip it onto (0, 1] so log() stays finite.
    return 1.0 - gen.random((size, width))


def _chunk_sizes(n: int) -> list[int]:
    full, rest = divmod(n, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _gains(params: SystemParams, seed: int, chunk: int, size: int) -> ChannelDraws:
    e = -np.log(_uniforms(seed, chunk, size, 3))
    return ChannelDraws(e[:, 0] / params.lambda0, e[:, 1] / params.lambda1,
                        e[:, 2] / params.lambda2)


def iter_gain_chunks(params: SystemParams, n: int, seed: int) -> Iterator[ChannelDraws]:
    """Stream ``n`` channel draws as consecutive chunks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seed = _check_seed(seed)
    for i, size in enumerate(_chunk_sizes(n)):
        yield _gains(params, seed, i, size)


def sample_gains(params: SystemParams, n: int, seed: int) -> ChannelDraws:
    chunks = list(iter_gain_chunks(params, n, seed))
    return ChannelDraws(*(np.concatenate([getattr(c, f) for c in chunks])
                          for f in ("g0", "g1", "g2")))


def _map_chunks(fn: Callable[[int, int], np.ndarray], n: int, workers: int) -> np.ndarray:
    """Apply ``fn(chunk_index, size)`` to every chunk and sum the integer counts."""
    sizes = _chunk_sizes(n)
    if workers <= 1:
        parts = [fn(i, s) for i, s in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, range(len(sizes)), sizes))
    return np.sum(parts, axis=0)


def _binomial(count: int, n: int, seed: int, scale: float = 1.0) -> MonteCarloEstimate:
    p = count / n
    return MonteCarloEstimate(scale * p, scale * math.sqrt(p * (1.0 - p) / n), n, seed)


def estimate_outages(params: SystemParams, r: RateBpsHz, q: PowerLinear, n: int, seed: int,
                     workers: int = 1) -> tuple[MonteCarloEstimate, MonteCarloEstimate]:
    """Empirical outage probabilities at the suspicious receiver and at the monitor."""
    if not r > 0:
        raise DomainError(f"rate must be > 0, got {r!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    seed = _check_seed(seed)

    def count(chunk, size):
        g = _gains(params, seed, chunk, size)
        rates = closed_form.instantaneous_rates(params, g.g0, g.g1, g.g2, q)
        return np.array([np.count_nonzero(rates.r0 < r), np.count_nonzero(rates.r1 < r)])

    c0, c1 = _map_chunks(count, n, workers)
    return _binomial(int(c0), n, seed), _binomial(int(c1), n, seed)


def estimate_avg_rate(params: SystemParams, r: RateBpsHz, q: PowerLinear, n: int, seed: int,
                      workers: int = 1) -> MonteCarloEstimate:
    """Empirical ``r * P(r1 >= r)``."""
    if not r >= 0:
        raise DomainError(f"rate must be >= 0, got {r!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    seed = _check_seed(seed)

    def count(chunk, size):
        g = _gains(params, seed, chunk, size)
        rates = closed_form.instantaneous_rates(params, g.g0, g.g1, g.g2, q)
        return np.array([np.count_nonzero(rates.r1 >= r)])

    (hits,) = _map_chunks(count, n, workers)
    return _binomial(int(hits), n, seed, scale=r)


def cdf_exp_difference(tl1: float, tl2: float, z: float) -> float:
    """``P(X1 - X2 < z)`` for independent ``X1 ~ Exp(tl1)``, ``X2 ~ Exp(tl2)``, ``z >= 0``."""
    if not (tl1 > 0 and tl2 > 0):
        raise DomainError("rates must be > 0")
    if not z >= 0:
        raise DomainError(f"only z >= 0 is supported, got {z!r}")
    return 1.0 - tl2 / (tl1 + tl2) * math.exp(-tl1 * z)


def estimate_exp_difference_cdf(tl1: float, tl2: float, z: float, n: int, seed: int,
                                workers: int = 1) -> MonteCarloEstimate:
    if n < 1:
        raise ValueError("n must be >= 1")
    seed = _check_seed(seed)

    def count(chunk, size):
        e = -np.log(_uniforms(seed, chunk, size, 2))
        return np.array([np.count_nonzero(e[:, 0] / tl1 - e[:, 1] / tl2 < z)])

    (hits,) = _map_chunks(count, n, workers)
    return _binomial(int(hits), n, seed)


def q_grid(q_max: float, n_grid: int, q_min_log: float = 1e-6) -> np.ndarray:
    """Sorted union of a linear grid on [0, q_max] and a log grid on [q_min_log, q_max].

    Both grids use ``n_grid`` intervals and fractions ``i / n_grid``, so the
    grid for ``2 * n_grid`` contains the one for ``n_grid`` exactly.
    """
    frac = np.arange(n_grid + 1) / n_grid
    lin = q_max * frac
    lo, hi = math.log(q_min_log), math.log(q_max)
    log = np.exp(lo + (hi - lo) * frac)
    log[-1] = q_max
    return np.unique(np.concatenate([lin, log]))


def grid_search_optimal(params: SystemParams, n_grid: int) -> GridSearchResult:
    """Brute-force maximum of the average rate over a jamming-power grid.

    Ties go to the smallest jamming power.
    """
    if n_grid < 100:
        raise ValueError("n_grid must be >= 100")
    qs = q_grid(params.q_max, n_grid)
    rates = closed_form.psi_inv(params, qs)
    avg = closed_form.avg_rate(params, rates)
    i = int(np.argmax(avg))
    return GridSearchResult(float(qs[i]), float(rates[i]), float(avg[i]))


@dataclass(frozen=True)
class ValidationRow:
    quantity: str
    point: int
    closed_form: float
    mc_mean: float
    std_error: float

    @property
    def passed(self) -> bool:
        return abs(self.mc_mean - self.closed_form) <= N_SIGMA * self.std_error


def _sub_seed(seed: int, *path: int) -> int:
    return int(np.random.SeedSequence([seed, *path]).generate_state(1, np.uint64)[0])


def validation_suite(params: SystemParams, n: int, seed: int, n_points: int = 20,
                     workers: int = 1) -> list[ValidationRow]:
    """Compare every closed form with its Monte-Carlo estimate.

    Operating points ``(r, q)`` are drawn from ``seed``: ``q`` log-uniform on
    ``[1e-2, q_max]`` and ``r`` uniform on ``[psi_inv(0) / 4, psi_inv(0)]``,
    a range where no probability is degenerate. At each point the outage at
    the receiver is also checked through the exponential-difference CDF with
    the matching rates. Two extra rows check the solved optimum.
    """
    seed = _check_seed(seed)
    pick = np.random.Generator(np.random.Philox(key=_sub_seed(seed, 0)))
    r_zero = closed_form.psi_inv(params, 0.0)
    rows = []
    for i in range(n_points):
        q = float(math.exp(pick.uniform(math.log(1e-2), math.log(params.q_max))))
        r = float(pick.uniform(0.25 * r_zero, r_zero))
        s = _sub_seed(seed, 1, i)
        p0, p1 = estimate_outages(params, r, q, n, s, workers)
        x = math.expm1(r * closed_form.LN2)
        tl1 = params.lambda0 / params.p_tx
        tl2 = params.lambda2 / (x * q)
        z = params.sigma0_sq * x
        cdf = estimate_exp_difference_cdf(tl1, tl2, z, n, _sub_seed(seed, 2, i), workers)
        avg = estimate_avg_rate(params, r, q, n, s, workers)
        rows += [
            ValidationRow("p0_outage", i, closed_form.p0_outage(params, r, q), p0.mean, p0.std_error),
            ValidationRow("p1_outage", i, closed_form.p1_outage(params, r), p1.mean, p1.std_error),
            ValidationRow("exp_difference_cdf", i, cdf_exp_difference(tl1, tl2, z), cdf.mean,
                          cdf.std_error),
            ValidationRow("avg_rate", i, closed_form.avg_rate(params, r), avg.mean, avg.std_error),
        ]
    sol = closed_form.solve_optimal(params)
    s = _sub_seed(seed, 3)
    p0, _ = estimate_outages(params, sol.r_opt, sol.q_opt, n, s, workers)
    avg = estimate_avg_rate(params, sol.r_opt, sol.q_opt, n, s, workers)
    rows += [
        ValidationRow("p0_outage@opt", n_points, closed_form.p0_outage(params, sol.r_opt, sol.q_opt),
                      p0.mean, p0.std_error),
        ValidationRow("avg_rate@opt", n_points, sol.avg_rate_opt, avg.mean, avg.std_error),
    ]
    return rows
