"""Sweep tables behind the jamming-power and channel-gain figures.

``sweep_q`` tabulates rate, eavesdropping non-outage probability and average
eavesdropping rate against jamming power. ``sweep_gain`` compares optimal
jamming with passive eavesdropping (Q = 0) and constant full-power jamming
(Q = Q_max) as the eavesdropping and jamming links strengthen together.

Tables serialise to CSV with 17 significant digits, so a written table
parses back to an identical one.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import closed_form
from .params import SystemParams, db_to_linear, linear_to_db

Q_SWEEP_COLUMNS = ("q_db", "q_linear", "r_bpshz", "non_outage", "avg_rate")


class Scheme(str, Enum):
    OPTIMAL = "optimal"
    PASSIVE = "passive"
    CONSTANT = "constant"


ALL_SCHEMES = (Scheme.OPTIMAL, Scheme.PASSIVE, Scheme.CONSTANT)


@dataclass(frozen=True)
class SweepTable:
    """Rows ordered by the swept variable (column 1, linear scale).

    The dB cell of a zero power is ``None`` (an empty CSV cell).
    """

    swept_name: str
    columns: tuple[str, ...]
    rows: tuple[tuple[float | None, ...], ...]

    def __post_init__(self):
        lin = [row[1] for row in self.rows]
        if any(b <= a for a, b in zip(lin, lin[1:])):
            raise ValueError("rows must be strictly increasing in the swept variable")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match columns")
            if any(v is not None and not math.isfinite(v) for v in row):
                raise ValueError("table cells must be finite")

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([np.nan if row[j] is None else row[j] for row in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(["" if v is None else format(v, ".17g") for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, swept_name: str | None = None) -> SweepTable:
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        rows = tuple(tuple(None if v == "" else float(v) for v in line) for line in reader if line)
        name = swept_name if swept_name is not None else header[1].rsplit("_", 1)[0]
        return cls(name, header, rows)

    def to_records(self) -> list[dict[str, float | None]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _db_or_none(x: float) -> float | None:
    return float(linear_to_db(x)) if x > 0 else None


def default_q_grid(n: int = 200, lo_db: float = -20.0, hi_db: float = 30.0) -> list[float]:
    """``q = 0`` followed by ``n`` log-spaced powers between ``lo_db`` and ``hi_db``."""
    return [0.0, *map(float, db_to_linear(np.linspace(lo_db, hi_db, n)))]


def default_gain_grid(n: int = 101, lo_db: float = -20.0, hi_db: float = 0.0) -> list[float]:
    return list(map(float, db_to_linear(np.linspace(lo_db, hi_db, n))))


def sweep_q(params: SystemParams, q_grid: Sequence[float]) -> SweepTable:
    q = np.asarray(q_grid, dtype=float)
    r = closed_form.psi_inv(params, q)
    r = np.atleast_1d(r)
    non_outage = 1.0 - np.atleast_1d(closed_form.p1_outage(params, r))
    avg = np.atleast_1d(closed_form.avg_rate(params, r))
    rows = tuple(
        (_db_or_none(qi), float(qi), float(ri), float(ni), float(ai))
        for qi, ri, ni, ai in zip(q, r, non_outage, avg)
    )
    return SweepTable("q", Q_SWEEP_COLUMNS, rows)


def params_for_gain(template: SystemParams, gain: float) -> SystemParams:
    """Scenario with equal mean eavesdropping and jamming gains ``gain``."""
    return template.replace(lambda1=1.0 / gain, lambda2=1.0 / gain)


def scheme_avg_rate(params: SystemParams, scheme: Scheme) -> float:
    if scheme is Scheme.OPTIMAL:
        return closed_form.solve_optimal(params).avg_rate_opt
    q = 0.0 if scheme is Scheme.PASSIVE else params.q_max
    return closed_form.avg_rate(params, closed_form.psi_inv(params, q))


def sweep_gain(params_template: SystemParams, gain_grid: Sequence[float],
               schemes: Iterable[Scheme] = ALL_SCHEMES) -> SweepTable:
    chosen = [s for s in ALL_SCHEMES if s in set(Scheme(s) for s in schemes)]
    columns = ("gain_db", "gain_linear", *(f"avg_rate_{s.value}" for s in chosen))
    rows = []
    for g in gain_grid:
        if not g > 0:
            raise ValueError(f"gains must be > 0, got {g!r}")
        p = params_for_gain(params_template, float(g))
        rows.append((float(linear_to_db(g)), float(g), *(scheme_avg_rate(p, s) for s in chosen)))
    return SweepTable("gain", columns, tuple(rows))
