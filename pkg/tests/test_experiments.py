import math

import numpy as np
import pytest

from oracles import psi_inv_zero_direct
from proactive_jamming import closed_form as cf
from proactive_jamming.closed_form import Regime
from proactive_jamming.experiments import (
    Q_SWEEP_COLUMNS,
    Scheme,
    SweepTable,
    default_gain_grid,
    default_q_grid,
    params_for_gain,
    sweep_gain,
    sweep_q,
)


@pytest.fixture(scope="module")
def q_table():
    from proactive_jamming.params import CANONICAL
    return sweep_q(CANONICAL, default_q_grid())


@pytest.fixture(scope="module")
def gain_table():
    from proactive_jamming.params import CANONICAL
    return sweep_gain(CANONICAL, default_gain_grid())


def test_default_grids():
    q = default_q_grid()
    assert len(q) == 201 and q[0] == 0.0
    assert q[1] == pytest.approx(0.01) and q[-1] == pytest.approx(1000.0)
    g = default_gain_grid()
    assert len(g) == 101 and g[0] == pytest.approx(0.01) and g[-1] == pytest.approx(1.0)


def test_zero_jamming_row(params, q_table):
    q_db, q, r, non_outage, avg = q_table.rows[0]
    assert q_db is None and q == 0.0
    r_ref = psi_inv_zero_direct(params)
    assert r == pytest.approx(r_ref, rel=1e-14)
    assert r == pytest.approx(2.6157, abs=1e-4)
    assert non_outage == pytest.approx(math.exp(-10 * (2**r_ref - 1) / 100), rel=1e-13)
    assert non_outage == pytest.approx(0.5987, abs=1e-4)
    assert avg == pytest.approx(r * non_outage, rel=1e-15)


def test_rows_recomputable_from_closed_form(params, q_table):
    for _, q, r, non_outage, avg in q_table.rows[::17]:
        assert r == cf.psi_inv(params, q)
        assert non_outage == 1 - cf.p1_outage(params, r)
        assert avg == cf.avg_rate(params, r)


def test_q_sweep_trends(q_table):
    assert np.all(np.diff(q_table.column("r_bpshz")) <= 0)
    assert np.all(np.diff(q_table.column("non_outage")) >= 0)


def test_avg_rate_peaks_near_q_opt(params, q_table):
    avg = q_table.column("avg_rate")
    q = q_table.column("q_linear")
    i = int(np.argmax(avg))
    assert q[i - 1] <= cf.solve_optimal(params).q_opt <= q[i + 1]


def test_gain_sweep_landmarks(gain_table):
    passive = gain_table.column("avg_rate_passive")
    assert passive[0] == pytest.approx(0.015486501449676, rel=1e-10)
    assert passive[0] < 0.05


def test_gain_sweep_dominance_and_regimes(params, gain_table):
    opt = gain_table.column("avg_rate_optimal")
    passive = gain_table.column("avg_rate_passive")
    const = gain_table.column("avg_rate_constant")
    assert np.all(opt >= np.maximum(passive, const) - 1e-9)
    for g, o, p in zip(gain_table.column("gain_linear"), opt, passive):
        if cf.solve_optimal(params_for_gain(params, g)).regime is Regime.NO_JAMMING:
            assert abs(o - p) <= 1e-6
    high = gain_table.column("gain_db") >= -5
    assert np.all(np.abs(opt[high] - passive[high]) <= 1e-6)


def test_gain_sweep_shapes(gain_table):
    assert np.all(np.diff(gain_table.column("avg_rate_passive")) >= 0)
    assert np.all(np.diff(gain_table.column("avg_rate_optimal")) >= 0)
    const = gain_table.column("avg_rate_constant")
    k = int(np.argmax(const))
    assert 0 < k < len(const) - 1
    assert np.all(np.diff(const[: k + 1]) > 0) and np.all(np.diff(const[k:]) < 0)


def test_params_for_gain_ties_rates(params):
    p = params_for_gain(params, 0.25)
    assert p.lambda1 == p.lambda2 == 4.0
    assert p.lambda0 == params.lambda0


def test_scheme_subset_columns(params):
    t = sweep_gain(params, [0.01, 0.1], [Scheme.PASSIVE, "optimal"])
    assert t.columns == ("gain_db", "gain_linear", "avg_rate_optimal", "avg_rate_passive")


def test_csv_round_trip(q_table, gain_table):
    for t in (q_table, gain_table):
        text = t.to_csv()
        assert "\r" not in text
        assert SweepTable.from_csv(text) == t
    assert q_table.to_csv().splitlines()[0] == ",".join(Q_SWEEP_COLUMNS)
    assert q_table.to_csv().splitlines()[1].startswith(",0,")


def test_table_rejects_bad_rows(params):
    with pytest.raises(ValueError):
        SweepTable("q", ("a", "b"), ((1.0, 2.0), (1.0, 1.0)))
    with pytest.raises(ValueError):
        SweepTable("q", ("a", "b"), ((1.0, math.inf),))
    with pytest.raises(ValueError):
        sweep_gain(params, [0.0])
