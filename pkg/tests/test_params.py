import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from proactive_jamming.errors import InvalidParam, NonPositiveLinear
from proactive_jamming.params import CANONICAL, SystemParams, db_to_linear, linear_to_db, validate


def test_canonical_defaults():
    p = CANONICAL
    assert (p.lambda0, p.lambda1, p.lambda2) == (1.0, 10.0, 10.0)
    assert (p.sigma0_sq, p.sigma1_sq, p.delta) == (1.0, 1.0, 0.05)
    assert p.p_tx == db_to_linear(20.0)
    assert p.q_max == db_to_linear(30.0)
    validate(p)


@pytest.mark.parametrize("field,value", [
    ("delta", 0.0), ("delta", 1.0), ("delta", -0.1), ("delta", math.nan),
    ("lambda1", -1.0), ("lambda0", 0.0), ("lambda2", math.inf),
    ("p_tx", 0.0), ("sigma0_sq", -1.0), ("sigma1_sq", 0.0), ("q_max", 0.0),
])
def test_invalid_field_is_named(field, value):
    with pytest.raises(InvalidParam) as exc:
        SystemParams(**{field: value})
    assert exc.value.field == field
    assert field in str(exc.value)


def test_first_violation_is_reported():
    with pytest.raises(InvalidParam) as exc:
        SystemParams(p_tx=-1.0, delta=2.0)
    assert exc.value.field == "p_tx"


def test_immutable_and_replace_revalidates():
    with pytest.raises(dataclasses.FrozenInstanceError):
        CANONICAL.delta = 0.1
    assert CANONICAL.replace(lambda1=0.5).lambda1 == 0.5
    with pytest.raises(InvalidParam):
        CANONICAL.replace(delta=1.5)


@pytest.mark.parametrize("db,linear", [(20.0, 100.0), (0.0, 1.0), (30.0, 1000.0), (-10.0, 0.1)])
def test_db_to_linear(db, linear):
    assert db_to_linear(db) == pytest.approx(linear, rel=1e-15)
    assert linear_to_db(linear) == pytest.approx(db, abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_linear_to_db_rejects_nonpositive(bad):
    with pytest.raises(NonPositiveLinear):
        linear_to_db(bad)


def test_conversions_vectorise():
    x = np.array([1e-6, 1.0, 1e6])
    np.testing.assert_allclose(linear_to_db(x), [-60.0, 0.0, 60.0])


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_round_trip(x):
    assert abs(db_to_linear(linear_to_db(x)) - x) <= 1e-12 * x
