import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from guardzone.errors import ConfigError, DomainError
from guardzone.propagation import PropagationModel, path_gain, validate_model
from guardzone.units import feet_to_miles


def test_reference_point():
    m = PropagationModel()
    assert path_gain(m, 1.0) == pytest.approx(10 ** (-m.reference_loss_db / 10), rel=1e-12)


def test_doubling_distance_costs_12_04_db():
    m = PropagationModel()
    assert m.gain_db(10.0) - m.gain_db(5.0) == pytest.approx(-40 * math.log10(2), abs=1e-12)
    assert -40 * math.log10(2) == pytest.approx(-12.04, abs=0.005)


def test_reuse7_ratio():
    # six tier-1 interferers at sqrt(21) r
    m = PropagationModel()
    r = 14.0
    ratio = path_gain(m, r) / path_gain(m, math.sqrt(21) * r)
    assert ratio == pytest.approx(441.0, rel=1e-12)
    assert 10 * math.log10(ratio) == pytest.approx(26.44, abs=0.005)
    assert 10 * math.log10(ratio / 6) == pytest.approx(18.66, abs=0.005)


def test_clamped_below_reference_distance():
    m = PropagationModel()
    assert m.gain(0.2) == m.gain(1.0)
    with pytest.raises(DomainError):
        m.gain(0.0)


def test_gain_array_matches_scalar():
    m = PropagationModel(base_height=feet_to_miles(200))
    d = np.array([0.0, 0.5, 1.0, 3.7, 55.0])
    expected = [m.gain(max(x, 1.0)) for x in d]
    np.testing.assert_allclose(m.gain_array(d), expected, rtol=1e-13)


@given(st.floats(1.0, 1000.0))
def test_fourth_power_law(d):
    m = PropagationModel()
    assert m.gain(d) * d ** 4 == pytest.approx(m.gain(1.0), rel=1e-9)


@given(st.floats(1.0, 500.0))
def test_base_height_doubling_is_additive(d):
    lo = PropagationModel()
    hi = PropagationModel(base_height=feet_to_miles(300))
    assert hi.gain_db(d) - lo.gain_db(d) == pytest.approx(6.0, abs=1e-12)
    m2 = PropagationModel(mobile_height=feet_to_miles(10))
    assert m2.gain_db(d) - lo.gain_db(d) == pytest.approx(3.0, abs=1e-12)


@given(st.floats(1.0, 100.0), st.floats(1.0001, 10.0))
def test_strictly_decreasing_beyond_reference(d, k):
    m = PropagationModel()
    assert m.gain(d * k) < m.gain(d)


def test_validate_model():
    m = PropagationModel()
    assert validate_model(m) is m
    with pytest.raises(ConfigError, match="exponent must be positive"):
        validate_model(PropagationModel(exponent=0))
    with pytest.raises(ConfigError, match="mobile_height"):
        validate_model(PropagationModel(mobile_height=0.0))
    with pytest.raises(ConfigError) as exc:
        validate_model(PropagationModel(exponent=-1, reference_distance=0))
    assert len(exc.value.errors) == 2
