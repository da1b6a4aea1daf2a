import logging

import pytest

from guardzone.errors import ConfigError
from guardzone.linkbudget import (
    CdmaForwardBudget, average_traffic_power_fraction, max_traffic_channel_power, pilot_power,
)
from guardzone.units import PowerQuantity


def test_pilot_power():
    assert pilot_power(CdmaForwardBudget()).watts == pytest.approx(4.0, rel=1e-15)
    b = CdmaForwardBudget(pilot_fraction=1.0)
    assert pilot_power(b) == b.total_transmit_power
    assert pilot_power(CdmaForwardBudget(total_transmit_power=PowerQuantity.from_watts(10))).watts == \
        pytest.approx(1.6)


@pytest.mark.parametrize("gain, watts", [(80, 2.195), (108, 4.0), (40, 0.549)])
def test_max_traffic_channel_power(gain, watts):
    p = max_traffic_channel_power(CdmaForwardBudget(traffic_digital_gain=gain))
    assert p.watts == pytest.approx(watts, abs=5e-4)


def test_max_traffic_is_33_4_dbm():
    p = max_traffic_channel_power(CdmaForwardBudget())
    assert p.dbm == pytest.approx(33.414, abs=1e-3)
    assert round(p.dbm, 1) == 33.4


def test_quadratic_in_digital_gain():
    for g in (10.0, 33.0, 80.0):
        a = max_traffic_channel_power(CdmaForwardBudget(traffic_digital_gain=g))
        b = max_traffic_channel_power(CdmaForwardBudget(traffic_digital_gain=2 * g))
        assert b / a == pytest.approx(4.0, rel=1e-15)


def test_threshold_fraction():
    assert average_traffic_power_fraction(CdmaForwardBudget()) == pytest.approx(0.0634, abs=5e-4)
    same = CdmaForwardBudget(max_traffic_power_threshold=PowerQuantity.from_watts(25))
    assert average_traffic_power_fraction(same) == 1.0
    b = CdmaForwardBudget(max_traffic_power_threshold=PowerQuantity.from_dbm(30))
    assert average_traffic_power_fraction(b) == pytest.approx(0.04, rel=1e-12)


@pytest.mark.parametrize("kw, field", [
    (dict(pilot_fraction=1.5), "pilot_fraction"),
    (dict(activity_factor=0), "activity_factor"),
    (dict(processing_gain=-1), "processing_gain"),
    (dict(total_transmit_power=PowerQuantity(0)), "total_transmit_power"),
])
def test_invalid_budgets(kw, field):
    with pytest.raises(ConfigError, match=field):
        CdmaForwardBudget(**kw)


def test_warns_when_threshold_above_computed_maximum(caplog):
    with caplog.at_level(logging.WARNING, logger="guardzone.linkbudget"):
        CdmaForwardBudget(max_traffic_power_threshold=PowerQuantity.from_dbm(34))
    assert "exceeds" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="guardzone.linkbudget"):
        CdmaForwardBudget()
    assert caplog.text == ""
