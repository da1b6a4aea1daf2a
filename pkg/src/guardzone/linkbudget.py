"""CDMA forward-link power bookkeeping at the J4 (transmit filter output) port."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import ConfigError
from .units import PowerQuantity

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CdmaForwardBudget:
    total_transmit_power: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_watts(25.0))
    pilot_fraction: float = 0.16
    pilot_digital_gain: float = 108.0
    traffic_digital_gain: float = 80.0
    activity_factor: float = 0.6
    processing_gain: float = 128.0
    base_antenna_gain_net_db: float = 9.0
    mobile_antenna_gain_net_db: float = 0.0
    mobile_noise_floor: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_dbm(-105.0))
    max_traffic_power_threshold: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_dbm(32.0))

    def __post_init__(self):
        errors = budget_errors(self)
        if errors:
            raise ConfigError(errors)
        if self.max_traffic_power_threshold > max_traffic_channel_power(self):
            log.warning("max_traffic_power_threshold %s exceeds the digital-gain maximum %s",
                        self.max_traffic_power_threshold, max_traffic_channel_power(self))


def budget_errors(b: CdmaForwardBudget) -> list[str]:
    errors = []
    for name in ("total_transmit_power", "mobile_noise_floor", "max_traffic_power_threshold"):
        if not getattr(b, name).value_mw > 0:
            errors.append(f"{name} must be positive")
    if not 0 < b.pilot_fraction <= 1:
        errors.append("pilot_fraction must be in (0, 1]")
    if not 0 < b.activity_factor <= 1:
        errors.append("activity_factor must be in (0, 1]")
    for name in ("pilot_digital_gain", "traffic_digital_gain", "processing_gain"):
        if not getattr(b, name) > 0:
            errors.append(f"{name} must be positive")
    return errors


def pilot_power(budget: CdmaForwardBudget) -> PowerQuantity:
    return budget.total_transmit_power * budget.pilot_fraction


def max_traffic_channel_power(budget: CdmaForwardBudget) -> PowerQuantity:
    """Full-rate traffic channel power implied by the digital gains.

    Transmit power scales with the square of the digital gain, so the traffic
    channel gets ``pilot * (traffic_gain / pilot_gain)**2``.
    """
    return pilot_power(budget) * (budget.traffic_digital_gain / budget.pilot_digital_gain) ** 2


def average_traffic_power_fraction(budget: CdmaForwardBudget) -> float:
    """Traffic-power threshold as a fraction of total transmit power."""
    return budget.max_traffic_power_threshold / budget.total_transmit_power
