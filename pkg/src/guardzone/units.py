"""Power and distance units.

Absolute powers are carried as linear milliwatts in :class:`PowerQuantity`.
Ratios in dB and distances in miles are plain floats; the helpers below are
the only places where conversions happen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

FEET_PER_MILE = 5280.0

# FM voice channel and CDMA carrier bandwidths, kHz
FM_CHANNEL_BANDWIDTH_KHZ = 30.0
CDMA_BANDWIDTH_KHZ = 1228.8


def ratio_to_db(x: float) -> float:
    """Return ``10*log10(x)`` for a positive linear ratio."""
    if not x > 0:
        raise DomainError(f"ratio must be positive, got {x!r}")
    return 10.0 * math.log10(x)


def db_to_ratio(db: float) -> float:
    return 10.0 ** (db / 10.0)


def milliwatts_to_dbm(p: PowerQuantity | float) -> float:
    mw = p.value_mw if isinstance(p, PowerQuantity) else float(p)
    if not mw > 0:
        raise DomainError(f"power must be positive to express in dBm, got {mw!r} mW")
    return 10.0 * math.log10(mw)


def dbm_to_milliwatts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


def feet_to_miles(feet: float) -> float:
    return feet / FEET_PER_MILE


def miles_to_feet(miles: float) -> float:
    return miles * FEET_PER_MILE


@dataclass(frozen=True, order=True)
class PowerQuantity:
    """A non-negative power in linear milliwatts.

    Arithmetic is linear: ``a + b`` adds milliwatts, ``k * a`` scales them.
    Use :attr:`dbm` (or :func:`milliwatts_to_dbm`) for the log view.
    """

    value_mw: float

    def __post_init__(self):
        v = float(self.value_mw)
        if not v >= 0 or math.isinf(v):
            raise DomainError(f"power must be finite and non-negative, got {self.value_mw!r} mW")
        object.__setattr__(self, "value_mw", v)

    @classmethod
    def from_dbm(cls, dbm: float) -> PowerQuantity:
        return cls(dbm_to_milliwatts(dbm))

    @classmethod
    def from_watts(cls, watts: float) -> PowerQuantity:
        return cls(watts * 1e3)

    @classmethod
    def zero(cls) -> PowerQuantity:
        return cls(0.0)

    @property
    def watts(self) -> float:
        return self.value_mw * 1e-3

    @property
    def dbm(self) -> float:
        return milliwatts_to_dbm(self.value_mw)

    def __add__(self, other: PowerQuantity) -> PowerQuantity:
        if not isinstance(other, PowerQuantity):
            return NotImplemented
        return PowerQuantity(self.value_mw + other.value_mw)

    def __mul__(self, k: float) -> PowerQuantity:
        if isinstance(k, PowerQuantity):
            return NotImplemented
        return PowerQuantity(self.value_mw * float(k))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerQuantity):
            return self.value_mw / other.value_mw
        return PowerQuantity(self.value_mw / float(other))

    def __str__(self) -> str:
        if self.value_mw == 0:
            return "0 mW"
        return f"{self.dbm:.2f} dBm"


def total_power(powers) -> PowerQuantity:
    """Linear sum of an iterable of :class:`PowerQuantity`."""
    return PowerQuantity(math.fsum(p.value_mw for p in powers))
