"""Mean path loss between a cell-site antenna and a mobile antenna.

Log-distance power law with Lee-style antenna-height gain terms:

    gain_db(d) = -L0 - 10*n*log10(d/d0)
                 + gb*log2(hb/150 ft) + gm*log2(hm/5 ft)

where ``gb``/``gm`` are the height gains per doubling (6 dB and 3 dB by
default).  Below ``d0`` the gain is held at its reference value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConfigError, DomainError
from .units import feet_to_miles

DEFAULT_BASE_HEIGHT = feet_to_miles(150.0)
DEFAULT_MOBILE_HEIGHT = feet_to_miles(5.0)


@dataclass(frozen=True)
class PropagationModel:
    exponent: float = 4.0
    reference_distance: float = 1.0  # miles
    # 1-mile intercept; 110 dB reproduces the 7 mi omni forward guard zone
    reference_loss_db: float = 110.0
    base_height: float = DEFAULT_BASE_HEIGHT  # miles
    mobile_height: float = DEFAULT_MOBILE_HEIGHT  # miles
    base_height_gain_per_doubling_db: float = 6.0
    mobile_height_gain_per_doubling_db: float = 3.0

    def height_gain_db(self) -> float:
        return (self.base_height_gain_per_doubling_db * math.log2(self.base_height / DEFAULT_BASE_HEIGHT)
                + self.mobile_height_gain_per_doubling_db * math.log2(self.mobile_height / DEFAULT_MOBILE_HEIGHT))

    def gain_db(self, d: float) -> float:
        """Path gain in dB (negative of the loss) at distance ``d`` miles."""
        if not d > 0:
            raise DomainError(f"distance must be positive, got {d!r} mi")
        d = max(d, self.reference_distance)
        return (-self.reference_loss_db
                - 10.0 * self.exponent * math.log10(d / self.reference_distance)
                + self.height_gain_db())

    def gain(self, d: float) -> float:
        return 10.0 ** (self.gain_db(d) / 10.0)

    def gain_array(self, d: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`gain`; distances below ``d0`` (including 0) are clamped."""
        d = np.maximum(np.asarray(d, dtype=float), self.reference_distance)
        g_db = (-self.reference_loss_db
                - 10.0 * self.exponent * np.log10(d / self.reference_distance)
                + self.height_gain_db())
        return 10.0 ** (g_db / 10.0)


def path_gain(model: PropagationModel, d: float) -> float:
    """Linear path gain (<= 1 for realistic intercepts) at ``d`` miles."""
    return model.gain(d)


def model_errors(model: PropagationModel) -> list[str]:
    errors = []
    if not model.exponent > 0:
        errors.append("exponent must be positive")
    if not model.reference_distance > 0:
        errors.append("reference_distance must be positive")
    if not model.base_height > 0:
        errors.append("base_height must be positive")
    if not model.mobile_height > 0:
        errors.append("mobile_height must be positive")
    for f in fields(model):
        v = getattr(model, f.name)
        if not math.isfinite(v):
            errors.append(f"{f.name} must be finite")
    return errors


def validate_model(model: PropagationModel) -> PropagationModel:
    """Return ``model`` unchanged, or raise :class:`ConfigError` listing every violation."""
    errors = model_errors(model)
    if errors:
        raise ConfigError(errors)
    return model
