"""Guard-zone and interference analysis for CDMA systems overlaid on FM cellular systems."""

from .errors import CapacityError, ConfigError, DomainError, GuardZoneError
from .units import PowerQuantity, dbm_to_milliwatts, milliwatts_to_dbm, ratio_to_db, db_to_ratio
from .propagation import PropagationModel, path_gain, validate_model
from .layout import CellLayout, InterfererRing, cochannel_reuse_distance, overlay_extent, surrounding_fm_ring
from .linkbudget import CdmaForwardBudget, average_traffic_power_fraction, max_traffic_channel_power, pilot_power
from .solver import GuardZoneResult
from .forward_link import (
    ForwardScenario,
    external_interference_penalty,
    fm_interference_at_mobile,
    forward_guard_zone,
    forward_power_curve,
    required_traffic_power,
)
from .reverse_link import (
    ReverseScenario,
    aggregate_mobile_interference,
    cir_degradation_curve,
    fm_cell_cir,
    mobile_transmit_power,
    monte_carlo_interference,
    reverse_guard_zone,
)

__version__ = "0.1.0"
