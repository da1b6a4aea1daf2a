"""FM cell sites interfering with CDMA mobiles (forward link).

The victim is a CDMA mobile on the edge of a boundary overlay cell, on the
line toward the nearest surrounding FM site.  The traffic-channel power its
serving site must radiate follows from

    Eb/N0 = PG * P_T * L(R) * Gm / (I_FM(D) + I_other + N_m + psi * P_tot * L(R) * Gm)

with every site power expressed as ERP (J4 power times site antenna gain).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .layout import CellLayout, overlay_sites, surrounding_fm_ring, victim_position
from .linkbudget import CdmaForwardBudget
from .propagation import PropagationModel
from .solver import GuardZoneResult, min_satisfying_distance
from .units import PowerQuantity, db_to_ratio, total_power

# FM cell radius at which the nominal FM ERP applies when ERP scales with radius
ERP_REFERENCE_RADIUS = 14.0
GUARD_BRACKET_TIERS = 20


@dataclass(frozen=True)
class ForwardScenario:
    layout: CellLayout
    budget: CdmaForwardBudget = field(default_factory=CdmaForwardBudget)
    prop: PropagationModel = field(default_factory=PropagationModel)
    fm_erp_per_channel: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_watts(100.0))
    target_eb_n0_db: float = 5.5
    # None: six other overlay sites radiating psi * P_total each
    other_cell_cdma_interference: PowerQuantity | None = None
    include_own_cell_interference: bool = True
    fm_erp_scales_with_radius: bool = False

    def __post_init__(self):
        errors = []
        if not math.isfinite(self.target_eb_n0_db):
            errors.append("target_eb_n0_db must be finite")
        if not self.fm_erp_per_channel.value_mw > 0:
            errors.append("fm_erp_per_channel must be positive")
        if errors:
            raise ConfigError(errors)


def _fm_erp(sc: ForwardScenario) -> PowerQuantity:
    erp = sc.fm_erp_per_channel
    if sc.fm_erp_scales_with_radius:
        erp = erp * (sc.layout.fm_radius / ERP_REFERENCE_RADIUS) ** sc.prop.exponent
    return erp


def _site_erp(sc: ForwardScenario) -> PowerQuantity:
    return sc.budget.total_transmit_power * db_to_ratio(sc.budget.base_antenna_gain_net_db)


def fm_interference_at_mobile(sc: ForwardScenario, D: float) -> PowerQuantity:
    """Total in-band FM power received by the victim mobile at guard distance ``D``.

    An FM carrier sits wholly inside the CDMA band, so no bandwidth scaling
    applies.
    """
    ring = surrounding_fm_ring(sc.layout, D)
    g_m = db_to_ratio(sc.budget.mobile_antenna_gain_net_db)
    per_site = _fm_erp(sc) * (sc.layout.channels_per_site * g_m)
    return total_power(per_site * (n * sc.prop.gain(d)) for d, n in ring.entries)


def own_cell_interference(sc: ForwardScenario) -> PowerQuantity:
    b = sc.budget
    return _site_erp(sc) * (b.activity_factor * sc.prop.gain(sc.layout.cdma_radius)
                            * db_to_ratio(b.mobile_antenna_gain_net_db))


def other_cell_interference(sc: ForwardScenario) -> PowerQuantity:
    if sc.other_cell_cdma_interference is not None:
        return sc.other_cell_cdma_interference
    b = sc.budget
    vx, vy = victim_position(sc.layout)
    sites = overlay_sites(sc.layout)
    sites = np.delete(sites, 1, axis=0)  # serving site
    dist = np.hypot(sites[:, 0] - vx, sites[:, 1] - vy)
    g = math.fsum(sc.prop.gain(float(d)) for d in dist)
    return _site_erp(sc) * (b.activity_factor * g * db_to_ratio(b.mobile_antenna_gain_net_db))


def required_traffic_power(sc: ForwardScenario, D: float) -> PowerQuantity:
    """Traffic-channel power at the J4 port needed for the target Eb/N0 at the victim."""
    if not D >= 0:
        raise DomainError(f"guard distance must be >= 0, got {D!r}")
    b = sc.budget
    interference = (fm_interference_at_mobile(sc, D) + other_cell_interference(sc)
                    + b.mobile_noise_floor)
    if sc.include_own_cell_interference:
        interference = interference + own_cell_interference(sc)
    link = sc.prop.gain(sc.layout.cdma_radius) * db_to_ratio(b.mobile_antenna_gain_net_db)
    erp = interference * (db_to_ratio(sc.target_eb_n0_db) / b.processing_gain / link)
    return erp / db_to_ratio(b.base_antenna_gain_net_db)


def forward_guard_zone(sc: ForwardScenario, tol: float = 0.01) -> GuardZoneResult:
    """Smallest guard distance keeping the required traffic power at or below the threshold."""
    threshold = sc.budget.max_traffic_power_threshold.dbm
    tier = sc.layout.fm_tier
    return min_satisfying_distance(lambda D: threshold - required_traffic_power(sc, D).dbm,
                                   GUARD_BRACKET_TIERS * tier, tier, tol)


def forward_power_curve(sc: ForwardScenario, d_values) -> list[tuple[float, float]]:
    """(D miles, required traffic power dBm) for each D."""
    d_values = list(d_values)
    if not d_values:
        raise DomainError("d_values must be non-empty")
    return [(float(D), required_traffic_power(sc, D).dbm) for D in d_values]


def external_interference_penalty(i_ext: PowerQuantity, noise_floor: PowerQuantity) -> float:
    """Reduction in forward-link maximum path loss (dB) caused by external interference."""
    if not noise_floor.value_mw > 0:
        raise DomainError("noise floor must be positive")
    return 10.0 * math.log1p(i_ext / noise_floor) / math.log(10.0)
