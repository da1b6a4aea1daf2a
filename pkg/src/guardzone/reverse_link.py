"""CDMA mobiles interfering with FM cell sites (reverse link).

Aggregate interference from a disc of power-controlled CDMA mobiles
---------------------------------------------------------------------
Mobiles are spread uniformly over a disc of radius R and power-controlled
toward the disc centre, so a mobile at radius rho transmits
``P * (rho/R)**n`` where P is the disc-edge power and n the path-loss
exponent.  For n = 4 the mean received power at a point d_bar > R from the
centre has the closed form

    I(d_bar) = kappa * (2*alpha*N*P / R**2) * B(d_bar, R)
    B = 2 d^2 ln(d^2/(d^2-R^2)) - R^2 (4d^4 - 6R^2 d^2 + R^4) / (2 (d^2-R^2)^2)

because ``(2/R**2) * B`` equals the disc average of ``rho**4 / dist**4``.
Matching the sampled sum of ``P (rho/R)^4 * gain(dist)`` term by term gives
``kappa = gain(R)``: the propagation model's path gain at the disc radius.
:func:`fit_kappa` recovers the same number from the Monte Carlo oracle at
d_bar = 100 R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ConfigError, DomainError
from .layout import CellLayout, cochannel_reuse_distance, overlay_extent, overlay_sites
from .propagation import PropagationModel
from .solver import GuardZoneResult, min_satisfying_distance
from .units import CDMA_BANDWIDTH_KHZ, FM_CHANNEL_BANDWIDTH_KHZ, PowerQuantity, db_to_ratio, ratio_to_db

GUARD_BRACKET_TIERS = 20
MC_CHUNK = 1 << 16
_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 40


@dataclass(frozen=True)
class ReverseScenario:
    layout: CellLayout
    prop: PropagationModel = field(default_factory=PropagationModel)
    fm_erp_per_channel: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_watts(100.0))
    cochannel_interferer_count: int = 5
    bandwidth_ratio: float = FM_CHANNEL_BANDWIDTH_KHZ / CDMA_BANDWIDTH_KHZ
    users: int = 20  # per omni cell or per sector
    activity_factor: float = 0.6
    processing_gain: float = 128.0
    target_eb_n0_db: float = 7.0
    cdma_site_noise_floor: PowerQuantity = field(default_factory=lambda: PowerQuantity.from_dbm(-107.0))
    other_cell_factor: float = 0.45
    acceptable_cir_db: float = 17.0
    site_antenna_gain_net_db: float = 9.0
    # sum one disc per overlay cell instead of a single overlay-wide disc
    per_cell_discs: bool = False

    def __post_init__(self):
        errors = []
        if not 0 < self.bandwidth_ratio < 1:
            errors.append("bandwidth_ratio must be in (0, 1)")
        if not self.users >= 1:
            errors.append("users must be >= 1")
        if not 0 < self.activity_factor <= 1:
            errors.append("activity_factor must be in (0, 1]")
        if not self.other_cell_factor >= 0:
            errors.append("other_cell_factor must be >= 0")
        if not 1 <= self.cochannel_interferer_count <= 6:
            errors.append("cochannel_interferer_count must be in 1..6")
        if not self.processing_gain > 0:
            errors.append("processing_gain must be positive")
        if not self.cdma_site_noise_floor.value_mw > 0:
            errors.append("cdma_site_noise_floor must be positive")
        if not self.fm_erp_per_channel.value_mw > 0:
            errors.append("fm_erp_per_channel must be positive")
        if errors:
            raise ConfigError(errors)


def disc_interference_factor(d_bar: float, R: float) -> float:
    """``(2/R**2) * B(d_bar, R)``: disc average of (rho/dist)**4, dimensionless."""
    if not R > 0:
        raise DomainError("disc radius must be positive")
    if not d_bar > R:
        raise DomainError(f"inside source disc: d_bar={d_bar!r} <= R={R!r}")
    x = (R / d_bar) ** 2
    if x < _SERIES_CUTOFF:
        # B/R^2 = sum_{n>=2} (2/(n+1) + (n-3)/2) x^n; avoids cancellation far out
        s = math.fsum((2.0 / (n + 1) + (n - 3) / 2.0) * x ** n for n in range(2, _SERIES_TERMS))
    else:
        s = (2.0 / x) * -math.log1p(-x) - (4.0 - 6.0 * x + x * x) / (2.0 * (1.0 - x) ** 2)
    return 2.0 * s


def aggregate_mobile_interference(d_bar: float, R: float, alpha: float, n_users: int,
                                  p_mobile: PowerQuantity, prop: PropagationModel) -> PowerQuantity:
    """Mean power received at ``d_bar`` from ``n_users`` power-controlled mobiles in a disc of radius ``R``.

    ``p_mobile`` is the ERP of a mobile on the disc edge.
    """
    kappa = prop.gain(R)
    return p_mobile * (alpha * n_users * kappa * disc_interference_factor(d_bar, R))


def monte_carlo_interference(d_bar: float, R: float, alpha: float, n_users: int,
                             p_mobile: PowerQuantity, prop: PropagationModel,
                             samples: int, seed: int) -> tuple[PowerQuantity, PowerQuantity]:
    """Sampled estimate of :func:`aggregate_mobile_interference`; returns (mean, stderr).

    Positions are area-uniform on the disc.  Samples are drawn in fixed-size
    chunks, each from its own child seed, so results depend only on
    ``(samples, seed)``.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    if not R > 0:
        raise DomainError("disc radius must be positive")
    n_chunks = -(-samples // MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    scale = alpha * n_users * p_mobile.value_mw
    count, mean, m2 = 0, 0.0, 0.0
    for i, child in enumerate(children):
        m = min(MC_CHUNK, samples - i * MC_CHUNK)
        rng = np.random.Generator(np.random.PCG64(child))
        u, v = rng.random(m), rng.random(m)
        rho = R * np.sqrt(u)
        theta = 2.0 * np.pi * v
        dist = np.hypot(rho * np.cos(theta) - d_bar, rho * np.sin(theta))
        vals = scale * (rho / R) ** prop.exponent * prop.gain_array(dist)
        c_mean = float(vals.mean())
        c_m2 = float(((vals - c_mean) ** 2).sum())
        # Chan et al. pairwise combination
        delta = c_mean - mean
        total = count + m
        mean += delta * m / total
        m2 += c_m2 + delta * delta * count * m / total
        count = total
    var = m2 / (count - 1) if count > 1 else 0.0
    return PowerQuantity(mean), PowerQuantity(math.sqrt(var / count))


def fit_kappa(R: float, prop: PropagationModel, samples: int = 1_000_000, seed: int = 0,
              ratio: float = 100.0) -> float:
    """Normalisation that maps the closed form onto the Monte Carlo oracle at ``d_bar = ratio*R``."""
    p = PowerQuantity(1.0)
    mc, _ = monte_carlo_interference(ratio * R, R, 1.0, 1, p, prop, samples, seed)
    return mc.value_mw / disc_interference_factor(ratio * R, R)


def received_power_per_user(sc: ReverseScenario) -> PowerQuantity:
    """Power each in-cell mobile must deliver to its site for the target Eb/N0.

    Solves ``Eb/N0 = PG * S / (N0 + (N-1) * alpha * S * (1 + f))`` for S.
    """
    q = db_to_ratio(sc.target_eb_n0_db) / sc.processing_gain
    load = (sc.users - 1) * sc.activity_factor * q * (1.0 + sc.other_cell_factor)
    if load >= 1.0:
        raise CapacityError(
            f"reverse link beyond pole: PG={sc.processing_gain:g} must exceed "
            f"(Eb/N0)*(N-1)*alpha*(1+f)={sc.processing_gain * load:.4g}")
    return sc.cdma_site_noise_floor * (q / (1.0 - load))


def mobile_transmit_power(sc: ReverseScenario) -> PowerQuantity:
    """ERP of a CDMA mobile on its cell edge."""
    s = received_power_per_user(sc)
    link = sc.prop.gain(sc.layout.cdma_radius) * db_to_ratio(sc.site_antenna_gain_net_db)
    return s / link


def cdma_interference_at_fm_site(sc: ReverseScenario, D: float) -> PowerQuantity:
    """Wideband CDMA mobile power arriving at the victim FM site (before bandwidth scaling)."""
    if not D >= 0:
        raise DomainError(f"guard distance must be >= 0, got {D!r}")
    lay = sc.layout
    p_m = mobile_transmit_power(sc)
    extent = overlay_extent(lay)
    d_bar = extent + D + lay.fm_radius
    if not sc.per_cell_discs:
        n = sc.users * lay.overlay_cells * lay.sectors
        return aggregate_mobile_interference(d_bar, extent, sc.activity_factor, n, p_m, sc.prop)
    total = PowerQuantity.zero()
    for x, y in overlay_sites(lay):
        d = math.hypot(d_bar - x, y)
        total = total + aggregate_mobile_interference(
            d, lay.cdma_radius, sc.activity_factor, sc.users * lay.sectors, p_m, sc.prop)
    return total


def _carrier(sc: ReverseScenario) -> PowerQuantity:
    return sc.fm_erp_per_channel * sc.prop.gain(sc.layout.fm_radius)


def _cochannel(sc: ReverseScenario) -> PowerQuantity:
    d = cochannel_reuse_distance(sc.layout.fm_radius, sc.layout.reuse_pattern)
    return sc.fm_erp_per_channel * (sc.cochannel_interferer_count * sc.prop.gain(d))


def fm_only_cir(sc: ReverseScenario) -> float:
    """FM site C/I (dB) with co-channel FM interference only: the D -> infinity limit."""
    return ratio_to_db(_carrier(sc) / _cochannel(sc))


def fm_cell_cir(sc: ReverseScenario, D: float) -> float:
    """C/I (dB) at the nearest surrounding FM site for guard distance ``D``."""
    cdma = cdma_interference_at_fm_site(sc, D) * sc.bandwidth_ratio
    return ratio_to_db(_carrier(sc) / (_cochannel(sc) + cdma))


def reverse_guard_zone(sc: ReverseScenario, tol: float = 0.01) -> GuardZoneResult:
    """Smallest guard distance giving FM site C/I at or above the acceptable value."""
    tier = sc.layout.fm_tier
    if sc.acceptable_cir_db == -math.inf:
        return GuardZoneResult(0.0, 0.0, True, 0, [])
    return min_satisfying_distance(lambda D: fm_cell_cir(sc, D) - sc.acceptable_cir_db,
                                   GUARD_BRACKET_TIERS * tier, tier, tol)


def cir_degradation_curve(sc: ReverseScenario, d_values) -> list[tuple[float, float]]:
    d_values = list(d_values)
    if not d_values:
        raise DomainError("d_values must be non-empty")
    return [(float(D), fm_cell_cir(sc, D)) for D in d_values]
