"""Hexagonal-lattice geometry for the CDMA-FM overlay and its FM surroundings.

Cell radius means circumradius (center to vertex); adjacent cell centers are
``sqrt(3)*radius`` apart.  The overlay is a 7-cell cluster centred on the
origin.  The surrounding FM sites are placed on one circle just outside the
guard zone, and the victim CDMA mobile sits on the overlay edge facing the
nearest of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .units import CDMA_BANDWIDTH_KHZ, FM_CHANNEL_BANDWIDTH_KHZ

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class CellLayout:
    cdma_radius: float  # R, miles
    fm_radius: float  # r, miles
    sectors: int = 1
    reuse_pattern: int = 7
    overlay_cells: int = 7
    # per omni cell or per sector; None derives it from the bandwidths
    fm_channels_in_cdma_band: int | None = None
    # extra FM rings beyond the first, each one hex row (1.5 r) further out
    extra_rings: int = 0

    def __post_init__(self):
        errors = layout_errors(self)
        if errors:
            raise ConfigError(errors)

    @property
    def channels_per_site(self) -> int:
        """In-band FM channels radiating toward the victim from each FM site.

        Defaults to the number of 30 kHz channels of one reuse set that fall
        inside a 1.2288 MHz CDMA carrier: 6 per omni cell for K=7, 2 per
        sector for K=7 with 3 sectors.
        """
        if self.fm_channels_in_cdma_band is not None:
            return self.fm_channels_in_cdma_band
        sets = self.reuse_pattern * self.sectors
        return max(1, round(CDMA_BANDWIDTH_KHZ / FM_CHANNEL_BANDWIDTH_KHZ / sets))

    @property
    def fm_tier(self) -> float:
        """Spacing of one ring of FM cells, sqrt(3)*r."""
        return SQRT3 * self.fm_radius


def layout_errors(layout: CellLayout) -> list[str]:
    errors = []
    if not layout.cdma_radius > 0:
        errors.append("cdma_radius must be positive")
    if not layout.fm_radius > 0:
        errors.append("fm_radius must be positive")
    if layout.sectors not in (1, 3):
        errors.append("sectors must be 1 or 3")
    if not layout.reuse_pattern >= 1:
        errors.append("reuse_pattern must be >= 1")
    if not layout.overlay_cells >= 1:
        errors.append("overlay_cells must be >= 1")
    if layout.fm_channels_in_cdma_band is not None and not layout.fm_channels_in_cdma_band >= 1:
        errors.append("fm_channels_in_cdma_band must be >= 1")
    if layout.extra_rings < 0:
        errors.append("extra_rings must be >= 0")
    return errors


@dataclass(frozen=True)
class InterfererRing:
    """Distinct victim-to-site distances (miles) and the site weight at each.

    Weights are whole sites except for the pair of partially-counted sites
    at the far end of a ring (see :func:`ring_sites`).
    """

    entries: tuple[tuple[float, float], ...]

    @property
    def distances(self) -> list[float]:
        return [d for d, _ in self.entries]

    @property
    def site_count(self) -> float:
        return sum(n for _, n in self.entries)

    @property
    def nearest(self) -> float:
        return self.entries[0][0]

    def as_rows(self) -> list[tuple[float, float]]:
        return list(self.entries)


def cochannel_reuse_distance(r: float, K: int) -> float:
    """Tier-1 co-channel distance sqrt(3K)*r."""
    if not r > 0:
        raise DomainError("cell radius must be positive")
    if not K >= 1:
        raise DomainError("reuse pattern must be >= 1")
    return math.sqrt(3.0 * K) * r


def overlay_extent(layout: CellLayout) -> float:
    """Distance from the overlay centre to its outer edge, (sqrt(3)+1)*R."""
    if layout.overlay_cells != 7:
        raise DomainError(f"unsupported overlay composition: {layout.overlay_cells} cells (only 7)")
    return (SQRT3 + 1.0) * layout.cdma_radius


def overlay_sites(layout: CellLayout) -> np.ndarray:
    """(x, y) of the 7 overlay cell sites; index 1 is the boundary cell facing +x."""
    R = layout.cdma_radius
    angles = np.deg2rad(np.arange(0, 360, 60))
    ring = SQRT3 * R * np.column_stack([np.cos(angles), np.sin(angles)])
    return np.vstack([[0.0, 0.0], ring])


def victim_position(layout: CellLayout) -> tuple[float, float]:
    return overlay_extent(layout), 0.0


def ring_site_count(ring_radius: float, r: float) -> float:
    """Sites that fit on a ring of FM cells: ``max(6, 2*pi*rho / (sqrt(3)*r))``.

    Kept real-valued so the ring grows continuously with its radius.
    """
    return max(6.0, 2.0 * math.pi * ring_radius / (SQRT3 * r))


def ring_sites(layout: CellLayout, D: float) -> tuple[np.ndarray, np.ndarray]:
    """Positions ``(n, 2)`` and weights ``(n,)`` of the surrounding FM sites.

    Sites are spaced ``2*pi/c`` apart in angle (``c`` from
    :func:`ring_site_count`), symmetric about the +x axis where the first
    site sits.  The fractional part of ``c`` goes to one extra pair at the
    far end of the ring, so total interference has no jumps as ``D`` grows
    and every whole site recedes from the victim.
    """
    if not D >= 0:
        raise DomainError(f"guard distance must be >= 0, got {D!r}")
    r = layout.fm_radius
    base = overlay_extent(layout) + D + r
    pts, wts = [], []
    for k in range(layout.extra_rings + 1):
        rho = base + 1.5 * r * k
        c = ring_site_count(rho, r)
        m = int((c - 1.0) // 2.0)
        idx = np.arange(-(m + 1), m + 2)
        w = np.ones(idx.size)
        w[0] = w[-1] = (c - (2 * m + 1)) / 2.0
        theta = 2.0 * math.pi * idx / c
        keep = w > 0
        pts.append(rho * np.column_stack([np.cos(theta[keep]), np.sin(theta[keep])]))
        wts.append(w[keep])
    return np.vstack(pts), np.concatenate(wts)


def surrounding_fm_ring(layout: CellLayout, D: float, victim_at_edge: bool = True) -> InterfererRing:
    """Victim-to-site distances for the FM sites just outside a guard zone of width ``D``.

    With ``victim_at_edge`` the victim is on the overlay edge (worst case);
    otherwise it is at the overlay centre.
    """
    sites, weights = ring_sites(layout, D)
    vx = overlay_extent(layout) if victim_at_edge else 0.0
    d = np.hypot(sites[:, 0] - vx, sites[:, 1])
    keys, first, inverse = np.unique(np.round(d, 6), return_index=True, return_inverse=True)
    totals = np.bincount(inverse.ravel(), weights=weights, minlength=keys.size)
    return InterfererRing(tuple((float(d[i]), float(t)) for i, t in zip(first, totals)))
