import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from guardzone.errors import ConfigError, DomainError
from guardzone.layout import (
    CellLayout, cochannel_reuse_distance, overlay_extent, ring_sites, surrounding_fm_ring,
)


@pytest.mark.parametrize("r, K, expected", [(1, 1, 1.732), (14, 7, 64.16), (1, 7, 4.583)])
def test_cochannel_reuse_distance(r, K, expected):
    assert cochannel_reuse_distance(r, K) == pytest.approx(expected, abs=5e-3)


def test_reuse_distance_linear_and_monotone():
    assert cochannel_reuse_distance(3.0, 7) == pytest.approx(3 * cochannel_reuse_distance(1.0, 7))
    d = [cochannel_reuse_distance(1.0, K) for K in (1, 3, 4, 7, 9, 12)]
    assert d == sorted(d)


@pytest.mark.parametrize("R, expected", [(14, 38.25), (1, 2.732)])
def test_overlay_extent(R, expected):
    assert overlay_extent(CellLayout(R, R)) == pytest.approx(expected, abs=5e-3)


def test_overlay_extent_other_compositions_unsupported():
    with pytest.raises(DomainError):
        overlay_extent(CellLayout(1, 1, overlay_cells=19))


@pytest.mark.parametrize("kw", [dict(cdma_radius=0, fm_radius=1), dict(cdma_radius=1, fm_radius=-1),
                                dict(cdma_radius=1, fm_radius=1, sectors=2),
                                dict(cdma_radius=1, fm_radius=1, reuse_pattern=0)])
def test_layout_invariants(kw):
    with pytest.raises(ConfigError):
        CellLayout(**kw)


def test_default_channels_per_site():
    assert CellLayout(14, 14).channels_per_site == 6
    assert CellLayout(14, 14, sectors=3).channels_per_site == 2
    assert CellLayout(14, 14, fm_channels_in_cdma_band=4).channels_per_site == 4


def test_nearest_site_at_zero_guard_is_fm_radius():
    lay = CellLayout(14, 9)
    assert surrounding_fm_ring(lay, 0.0).nearest == pytest.approx(9.0, abs=1e-9)


def test_small_fm_cells_give_more_sites():
    R = 14.0
    for D in (0.0, 5.0, 20.0):
        small = surrounding_fm_ring(CellLayout(R, R / 2), D).site_count
        big = surrounding_fm_ring(CellLayout(R, 2 * R), D).site_count
        assert small > big


def test_ring_entries_sorted_and_grouped():
    ring = surrounding_fm_ring(CellLayout(14, 14), 7.0)
    d = ring.distances
    assert d == sorted(d)
    c = 2 * math.pi * ((math.sqrt(3) + 1) * 14 + 21) / (math.sqrt(3) * 14)
    assert ring.site_count == pytest.approx(c, rel=1e-12)
    # nearest site alone, whole sites paired symmetrically, fractional pair last
    assert ring.entries[0][1] == 1
    assert [n for _, n in ring.entries[1:-1]] == [2.0] * 7
    assert ring.entries[-1][1] == pytest.approx(c - 15)


def test_small_ring_holds_six_sites():
    ring = surrounding_fm_ring(CellLayout(1, 10), 0.0)
    assert ring.site_count == 6.0
    assert all(float(n).is_integer() for _, n in ring.entries)


def _victim_distance(extent, rho, theta):
    return math.hypot(rho * math.cos(theta) - extent, rho * math.sin(theta))


def test_moving_ring_out_by_D_moves_sites_at_most_D():
    # brute force over ring angles: triangle inequality on the construction
    lay = CellLayout(14, 14)
    E = overlay_extent(lay)
    for D in (0.5, 3.0, 10.0):
        for theta in np.linspace(0, 2 * math.pi, 721):
            a = _victim_distance(E, E + D + 14, theta)
            b = _victim_distance(E, E + 2 * D + 14, theta)
            assert 0 <= b - a <= D + 1e-12


def test_ring_sites_on_circle():
    lay = CellLayout(10, 5)
    pts, w = ring_sites(lay, 3.0)
    np.testing.assert_allclose(np.hypot(pts[:, 0], pts[:, 1]), overlay_extent(lay) + 3.0 + 5.0)
    assert np.all((w > 0) & (w <= 1))
    # whole sites sit one FM tier apart along the ring
    whole = pts[w == 1]
    gaps = np.hypot(*np.diff(whole[np.argsort(np.arctan2(whole[:, 1], whole[:, 0]))], axis=0).T)
    np.testing.assert_allclose(2 * np.arcsin(gaps / 2 / (overlay_extent(lay) + 8.0)) * (overlay_extent(lay) + 8.0),
                               np.sqrt(3) * 5.0, rtol=1e-12)


def test_extra_rings_add_sites_further_out():
    one = surrounding_fm_ring(CellLayout(14, 14), 5.0)
    two = surrounding_fm_ring(CellLayout(14, 14, extra_rings=1), 5.0)
    assert two.site_count > one.site_count
    assert two.nearest == one.nearest


def test_negative_guard_rejected():
    with pytest.raises(DomainError):
        surrounding_fm_ring(CellLayout(1, 1), -0.1)


@settings(max_examples=60)
@given(st.floats(0.5, 30), st.floats(0.5, 30), st.floats(0, 60), st.floats(0.01, 10))
def test_ring_respects_guard_and_moves_out(R, r, D, dD):
    lay = CellLayout(R, r)
    ring = surrounding_fm_ring(lay, D)
    assert min(ring.distances) >= D
    assert surrounding_fm_ring(lay, D + dD).nearest > ring.nearest


def test_site_count_scales_inversely_with_fm_radius():
    counts = {r: surrounding_fm_ring(CellLayout(14, r), 100.0).site_count for r in (2.0, 4.0, 8.0)}
    E = (math.sqrt(3) + 1) * 14
    assert counts[2.0] / counts[4.0] == pytest.approx(2 * (100 + E + 2) / (100 + E + 4), rel=1e-9)
    assert counts[2.0] / counts[4.0] == pytest.approx(2, rel=0.05)
    assert counts[4.0] / counts[8.0] == pytest.approx(2, rel=0.1)
