"""Bisection for the smallest guard distance that meets a link criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

DEFAULT_TOLERANCE = 0.01  # miles
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class GuardZoneResult:
    min_distance: float  # miles
    in_fm_tiers: float
    converged: bool
    iterations: int
    trace: list[tuple[float, float]] = field(default_factory=list)
    diagnostic: str = ""


def min_satisfying_distance(objective: Callable[[float], float], upper: float, tier: float,
                            tol: float = DEFAULT_TOLERANCE) -> GuardZoneResult:
    """Smallest D in [0, upper] with ``objective(D) >= 0``.

    ``objective`` must be non-decreasing in D (margin against the criterion).
    The returned distance satisfies the criterion and lies within ``tol`` of
    a distance that violates it.
    """
    trace = []

    def f(x):
        v = objective(x)
        trace.append((x, v))
        return v

    if f(0.0) >= 0:
        return GuardZoneResult(0.0, 0.0, True, 0, trace)
    if f(upper) < 0:
        return GuardZoneResult(upper, upper / tier, False, 0, trace,
                               f"criterion not met at upper bracket D={upper:.4g} mi")
    lo, hi = 0.0, upper
    it = 0
    while hi - lo > tol and it < MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        if f(mid) >= 0:
            hi = mid
        else:
            lo = mid
        it += 1
    return GuardZoneResult(hi, hi / tier, True, it, trace)
