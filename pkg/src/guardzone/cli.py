"""Command-line front end.

    guardzone <subcommand> [--config PATH] [--preset NAME] [--out DIR]
              [--seed N] [--samples N] [--explain] [--ring-at MILES]

Each subcommand writes one CSV series plus ``report.txt`` into ``--out``.
Exit status: 0 success, 1 invalid input, 2 solver did not converge.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import PRESETS, RunConfig, load_config
from .errors import GuardZoneError
from .forward_link import external_interference_penalty, forward_guard_zone, forward_power_curve
from .layout import surrounding_fm_ring
from .linkbudget import average_traffic_power_fraction, max_traffic_channel_power, pilot_power
from .output import emit_csv, write_report
from .reverse_link import (
    aggregate_mobile_interference, cir_degradation_curve, fm_cell_cir, fm_only_cir,
    mobile_transmit_power, monte_carlo_interference, reverse_guard_zone,
)
from .units import PowerQuantity

EXIT_OK, EXIT_INPUT, EXIT_NOCONVERGE = 0, 1, 2
GUARD_HEADERS = ["cdma_radius_mi", "fm_radius_ratio", "fm_radius_mi", "guard_distance_mi",
                 "guard_distance_fm_tiers", "converged", "iterations"]


def _grid(start: float, stop: float, step: float) -> list[float]:
    n = int(round((stop - start) / step))
    return [start + i * step for i in range(n + 1)]


def _curve_grid(cfg: RunConfig) -> list[float]:
    return _grid(0.0, cfg["grid", "curve_d_max_mi"], cfg["grid", "curve_d_step_mi"])


def cmd_budget(cfg: RunConfig, out: Path) -> tuple[int, list[str]]:
    b = cfg.budget()
    mx = max_traffic_channel_power(b)
    rows = [
        ("total_transmit_power", b.total_transmit_power.watts, b.total_transmit_power.dbm),
        ("pilot_power", pilot_power(b).watts, pilot_power(b).dbm),
        ("max_traffic_channel_power", mx.watts, mx.dbm),
        ("traffic_power_threshold", b.max_traffic_power_threshold.watts, b.max_traffic_power_threshold.dbm),
    ]
    emit_csv(rows, ["quantity", "watts", "dbm"], out / "budget.csv")
    frac = average_traffic_power_fraction(b)
    return EXIT_OK, [
        f"pilot={pilot_power(b).watts:.3f} W ({pilot_power(b).dbm:.2f} dBm)",
        f"max_traffic={mx.watts:.3f} W = {mx.dbm:.1f} dBm",
        f"threshold={b.max_traffic_power_threshold.watts:.3f} W ({b.max_traffic_power_threshold.dbm:.1f} dBm)",
        f"threshold_fraction={100 * frac:.1f}% of total",
    ]


def cmd_forward_curve(cfg: RunConfig, out: Path) -> tuple[int, list[str]]:
    sc = cfg.forward_scenario()
    emit_csv(forward_power_curve(sc, _curve_grid(cfg)), ["d_miles", "power_dbm"], out / "forward_curve.csv")
    res = forward_guard_zone(sc)
    lines = [f"R={sc.layout.cdma_radius:g} mi r={sc.layout.fm_radius:g} mi sectors={sc.layout.sectors}",
             _guard_line(res)]
    return _status(res, out, "forward_trace.csv", lines)


def cmd_reverse_cir(cfg: RunConfig, out: Path) -> tuple[int, list[str]]:
    sc = cfg.reverse_scenario()
    emit_csv(cir_degradation_curve(sc, _curve_grid(cfg)), ["d_miles", "cir_db"], out / "reverse_cir.csv")
    rows = []
    for R in cfg["grid", "scan_radii_mi"]:
        s = cfg.reverse_scenario(cfg.layout(R, R))
        rows.append((R, fm_cell_cir(s, 0.0)))
    emit_csv(rows, ["radius_mi", "cir_db_at_zero_guard"], out / "reverse_cir_vs_radius.csv")
    return EXIT_OK, [
        f"R={sc.layout.cdma_radius:g} mi r={sc.layout.fm_radius:g} mi sectors={sc.layout.sectors}",
        f"mobile_erp={mobile_transmit_power(sc).dbm:.2f} dBm",
        f"cir(D=0)={fm_cell_cir(sc, 0.0):.2f} dB",
        f"cir(D->inf)={fm_only_cir(sc):.2f} dB",
    ]


def _scan(cfg: RunConfig, out: Path, which: str) -> tuple[int, list[str]]:
    rows, lines, failed = [], [], None
    for R in cfg["grid", "scan_radii_mi"]:
        for k in cfg["grid", "scan_ratios"]:
            lay = cfg.layout(R, k * R)
            if which == "forward":
                res = forward_guard_zone(cfg.forward_scenario(lay))
            else:
                res = reverse_guard_zone(cfg.reverse_scenario(lay))
            rows.append((R, k, k * R, res.min_distance, res.in_fm_tiers, res.converged, res.iterations))
            lines.append(f"R={R:g} r={k * R:g}: " + _guard_line(res))
            if not res.converged and failed is None:
                failed = res
    emit_csv(rows, GUARD_HEADERS, out / f"{which}_guardzone.csv")
    if failed is not None:
        return _status(failed, out, f"{which}_trace.csv", lines)
    return EXIT_OK, lines


def cmd_forward_guardzone(cfg, out):
    return _scan(cfg, out, "forward")


def cmd_reverse_guardzone(cfg, out):
    return _scan(cfg, out, "reverse")


def cmd_external_penalty(cfg: RunConfig, out: Path) -> tuple[int, list[str]]:
    floor = cfg.budget().mobile_noise_floor
    grid = _grid(cfg["grid", "penalty_min_dbm"], cfg["grid", "penalty_max_dbm"], cfg["grid", "penalty_step_db"])
    rows = [(i, external_interference_penalty(PowerQuantity.from_dbm(i), floor)) for i in grid]
    emit_csv(rows, ["i_ext_dbm", "penalty_db"], out / "external_penalty.csv")
    at120 = external_interference_penalty(PowerQuantity.from_dbm(-120.0), floor)
    return EXIT_OK, [f"noise_floor={floor.dbm:.1f} dBm", f"penalty(-120 dBm)={at120:.3f} dB"]


def cmd_validate_eqa3(cfg: RunConfig, out: Path) -> tuple[int, list[str]]:
    seed, samples = cfg.require_monte_carlo()
    sc = cfg.reverse_scenario()
    R = sc.layout.cdma_radius
    p = mobile_transmit_power(sc)
    rows, worst = [], 0.0
    for q in cfg["grid", "eqa3_ratios"]:
        closed = aggregate_mobile_interference(q * R, R, sc.activity_factor, sc.users, p, sc.prop)
        mean, err = monte_carlo_interference(q * R, R, sc.activity_factor, sc.users, p, sc.prop, samples, seed)
        rel = (mean.value_mw - closed.value_mw) / closed.value_mw
        worst = max(worst, abs(rel))
        rows.append((q, closed.value_mw, mean.value_mw, err.value_mw, rel))
    emit_csv(rows, ["d_bar_over_R", "closed_form_mw", "mc_mean_mw", "mc_stderr_mw", "rel_err"],
             out / "eqa3_validation.csv")
    return EXIT_OK, [f"R={R:g} mi samples={samples} seed={seed}", f"max |rel_err|={worst:.3e}"]


def _guard_line(res) -> str:
    s = f"D={res.min_distance:.2f} mi ({res.in_fm_tiers:.3f} FM tiers)"
    return s + ("" if res.converged else f" NOT CONVERGED: {res.diagnostic}")


def _status(res, out: Path, trace_name: str, lines: list[str]) -> tuple[int, list[str]]:
    if res.converged:
        return EXIT_OK, lines
    path = emit_csv(res.trace, ["d_miles", "objective"], out / trace_name)
    lines.append(f"bracketing trace: {path}")
    return EXIT_NOCONVERGE, lines


COMMANDS = {
    "budget": cmd_budget,
    "forward-curve": cmd_forward_curve,
    "forward-guardzone": cmd_forward_guardzone,
    "reverse-cir": cmd_reverse_cir,
    "reverse-guardzone": cmd_reverse_guardzone,
    "external-penalty": cmd_external_penalty,
    "validate-eqa3": cmd_validate_eqa3,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="guardzone", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", type=Path, help="INI config file (overrides the preset)")
    ap.add_argument("--preset", choices=sorted(PRESETS), help="parameter preset (default omni-default)")
    ap.add_argument("--out", type=Path, default=Path("guardzone-out"), help="output directory")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--explain", action="store_true", help="print effective parameters and their origin")
    ap.add_argument("--ring-at", type=float, metavar="MILES",
                    help="also dump the surrounding FM ring at this guard distance to ring.csv")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.preset)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.samples is not None:
            if args.samples < 1:
                raise GuardZoneError("--samples must be positive")
            cfg.samples = args.samples
        if args.explain:
            print("\n".join(cfg.explain()))
        args.out.mkdir(parents=True, exist_ok=True)
        status, lines = COMMANDS[args.command](cfg, args.out)
        if args.ring_at is not None:
            ring = surrounding_fm_ring(cfg.layout(), args.ring_at)
            emit_csv(ring.as_rows(), ["distance_miles", "site_weight"], args.out / "ring.csv")
    except (GuardZoneError, OSError) as exc:
        print(f"guardzone: error: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_INPUT
    header = [f"command: {args.command}", f"preset: {cfg.preset}"]
    write_report(header + lines, args.out / "report.txt")
    print("\n".join(lines))
    return status


def main() -> None:
    sys.exit(run())
