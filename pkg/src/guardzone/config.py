"""Run configuration: presets, strict INI parsing and scenario construction.

A config file is INI with the sections below; every key is optional and
overrides the chosen preset.  Unknown sections or keys are errors.

    [run]         preset, seed, samples
    [propagation] exponent, reference_distance_mi, reference_loss_db, ...
    [layout]      cdma_radius_mi, fm_radius_mi, sectors, ...
    [budget]      total_transmit_power_w, pilot_fraction, ...
    [forward]     fm_erp_per_channel_w, target_eb_n0_db, ...
    [reverse]     users, other_cell_factor, acceptable_cir_db, ...
    [grid]        curve_d_max_mi, scan_radii_mi, ...
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, GuardZoneError
from .forward_link import ForwardScenario
from .layout import CellLayout
from .linkbudget import CdmaForwardBudget
from .propagation import PropagationModel, model_errors
from .reverse_link import ReverseScenario
from .units import CDMA_BANDWIDTH_KHZ, FM_CHANNEL_BANDWIDTH_KHZ, PowerQuantity, feet_to_miles


def _bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _float_list(s: str) -> tuple[float, ...]:
    items = [x.strip() for x in s.split(",") if x.strip()]
    if not items:
        raise ValueError("empty list")
    return tuple(float(x) for x in items)


def _optional_int(s: str):
    return None if s.strip().lower() in ("", "auto", "none") else int(s)


def _optional_float(s: str):
    return None if s.strip().lower() in ("", "computed", "none") else float(s)


def _float(s: str) -> float:
    return float(s)


# section -> key -> parser
SCHEMA = {
    "run": {"preset": str, "seed": int, "samples": int},
    "propagation": {
        "exponent": _float, "reference_distance_mi": _float, "reference_loss_db": _float,
        "base_height_ft": _float, "mobile_height_ft": _float,
        "base_height_gain_per_doubling_db": _float, "mobile_height_gain_per_doubling_db": _float,
    },
    "layout": {
        "cdma_radius_mi": _float, "fm_radius_mi": _float, "sectors": int, "reuse_pattern": int,
        "overlay_cells": int, "fm_channels_in_cdma_band": _optional_int, "extra_rings": int,
    },
    "budget": {
        "total_transmit_power_w": _float, "pilot_fraction": _float, "pilot_digital_gain": _float,
        "traffic_digital_gain": _float, "activity_factor": _float, "processing_gain": _float,
        "base_antenna_gain_net_db": _float, "mobile_antenna_gain_net_db": _float,
        "mobile_noise_floor_dbm": _float, "max_traffic_power_threshold_dbm": _float,
    },
    "forward": {
        "fm_erp_per_channel_w": _float, "target_eb_n0_db": _float,
        "other_cell_cdma_interference_dbm": _optional_float,
        "include_own_cell_interference": _bool, "fm_erp_scales_with_radius": _bool,
    },
    "reverse": {
        "fm_erp_per_channel_w": _float, "cochannel_interferer_count": int, "bandwidth_ratio": _float,
        "users": int, "activity_factor": _float, "processing_gain": _float, "target_eb_n0_db": _float,
        "cdma_site_noise_floor_dbm": _float, "other_cell_factor": _float, "acceptable_cir_db": _float,
        "site_antenna_gain_net_db": _float, "per_cell_discs": _bool,
    },
    "grid": {
        "curve_d_max_mi": _float, "curve_d_step_mi": _float, "scan_radii_mi": _float_list,
        "scan_ratios": _float_list, "penalty_min_dbm": _float, "penalty_max_dbm": _float,
        "penalty_step_db": _float, "eqa3_ratios": _float_list,
    },
}

POSITIVE = {
    ("propagation", "reference_distance_mi"), ("propagation", "base_height_ft"),
    ("propagation", "mobile_height_ft"), ("propagation", "exponent"),
    ("layout", "cdma_radius_mi"), ("layout", "fm_radius_mi"),
    ("budget", "total_transmit_power_w"), ("budget", "pilot_digital_gain"),
    ("budget", "traffic_digital_gain"), ("budget", "processing_gain"),
    ("forward", "fm_erp_per_channel_w"), ("reverse", "fm_erp_per_channel_w"),
    ("reverse", "processing_gain"), ("reverse", "users"), ("run", "samples"),
    ("grid", "curve_d_step_mi"), ("grid", "penalty_step_db"),
}

_COMMON = {
    ("propagation", "exponent"): (4.0, "fourth-power distance law"),
    ("propagation", "reference_distance_mi"): (1.0, "intercept quoted at 1 mile"),
    ("propagation", "reference_loss_db"): (110.0, "1-mile intercept calibrated to the 7 mi omni guard zone"),
    ("propagation", "base_height_ft"): (150.0, "cell site antenna height 150 ft"),
    ("propagation", "mobile_height_ft"): (5.0, "mobile antenna height 5 ft"),
    ("propagation", "base_height_gain_per_doubling_db"): (6.0, "Lee base height gain, 6 dB/octave"),
    ("propagation", "mobile_height_gain_per_doubling_db"): (3.0, "Lee mobile height gain, 3 dB/octave"),
    ("layout", "cdma_radius_mi"): (14.0, "CDMA cell radius 14 mi"),
    ("layout", "fm_radius_mi"): (14.0, "FM cell radius 14 mi"),
    ("layout", "reuse_pattern"): (7, "FM frequency reuse pattern 7"),
    ("layout", "overlay_cells"): (7, "7 CDMA-FM mixed cells"),
    ("layout", "fm_channels_in_cdma_band"): (None, "auto: 30 kHz channels of one reuse set inside 1.2288 MHz"),
    ("layout", "extra_rings"): (0, "single surrounding FM ring"),
    ("budget", "total_transmit_power_w"): (25.0, "total transmit power 25 W at J4"),
    ("budget", "pilot_fraction"): (0.16, "pilot is 16% of total power"),
    ("budget", "pilot_digital_gain"): (108.0, "nominal pilot digital gain 108"),
    ("budget", "traffic_digital_gain"): (80.0, "traffic digital gain upper end, 80"),
    ("budget", "activity_factor"): (0.6, "channel activity factor 0.6"),
    ("budget", "processing_gain"): (128.0, "processing gain 128"),
    ("budget", "mobile_antenna_gain_net_db"): (0.0, "mobile antenna gain minus cable loss 0 dB"),
    ("budget", "mobile_noise_floor_dbm"): (-105.0, "mobile noise floor -105 dBm (NF 8 dB)"),
    ("budget", "max_traffic_power_threshold_dbm"): (32.0, "conservative traffic power threshold 32 dBm"),
    ("forward", "fm_erp_per_channel_w"): (100.0, "FM cell ERP per channel 100 W"),
    ("forward", "target_eb_n0_db"): (5.5, "mobile receive Eb/N0 5.5 dB"),
    ("forward", "other_cell_cdma_interference_dbm"): (None, "computed from the other six overlay sites"),
    ("forward", "include_own_cell_interference"): (True, "own-cell forward interference included"),
    ("forward", "fm_erp_scales_with_radius"): (False, "FM ERP independent of cell radius"),
    ("reverse", "fm_erp_per_channel_w"): (100.0, "FM ERP per channel 100 W"),
    ("reverse", "bandwidth_ratio"): (FM_CHANNEL_BANDWIDTH_KHZ / CDMA_BANDWIDTH_KHZ, "30 kHz / 1228.8 kHz"),
    ("reverse", "users"): (20, "20 CDMA users per cell (omni) or per sector"),
    ("reverse", "activity_factor"): (0.6, "channel activity factor 0.6"),
    ("reverse", "processing_gain"): (128.0, "processing gain 128"),
    ("reverse", "target_eb_n0_db"): (7.0, "cell site receive Eb/N0 7 dB"),
    ("reverse", "cdma_site_noise_floor_dbm"): (-107.0, "cell site noise floor -107 dBm"),
    ("reverse", "other_cell_factor"): (0.45, "other-cell interference 0.45 of in-cell"),
    ("reverse", "acceptable_cir_db"): (17.0, "acceptable FM cell site C/I 17 dB"),
    ("reverse", "per_cell_discs"): (False, "single overlay-wide mobile disc"),
    ("grid", "curve_d_max_mi"): (30.0, "curve grid 0..30 mi"),
    ("grid", "curve_d_step_mi"): (0.25, "curve grid step 0.25 mi"),
    ("grid", "scan_radii_mi"): ((1.0, 2.0, 4.0, 7.0, 10.0, 14.0), "guard-zone scan radii"),
    ("grid", "scan_ratios"): ((1.0, 0.5, 2.0), "FM radius = R, R/2, 2R"),
    ("grid", "penalty_min_dbm"): (-140.0, "external interference grid start"),
    ("grid", "penalty_max_dbm"): (-90.0, "external interference grid end"),
    ("grid", "penalty_step_db"): (1.0, "external interference grid step"),
    ("grid", "eqa3_ratios"): ((1.2, 1.5, 2.0, 3.0, 5.0, 10.0), "d_bar/R validation points"),
}

PRESETS = {
    "omni-default": {
        **_COMMON,
        ("layout", "sectors"): (1, "omni CDMA and FM cells"),
        ("budget", "base_antenna_gain_net_db"): (9.0, "CDMA base antenna gain minus cable loss 9 dB"),
        ("reverse", "cochannel_interferer_count"): (5, "five remaining tier-1 FM co-channel cells"),
        ("reverse", "site_antenna_gain_net_db"): (9.0, "cell site antenna gain minus cable loss 9 dB"),
    },
    "sector3-default": {
        **_COMMON,
        ("layout", "sectors"): (3, "3-sector CDMA and FM cells"),
        ("layout", "fm_channels_in_cdma_band"): (2, "2 interfering FM channels per sector"),
        ("budget", "base_antenna_gain_net_db"): (12.0, "cell site antenna gain minus cable loss 12 dB"),
        ("reverse", "users"): (20, "20 CDMA users per sector"),
        ("reverse", "cochannel_interferer_count"): (1, "one tier-1 FM co-channel cell"),
        ("reverse", "site_antenna_gain_net_db"): (12.0, "cell site antenna gain minus cable loss 12 dB"),
    },
}
DEFAULT_PRESET = "omni-default"


@dataclass
class RunConfig:
    preset: str
    values: dict = field(default_factory=dict)  # (section, key) -> value
    provenance: dict = field(default_factory=dict)  # (section, key) -> text
    seed: int | None = None
    samples: int | None = None

    def __getitem__(self, key: tuple[str, str]):
        return self.values[key]

    def with_overrides(self, **kw) -> RunConfig:
        """Copy with ``section__key=value`` overrides (mainly for tests)."""
        cfg = RunConfig(self.preset, dict(self.values), dict(self.provenance), self.seed, self.samples)
        for k, v in kw.items():
            sec, key = k.split("__", 1)
            if key not in SCHEMA.get(sec, {}):
                raise ConfigError(f"unknown key {sec}.{key}")
            cfg.values[(sec, key)] = v
            cfg.provenance[(sec, key)] = "override"
        cfg.check()
        return cfg

    # scenario builders -------------------------------------------------

    def propagation(self) -> PropagationModel:
        v = self.values
        return PropagationModel(
            exponent=v["propagation", "exponent"],
            reference_distance=v["propagation", "reference_distance_mi"],
            reference_loss_db=v["propagation", "reference_loss_db"],
            base_height=feet_to_miles(v["propagation", "base_height_ft"]),
            mobile_height=feet_to_miles(v["propagation", "mobile_height_ft"]),
            base_height_gain_per_doubling_db=v["propagation", "base_height_gain_per_doubling_db"],
            mobile_height_gain_per_doubling_db=v["propagation", "mobile_height_gain_per_doubling_db"],
        )

    def layout(self, cdma_radius: float | None = None, fm_radius: float | None = None) -> CellLayout:
        v = self.values
        return CellLayout(
            cdma_radius=v["layout", "cdma_radius_mi"] if cdma_radius is None else cdma_radius,
            fm_radius=v["layout", "fm_radius_mi"] if fm_radius is None else fm_radius,
            sectors=v["layout", "sectors"],
            reuse_pattern=v["layout", "reuse_pattern"],
            overlay_cells=v["layout", "overlay_cells"],
            fm_channels_in_cdma_band=v["layout", "fm_channels_in_cdma_band"],
            extra_rings=v["layout", "extra_rings"],
        )

    def budget(self) -> CdmaForwardBudget:
        v = self.values
        return CdmaForwardBudget(
            total_transmit_power=PowerQuantity.from_watts(v["budget", "total_transmit_power_w"]),
            pilot_fraction=v["budget", "pilot_fraction"],
            pilot_digital_gain=v["budget", "pilot_digital_gain"],
            traffic_digital_gain=v["budget", "traffic_digital_gain"],
            activity_factor=v["budget", "activity_factor"],
            processing_gain=v["budget", "processing_gain"],
            base_antenna_gain_net_db=v["budget", "base_antenna_gain_net_db"],
            mobile_antenna_gain_net_db=v["budget", "mobile_antenna_gain_net_db"],
            mobile_noise_floor=PowerQuantity.from_dbm(v["budget", "mobile_noise_floor_dbm"]),
            max_traffic_power_threshold=PowerQuantity.from_dbm(v["budget", "max_traffic_power_threshold_dbm"]),
        )

    def forward_scenario(self, layout: CellLayout | None = None) -> ForwardScenario:
        v = self.values
        other = v["forward", "other_cell_cdma_interference_dbm"]
        return ForwardScenario(
            layout=layout or self.layout(),
            budget=self.budget(),
            prop=self.propagation(),
            fm_erp_per_channel=PowerQuantity.from_watts(v["forward", "fm_erp_per_channel_w"]),
            target_eb_n0_db=v["forward", "target_eb_n0_db"],
            other_cell_cdma_interference=None if other is None else PowerQuantity.from_dbm(other),
            include_own_cell_interference=v["forward", "include_own_cell_interference"],
            fm_erp_scales_with_radius=v["forward", "fm_erp_scales_with_radius"],
        )

    def reverse_scenario(self, layout: CellLayout | None = None) -> ReverseScenario:
        v = self.values
        return ReverseScenario(
            layout=layout or self.layout(),
            prop=self.propagation(),
            fm_erp_per_channel=PowerQuantity.from_watts(v["reverse", "fm_erp_per_channel_w"]),
            cochannel_interferer_count=v["reverse", "cochannel_interferer_count"],
            bandwidth_ratio=v["reverse", "bandwidth_ratio"],
            users=v["reverse", "users"],
            activity_factor=v["reverse", "activity_factor"],
            processing_gain=v["reverse", "processing_gain"],
            target_eb_n0_db=v["reverse", "target_eb_n0_db"],
            cdma_site_noise_floor=PowerQuantity.from_dbm(v["reverse", "cdma_site_noise_floor_dbm"]),
            other_cell_factor=v["reverse", "other_cell_factor"],
            acceptable_cir_db=v["reverse", "acceptable_cir_db"],
            site_antenna_gain_net_db=v["reverse", "site_antenna_gain_net_db"],
            per_cell_discs=v["reverse", "per_cell_discs"],
        )

    # validation ----------------------------------------------------------

    def check(self) -> None:
        """Raise :class:`ConfigError` naming every invalid field."""
        errors = []
        for (sec, key), val in self.values.items():
            if (sec, key) in POSITIVE and val is not None and not val > 0:
                errors.append(f"{sec}.{key} must be positive (got {val!r})")
            if isinstance(val, float) and not math.isfinite(val) and (sec, key) != ("reverse", "acceptable_cir_db"):
                errors.append(f"{sec}.{key} must be finite")
        if errors:
            raise ConfigError(errors)
        builders = [("propagation", self.propagation), ("layout", self.layout), ("budget", self.budget),
                    ("forward", self.forward_scenario), ("reverse", self.reverse_scenario)]
        for sec, build in builders:
            try:
                obj = build()
            except ConfigError as exc:
                errors.extend(f"{sec}: {e}" for e in exc.errors)
                continue
            except GuardZoneError as exc:
                errors.append(f"{sec}: {exc}")
                continue
            if sec == "propagation":
                errors.extend(f"propagation: {e}" for e in model_errors(obj))
        if errors:
            raise ConfigError(errors)

    def require_monte_carlo(self) -> tuple[int, int]:
        missing = [n for n in ("seed", "samples") if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"Monte Carlo command needs {' and '.join(missing)} (--seed/--samples or [run])")
        return self.seed, self.samples

    def explain(self) -> list[str]:
        lines = [f"preset = {self.preset}"]
        for (sec, key) in sorted(self.values):
            val = self.values[sec, key]
            if isinstance(val, tuple):
                val = ", ".join(f"{x:g}" for x in val)
            lines.append(f"{sec}.{key} = {val}  # {self.provenance[sec, key]}")
        lines.append(f"run.seed = {self.seed}")
        lines.append(f"run.samples = {self.samples}")
        return lines


def preset_config(name: str = DEFAULT_PRESET) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r} (choose from {', '.join(sorted(PRESETS))})")
    table = PRESETS[name]
    cfg = RunConfig(
        preset=name,
        values={k: v for k, (v, _) in table.items()},
        provenance={k: f"{name}: {why}" for k, (_, why) in table.items()},
    )
    return cfg


def parse_config_text(text: str, preset: str | None = None, source: str = "<config>") -> RunConfig:
    """Parse INI ``text`` over a preset; ``preset`` (e.g. from argv) wins over ``[run] preset``."""
    parser = configparser.ConfigParser(interpolation=None, empty_lines_in_values=False,
                                       inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"parse error: {' '.join(str(exc).split())}") from None

    errors = []
    raw = {}
    for sec in parser.sections():
        if sec not in SCHEMA:
            errors.append(f"unknown section [{sec}]")
            continue
        for key, text_val in parser.items(sec):
            if key not in SCHEMA[sec]:
                errors.append(f"unknown key {sec}.{key}")
                continue
            try:
                raw[sec, key] = SCHEMA[sec][key](text_val)
            except ValueError as exc:
                errors.append(f"{sec}.{key}: {exc}")
    if errors:
        raise ConfigError(errors)

    name = preset or raw.pop(("run", "preset"), None) or DEFAULT_PRESET
    raw.pop(("run", "preset"), None)
    cfg = preset_config(name)
    cfg.seed = raw.pop(("run", "seed"), None)
    cfg.samples = raw.pop(("run", "samples"), None)
    if cfg.samples is not None and cfg.samples < 1:
        raise ConfigError("run.samples must be positive")
    for k, v in raw.items():
        cfg.values[k] = v
        cfg.provenance[k] = f"override in {source}"
    cfg.check()
    return cfg


def load_config(path: str | Path | None, preset: str | None = None) -> RunConfig:
    """Load and validate a config file; ``path=None`` gives the bare preset."""
    if path is None:
        return parse_config_text("", preset)
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror}") from None
    return parse_config_text(text, preset, source=str(p))
