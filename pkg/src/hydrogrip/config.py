"""JSON configuration with unit-suffixed keys.

Every physical quantity is written as ``<name>_<unit>``, e.g. ``l0_mm``,
``mu_sf_mpa``, ``v0_cm3``, ``theta0_deg``, and converted to SI once here.
Dimensionless fields (``n``, ``ns``, ``mu_f``, ``seed``) carry no suffix.
Unknown keys are rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .control import ControllerConfig, PlantConfig
from .errors import DomainError
from .kinematics import Finger, WeightVector
from .model import GripperParams

UNITS = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3},
    "volume": {"m3": 1.0, "cm3": 1e-6, "mm3": 1e-9},
    "pressure": {"pa": 1.0, "kpa": 1e3, "mpa": 1e6},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0},
    "time": {"s": 1.0, "ms": 1e-3},
    "accel": {"m_s2": 1.0},
    "gain_p": {"pa_per_rad": 1.0, "mpa_per_rad": 1e6},
    "gain_i": {"pa_per_rad_s": 1.0, "mpa_per_rad_s": 1e6},
}

# section -> {canonical field -> dimension}; None means a plain number
GRIPPER_FIELDS = {
    "theta0": "angle", "l0": "length", "a": "length", "b": "length", "d": "length",
    "R": "length", "t": "length", "V0": "volume", "n": None, "ns": None,
    "mu_sf": "pressure", "mu_sr": "pressure", "mu_f": None, "g": "accel",
}
CONTROLLER_FIELDS = {
    "theta_ref": "angle", "Kp": "gain_p", "Ki": "gain_i", "integral_limit": "pressure",
}
PLANT_FIELDS = {
    "tau_p": "time", "dt": "time", "noise_sigma": "angle", "p_init": "pressure", "seed": None,
}
SI_SUFFIX = {dim: next(k for k, v in units.items() if v == 1.0) for dim, units in UNITS.items()}


class ConfigError(ValueError):
    """Malformed or invalid configuration; ``field`` names the culprit."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class Config:
    gripper: GripperParams = field(default_factory=GripperParams)
    weights: WeightVector = field(default_factory=WeightVector.fem)
    weight_mode: object = "fem"
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    plant: PlantConfig = field(default_factory=PlantConfig)

    def finger(self, mode=None) -> Finger:
        if mode is None:
            return Finger.from_params(self.gripper, self.weights)
        return Finger.from_params(self.gripper, mode)


def _match_key(key, fields, section):
    """Split ``key`` into (canonical field, SI factor)."""
    lowered = {name.lower(): name for name in fields}
    if key.lower() in lowered:
        name = lowered[key.lower()]
        if fields[name] is None:
            return name, None
    for name_l, name in lowered.items():
        dim = fields[name]
        if dim is None or not key.lower().startswith(name_l + "_"):
            continue
        suffix = key.lower()[len(name_l) + 1:]
        if suffix in UNITS[dim]:
            return name, UNITS[dim][suffix]
    raise ConfigError(f"unknown key {section}.{key}", field=key)


def _read_section(block, fields, section):
    if not isinstance(block, dict):
        raise ConfigError(f"section {section!r} must be an object", field=section)
    values = {}
    for key, raw in block.items():
        name, factor = _match_key(key, fields, section)
        if name in values:
            raise ConfigError(f"{section}.{name} given more than once", field=key)
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number", field=key)
        values[name] = raw if factor is None else raw * factor
    return values


def _schedule(entries, value_key, section):
    if not isinstance(entries, list):
        raise ConfigError(f"{section} must be a list", field=section)
    out = []
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"t_s", value_key}:
            raise ConfigError(
                f"{section} entries must be objects with keys t_s and {value_key}", field=section
            )
        out.append((float(entry["t_s"]), float(entry[value_key])))
    return tuple(out)


def _weights(block, ns):
    unknown = set(block) - {"weight_mode"}
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"unknown key kinematics.{key}", field=key)
    mode = block.get("weight_mode", "fem")
    try:
        if mode == "uniform":
            w = WeightVector.uniform(ns)
        elif mode == "fem":
            w = WeightVector.fem()
        elif isinstance(mode, list):
            w = WeightVector(tuple(mode))
            mode = list(w.w)
        else:
            raise ConfigError(f"weight_mode must be 'uniform', 'fem' or a list, got {mode!r}", field="w")
    except (DomainError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid weight vector w: {exc}", field="w") from exc
    if len(w) != ns:
        raise ConfigError(f"weight vector w has {len(w)} entries but ns={ns}", field="w")
    return w, mode


def config_from_dict(data) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(data) - {"gripper", "kinematics", "controller", "plant"}
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"unknown top-level key {key!r}", field=key)

    def build(cls, values, section):
        try:
            return cls(**values)
        except DomainError as exc:
            raise ConfigError(f"invalid {section}: {exc}", field=section) from exc

    gripper = build(GripperParams, _read_section(data.get("gripper", {}), GRIPPER_FIELDS, "gripper"), "gripper")
    weights, mode = _weights(data.get("kinematics", {}), gripper.ns)
    controller = build(
        ControllerConfig, _read_section(data.get("controller", {}), CONTROLLER_FIELDS, "controller"), "controller"
    )
    plant_block = dict(data.get("plant", {}))
    schedules = {}
    if "mass_schedule" in plant_block:
        schedules["mass_schedule"] = _schedule(plant_block.pop("mass_schedule"), "mass_kg", "mass_schedule")
    if "force_schedule" in plant_block:
        schedules["force_schedule"] = _schedule(plant_block.pop("force_schedule"), "fx_n", "force_schedule")
    plant_values = _read_section(plant_block, PLANT_FIELDS, "plant")
    if "seed" in plant_values:
        plant_values["seed"] = int(plant_values["seed"])
    plant = build(PlantConfig, {**plant_values, **schedules}, "plant")
    return Config(gripper, weights, mode, controller, plant)


def parse_config(path) -> Config:
    """Read, convert to SI and validate a configuration file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_config_text(text)


def parse_config_text(text) -> Config:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(data)


def default_config_text() -> str:
    return resources.files("hydrogrip").joinpath("data/default_config.json").read_text(encoding="utf-8")


def default_config() -> Config:
    return parse_config_text(default_config_text())


def _si_section(obj, fields):
    out = {}
    for name, dim in fields.items():
        value = getattr(obj, name)
        out[name if dim is None else f"{name}_{SI_SUFFIX[dim]}"] = value
    return out


def config_to_dict(cfg: Config) -> dict:
    """Serialise to SI-suffixed keys; ``config_from_dict`` inverts this."""
    plant = _si_section(cfg.plant, PLANT_FIELDS)
    plant["mass_schedule"] = [{"t_s": t, "mass_kg": v} for t, v in cfg.plant.mass_schedule]
    plant["force_schedule"] = [{"t_s": t, "fx_n": v} for t, v in cfg.plant.force_schedule]
    return {
        "gripper": _si_section(cfg.gripper, GRIPPER_FIELDS),
        "kinematics": {"weight_mode": cfg.weight_mode if isinstance(cfg.weight_mode, str) else list(cfg.weights.w)},
        "controller": _si_section(cfg.controller, CONTROLLER_FIELDS),
        "plant": plant,
    }
