"""JSON run configuration.

A config is parsed and checked in full before anything uses it: curve
overrides must be valid records, reflection overrides valid signed
involutions, and the resulting presets must all be involutions with D = +1.
Any problem raises ConfigError and nothing is applied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .homlat import GenusContext, InvalidInputError, InvariantError
from .mcggen import CrosscapInvolution, CurveRecord, make_record
from .orbit import DEFAULT_DEPTH_CAP
from .presets import PresetSet, ReflectionOverride, SearchFailedError
from .verify import build_presets, check_preset

__all__ = ["SCHEMA", "ConfigError", "Config", "load_config", "parse_config", "validate"]

SCHEMA = 1
REFLECTION_NAMES = {"six": ("sigma", "tau", "upsilon"), "eight": ("sigma", "tau", "eta", "theta")}
_KEYS = {"schema", "genus", "preset", "curves", "reflections", "depth_cap"}


class ConfigError(InvalidInputError):
    pass


@dataclass
class Config:
    genus: int | None = None
    preset: str | None = None
    curves: dict[str, CurveRecord] = field(default_factory=dict)
    reflections: dict[str, ReflectionOverride] = field(default_factory=dict)
    depth_cap: int = DEFAULT_DEPTH_CAP
    # filled by validate(): the built presets, so callers never rebuild
    presets: PresetSet | None = None


def _int(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value: Any, what: str, length: int) -> list[int]:
    if not isinstance(value, list) or len(value) != length:
        raise ConfigError(f"{what} must be a list of {length} integers")
    return [_int(v, what) for v in value]


def parse_config(data: Any, genus: int | None = None, preset: str | None = None) -> Config:
    """Validate a decoded config; ``genus``/``preset`` come from the command line.

    A command-line value that disagrees with the file is an error.
    """
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if data.get("schema") != SCHEMA:
        raise ConfigError(f"config schema must be {SCHEMA}, got {data.get('schema')!r}")

    cfg = Config()
    for key, flag in (("genus", genus), ("preset", preset)):
        value = data.get(key)
        if value is not None and flag is not None and value != flag:
            raise ConfigError(f"{key} {flag!r} on the command line disagrees with {value!r} in the config")
        setattr(cfg, key, flag if flag is not None else value)
    if cfg.genus is None:
        raise ConfigError("no genus given")
    g = _int(cfg.genus, "genus")
    if cfg.preset is None:
        cfg.preset = "six"
    if cfg.preset not in REFLECTION_NAMES:
        raise ConfigError(f"preset must be six or eight, got {cfg.preset!r}")
    cfg.depth_cap = _int(data.get("depth_cap", DEFAULT_DEPTH_CAP), "depth_cap")
    if cfg.depth_cap < 0:
        raise ConfigError("depth_cap must be non-negative")

    try:
        ctx = GenusContext(g)
        curve_names = {f"a{i}" for i in range(1, g)} | {"b", "e"}
        for item in data.get("curves", []) or []:
            if not isinstance(item, dict) or set(item) != {"name", "class", "covector"}:
                raise ConfigError("each curve needs exactly name, class, covector")
            name = item["name"]
            if name not in curve_names:
                raise ConfigError(f"unknown curve {name!r}")
            if name in cfg.curves:
                raise ConfigError(f"curve {name!r} given twice")
            cls = _int_list(item["class"], f"curve {name} class", g)
            cov = _int_list(item["covector"], f"curve {name} covector", g)
            cfg.curves[name] = make_record(name, cls, cov, ctx)

        allowed = REFLECTION_NAMES[cfg.preset]
        for item in data.get("reflections", []) or []:
            if not isinstance(item, dict) or not {"name", "perm"} <= set(item) <= {"name", "perm", "sign", "y_correction"}:
                raise ConfigError("each reflection needs name and perm, optionally sign and y_correction")
            name = item["name"]
            if name not in allowed:
                raise ConfigError(f"reflection {name!r} is not part of the {cfg.preset} set")
            if name in cfg.reflections:
                raise ConfigError(f"reflection {name!r} given twice")
            perm = _int_list(item["perm"], f"reflection {name} perm", g)
            cinv = CrosscapInvolution(tuple(perm), _int(item.get("sign", 1), f"reflection {name} sign"))
            j = item.get("y_correction")
            if j is not None:
                j = _int(j, f"reflection {name} y_correction")
                if not 0 <= j <= g - 1:
                    raise ConfigError(f"reflection {name} y_correction {j} outside 0..{g - 1}")
            cfg.reflections[name] = ReflectionOverride(name, cinv, j)
    except (InvalidInputError, InvariantError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return cfg


def validate(cfg: Config) -> Config:
    """Build the presets and insist every one is an involution with D = +1."""
    ctx = GenusContext(cfg.genus)
    try:
        pset = build_presets(
            ctx, cfg.preset, depth_cap=cfg.depth_cap,
            curve_overrides=cfg.curves or None, overrides=cfg.reflections or None,
        )
    except SearchFailedError as exc:
        raise ConfigError(f"config rejected: {exc}") from exc
    except (InvalidInputError, InvariantError) as exc:
        raise ConfigError(str(exc)) from exc
    bad = [c for c in (check_preset(pset, n) for n in pset.names()) if not c.passed]
    if bad:
        desc = ", ".join(f"{c.name} (involution={c.involution}, D={c.d_value})" for c in bad)
        raise ConfigError(f"config rejected, presets break their invariants: {desc}")
    cfg.presets = pset
    return cfg


def load_config(path: str | Path, genus: int | None = None, preset: str | None = None) -> Config:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return validate(parse_config(data, genus, preset))
