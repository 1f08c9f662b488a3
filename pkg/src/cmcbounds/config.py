"""TOML configuration: a ``[params]`` table and an optional ``[structure]`` table.

Example::

    [params]
    I = 2
    A1 = 1.0

    [structure]
    delta = 0.5

    [[structure.regions]]
    e = 2
    m = 2
    index = 1
    genus = 0
    orientable = true
    r_F = 0.2
    kappa = 12.566370614359172
"""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .estimates import GeometryParams
from .structure import StructureData, StructureError

ENV_VAR = "CMCBOUNDS_CONFIG"
PARAM_KEYS = ("I", "r0", "K0", "H0", "Cs", "A1", "c")


class ConfigError(ValueError):
    """Malformed configuration; the message names the offending key."""


def default_config_path() -> Optional[Path]:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def load_config(path) -> dict:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    unknown = set(doc) - {"params", "structure"}
    if unknown:
        raise ConfigError(f"{path}: unknown table(s) {', '.join(sorted(unknown))}")
    return doc


def params_from_dict(d: dict, overrides: Optional[dict] = None) -> GeometryParams:
    merged = dict(d or {})
    for key in merged:
        if key not in PARAM_KEYS:
            raise ConfigError(f"unknown parameter key {key!r}")
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    for key, value in merged.items():
        ok = isinstance(value, int) if key == "I" else isinstance(value, (int, float))
        if isinstance(value, bool) or not ok:
            raise ConfigError(f"parameter {key!r} has invalid value {value!r}")
    try:
        return GeometryParams(**merged)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def structure_from_dict(d: dict) -> StructureData:
    try:
        return StructureData.from_dict(d)
    except StructureError:
        raise
    except (TypeError, ValueError) as exc:
        raise StructureError(str(exc)) from None
