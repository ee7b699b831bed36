from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from .errors import BadParams

logger = logging.getLogger(__name__)

CAP_ENV_VAR = "TDN_MAX_CELLS"


@dataclass(frozen=True)
class EngineLimits:
    max_dn: int = 12
    max_monomials: int = 2_000_000
    max_families: int = 10_000_000
    series_order: int = 8


DEFAULT_LIMITS = EngineLimits()


SECTIONS = ("limits", "output")


def config_section(cfg: dict, name: str) -> dict:
    raw = cfg.get(name)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise BadParams(f"config section {name!r} must be a mapping, got {type(raw).__name__}")
    return raw


def load_config(path: str | None = "config.yaml") -> dict:
    if not path or not Path(path).exists():
        return {}
    with open(path) as f:
        try:
            cfg = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise BadParams(f"{path} is not valid YAML: {e}") from None
    if cfg is None:
        return {}
    if not isinstance(cfg, dict):
        raise BadParams(f"{path} must hold a mapping at the top level, got {type(cfg).__name__}")
    for name in SECTIONS:
        config_section(cfg, name)
    return cfg


def _int_value(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BadParams(f"limit {name} must be an integer, got {value!r}")
    return value


def limits_from_config(cfg: dict) -> EngineLimits:
    """Build engine limits: defaults < YAML ``limits:`` section < TDN_MAX_CELLS."""
    raw = config_section(cfg, "limits")
    known = {f.name for f in fields(EngineLimits)}
    unknown = set(raw) - known
    if unknown:
        logger.warning(f"[config] Ignoring unknown limits: {sorted(unknown)}")
    values = {k: _int_value(k, v) for k, v in raw.items() if k in known}

    env_cap = os.environ.get(CAP_ENV_VAR, "").strip()
    if env_cap:
        if not env_cap.isdigit():
            raise BadParams(f"{CAP_ENV_VAR} must be a positive integer, got {env_cap!r}")
        cap = int(env_cap)
        values["max_families"] = cap
        values["max_monomials"] = cap
        logger.info(f"[config] {CAP_ENV_VAR}={cap} overrides enumeration caps")

    return EngineLimits(**values)
