"""Run-time caps and execution settings.

A default config can be loaded from the JSON file named by the
``SHIFTDIGITS_CONFIG`` environment variable.
"""

from __future__ import annotations

import json
import os
from contextlib import contextmanager
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

__all__ = ["Config", "ConfigurationError", "get_config", "set_config", "override", "load_config", "CONFIG_ENV"]

CONFIG_ENV = "SHIFTDIGITS_CONFIG"

MODES = ("symbolic", "sampled")


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    M_cap: int = 64          # largest cyclotomic order
    scan_M_cap: int = 20     # largest M in a periodicity scan
    p_cap: int = 3
    r_cap: int = 3
    identity_M_cap: int = 10
    worker_count: int = 1
    output_path: str | None = None
    mode: str = "symbolic"
    # sampled mode is used automatically once a symbolic expansion would exceed this many terms
    symbolic_term_cap: int = 2_000_000

    def __post_init__(self):
        if self.M_cap < 2 or self.scan_M_cap < 2 or self.identity_M_cap < 2:
            raise ConfigurationError("M caps must be >= 2")
        if self.p_cap < 0:
            raise ConfigurationError("p_cap must be >= 0")
        if self.r_cap < 1:
            raise ConfigurationError("r_cap must be >= 1")
        if self.worker_count < 1:
            raise ConfigurationError("worker_count must be >= 1")
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}, got {self.mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Read a Config from JSON; unknown keys are a configuration error."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
        if not path:
            return Config()
    data = json.loads(Path(path).read_text())
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)


_current: Config | None = None


def get_config() -> Config:
    global _current
    if _current is None:
        _current = load_config()
    return _current


def set_config(cfg: Config) -> None:
    global _current
    _current = cfg


@contextmanager
def override(**changes):
    """Temporarily replace config fields."""
    old = get_config()
    set_config(replace(old, **changes))
    try:
        yield get_config()
    finally:
        set_config(old)
