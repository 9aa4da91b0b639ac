"""Run configuration and tolerances."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .groups import CATALOG, GROUPS, SCHEDULE_KINDS

OUTPUT_DIR_ENV = "EXCEPTIONAL_EULER_OUT"
SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    volume_rel: float = 1e-8
    macdonald_rel: float = 1e-12
    covering: float = 1e-6
    leibniz: float = 1e-10
    cartan_integer: float = 1e-8
    automorphism: float = 1e-9
    currents: float = 1e-9
    unipotent: float = 1e-12
    metric: float = 1e-8
    einstein_spread: float = 1e-3
    f_identity: float = 1e-12
    sigmas: float = 3.0

    def loosened(self, value: float) -> "Tolerances":
        """Every residual threshold raised to at least ``value``; sigmas untouched."""
        return replace(self, **{f.name: max(getattr(self, f.name), value)
                                for f in fields(self) if f.name != "sigmas"})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class RunConfig:
    group: str = "g2"
    schedule: str = "default"
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_format: str = "json"
    output: Path | None = None

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ConfigError(f"unknown group '{self.group}'")
        if self.schedule not in SCHEDULE_KINDS:
            raise ConfigError(f"unknown schedule '{self.schedule}'")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unknown output format '{self.output_format}'")
        if self.schedule not in valid_schedules(self.group):
            raise ConfigError(f"group {self.group} has no '{self.schedule}' schedule; "
                              f"choose from {', '.join(valid_schedules(self.group))}")


def valid_schedules(group: str) -> tuple:
    kinds = tuple(CATALOG[group].schedules)
    if group == "g2_split":
        kinds += ("iwasawa",)
    return kinds


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))
