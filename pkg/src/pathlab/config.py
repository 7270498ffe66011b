"""Run configuration: tolerances, scan cutoffs, and grid sizes.

A config file is plain ``key=value`` text, one pair per line; ``#`` starts a
comment.  Unknown keys are rejected so that a config digest always identifies
a well-formed configuration.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace

from .errors import PathlabError


class ConfigError(PathlabError, ValueError):
    pass


@dataclass(frozen=True)
class LabConfig:
    # tolerances
    quad_tol: float = 1e-9        # adaptive integrator target
    osc_tol: float = 1e-7         # oscillatory improper integrals (period-summed)
    residual_tol: float = 1e-8    # reparametrization trace residual
    fd_step_scale: float = 1.0    # multiplier on the default finite-difference step
    # scan cutoffs
    min_abs_x: float = 1e-6       # sin(1/x)-family scans stay outside (-min_abs_x, min_abs_x)
    # grid sizes
    scan_grid: int = 1_000_000    # derivative sign/threshold scans
    probe_grid: int = 512         # curve self-coincidence probe
    reparam_points: int = 201     # rows in a reparametrization table
    direction_count: int = 360    # directions in a line-restriction sweep
    sample_points: int = 1001     # default CLI sampling resolution

    def replace(self, **kw) -> "LabConfig":
        return replace(self, **kw)

    def digest(self) -> str:
        """SHA-256 over the sorted canonical key=value lines."""
        lines = sorted(f"{f.name}={getattr(self, f.name)!r}" for f in fields(self))
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()


_FIELD_TYPES = {f.name: f.type for f in fields(LabConfig)}


def parse_config_text(text: str, base: LabConfig | None = None) -> LabConfig:
    cfg = base or LabConfig()
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        kind = _FIELD_TYPES[key]
        try:
            updates[key] = int(value) if kind == "int" else float(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return cfg.replace(**updates)


def load_config(path: str, base: LabConfig | None = None) -> LabConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), base=base)
