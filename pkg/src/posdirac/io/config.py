"""Run configuration: defaults, key=value files and command-line overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

__all__ = ["RunConfig", "ConfigError", "FILE_KEYS", "read_config_file", "merge"]

COMMANDS = ("pauli-table", "dirac-solve", "anomalous", "coupling-profile", "bs-project",
            "verify-addition", "list")


class ConfigError(ValueError):
    """Invalid configuration key or value."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command.

    Unset basis fields fall back to the command's preset: rho0 = 1e-4 and
    a 40-point DVR grid for anomalous runs, rho0 = 60 Bohr for atomic ones.
    """

    command: str
    alpha: float | None = None
    J: int = 0
    rho0: float | None = None
    M: int | None = None
    case: int = 1
    n: int = 1
    grid_profile: str = "paper_default"
    quadrature: str | None = None
    rep: str = "momentum"
    kind: str = "feynman"
    table: int = 1
    count: int = 5
    j_max: float = 12.5
    seed: int = 20240917
    output: Path | None = None
    format: str = "csv"

    def snapshot(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            out[f.name] = str(v) if isinstance(v, Path) else v
        return out


# config-file key -> (RunConfig field, converter)
FILE_KEYS = {
    "alpha": ("alpha", float),
    "basis.J": ("J", int),
    "basis.rho0": ("rho0", float),
    "basis.M": ("M", int),
    "case": ("case", int),
    "n": ("n", int),
    "grid.profile": ("grid_profile", str),
    "quadrature": ("quadrature", str),
    "rep": ("rep", str),
    "kind": ("kind", str),
    "table": ("table", int),
    "count": ("count", int),
    "j_max": ("j_max", float),
    "seed": ("seed", int),
    "output": ("output", Path),
    "format": ("format", str),
}

_CHOICES = {
    "format": ("csv", "json"),
    "grid_profile": ("paper_default", "anomalous_region1"),
    "rep": ("momentum", "fem", "dvr"),
    "kind": ("feynman", "retarded"),
    "table": (1, 2),
    "case": (1, 2, 3),
    "quadrature": (None, "exact", "dvr", "gauss", "nodal"),
}


def read_config_file(path) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in FILE_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}; valid keys: "
                              + ", ".join(sorted(FILE_KEYS)))
        name, conv = FILE_KEYS[key]
        try:
            out[name] = conv(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return out


def merge(command: str, file_values: dict, flag_values: dict) -> RunConfig:
    """Defaults, then file values, then flags that were actually given."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; expected one of {COMMANDS}")
    values = dict(file_values)
    values.update({k: v for k, v in flag_values.items() if v is not None})
    names = {f.name for f in dataclasses.fields(RunConfig)}
    extra = set(values) - names
    if extra:
        raise ConfigError(f"unknown settings {sorted(extra)}")
    cfg = RunConfig(command=command, **values)
    for name, allowed in _CHOICES.items():
        if getattr(cfg, name) not in allowed:
            raise ConfigError(f"{name}={getattr(cfg, name)!r} not in {allowed}")
    if cfg.alpha is not None and not 0 < cfg.alpha < 1:
        raise ConfigError(f"alpha must lie in (0, 1), got {cfg.alpha}")
    if cfg.M is not None and cfg.M < 2:
        raise ConfigError(f"M must be >= 2, got {cfg.M}")
    return cfg
