"""Run configuration: defaults, ``key = value`` files and flag overrides."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, fields, replace
from pathlib import Path

from landau_osc.core import FieldParams, InvalidParameterError

DEFAULT_THETAS = (0.3, math.pi / 4, 1.0, math.pi / 2, 2.5)

DEFAULT_TOLERANCES = {
    "classical_equiv": 1e-7,
    "energy_drift": 1e-9,
    "larmor_closure": 1e-8,
    "symplectic": 1e-9,
    "kamiltonian": 1e-7,
    "frame_norm": 1e-14,
    "rotation_series": 1e-10,
    "rotation_orthogonality": 1e-12,
    "generating_function": 1e-10,
    "orthonormality": 1e-10,
    "eigen_equation": 1e-5,
    "series_extraction": 1e-9,
    "unitarity": 1e-9,
    "leakage": 1e-9,
    "composition": 1e-8,
    "identity": 1e-12,
    "closed_form_audit": 1e-6,
    "map_norm": 1e-10,
    "consistency": 1e-3,
    "consistency_ground": 1e-6,
    "grid_convergence_ratio": 4.0,
    "stationarity": 1e-5,
    "intertwining": 1e-8,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    charge: float = 1.0
    field: float = 2.0
    mass: float = 1.0
    light_speed: float = 1.0
    hbar: float = 1.0
    # quantum grid; length in oscillator lengths, dt in units of 1/omega_osc
    grid_n: int = 256
    grid_length: float = 24.0
    dt: float = 1e-3
    # classical; dt in units of 1/|omega|
    classical_dt: float = 1e-3
    periods: float = 10.0
    max_quanta: int = 10
    quad_order: int = 0
    thetas: tuple = DEFAULT_THETAS
    seed: int = 42
    out: str = "out"
    format: str = "json"
    tolerances: dict = dc_field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.grid_n < 16 or self.grid_n & (self.grid_n - 1):
            raise ConfigError(f"grid_n must be a power of two >= 16, got {self.grid_n}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        for name in ("grid_length", "dt", "classical_dt", "periods"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.max_quanta < 0 or self.quad_order < 0:
            raise ConfigError("max_quanta and quad_order must be nonnegative")
        for k, v in self.tolerances.items():
            if not v > 0:
                raise ConfigError(f"tolerance {k} must be positive")
        try:
            self.field_params()
        except InvalidParameterError as exc:
            raise ConfigError(str(exc)) from exc

    def field_params(self) -> FieldParams:
        return FieldParams(self.charge, self.mass, self.field, self.light_speed, self.hbar)

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def as_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["thetas"] = list(self.thetas)
        d["tolerances"] = dict(self.tolerances)
        return d


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind == "int":
            return int(value)
        if kind == "float":
            return float(value)
        if kind == "tuple":
            return tuple(float(v) for v in value.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return value


def parse_overrides(pairs: dict, base: RunConfig | None = None) -> RunConfig:
    """Apply string ``key -> value`` overrides; ``tol.<name>`` sets a tolerance."""
    base = base or RunConfig()
    updates = {}
    tols = dict(base.tolerances)
    for key, value in pairs.items():
        key = key.strip().replace("-", "_")
        if key.startswith("tol."):
            name = key[4:]
            if name not in tols:
                raise ConfigError(f"unknown tolerance {name!r}")
            try:
                tols[name] = float(value)
            except ValueError as exc:
                raise ConfigError(f"bad tolerance {value!r}") from exc
        elif key in _FIELD_TYPES and key != "tolerances":
            updates[key] = _coerce(key, str(value).strip())
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return replace(base, tolerances=tols, **updates)


def load_config_file(path) -> dict:
    pairs = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        k, v = line.split("=", 1)
        pairs[k.strip()] = v.strip()
    return pairs
