"""Run configuration: flat ``key = value`` files plus ``--set`` overrides.

Example::

    # the reference running example
    m = 1
    M = 1
    lambda = 1
    k = 0.5
    beta = 0.5
    omega = 20
    n = 0..3
    ell = 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .model import PotentialParams, SystemParams

AXES = ("omega", "beta", "n", "ell")
FORMATS = ("csv", "json-lines", "text")

ALIASES = {
    "mass": "m",
    "quadrupole": "M",
    "lambda": "lam",
    "C1": "c1",
    "C2": "c2",
    "C3": "c3",
    "l": "ell",
    "sweep_axis": "axis",
}


@dataclass(frozen=True)
class RunConfig:
    m: float = 1.0
    M: float = 1.0
    lam: float = 1.0
    omega: float = 20.0
    k: float = 0.5
    beta: float = 0.5
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    n: tuple[int, ...] = (0, 1, 2, 3)
    ell: tuple[int, ...] = (1,)
    axis: str | None = None
    start: float | None = None
    stop: float | None = None
    steps: int | None = None
    output: str | None = None
    format: str | None = None
    measure: str = "rho"
    tolerance: float | None = None
    oracle: bool = False
    rho_max: float | None = None
    grid_points: int = 4000
    points: int = 2001
    branch: str = "plus"

    def system(self) -> SystemParams:
        try:
            return SystemParams(self.m, self.M, self.lam, self.omega, self.k, self.beta)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def potential(self) -> PotentialParams:
        try:
            return PotentialParams(self.c1, self.c2, self.c3)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def validate(self) -> "RunConfig":
        self.system()
        self.potential()
        if self.measure not in ("rho", "flat"):
            raise ConfigError(f"measure must be 'rho' or 'flat', got {self.measure!r}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.branch not in ("plus", "minus"):
            raise ConfigError(f"branch must be 'plus' or 'minus', got {self.branch!r}")
        if self.axis is not None and self.axis not in AXES:
            raise ConfigError(f"sweep axis must be one of {AXES}, got {self.axis!r}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.points < 2:
            raise ConfigError("points must be >= 2")
        return self

    def sweep_values(self) -> np.ndarray:
        if self.axis is None:
            raise ConfigError("sweep requires 'axis' (omega | beta | n | ell)")
        missing = [k for k in ("start", "stop", "steps") if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"sweep requires {', '.join(missing)}")
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        values = np.linspace(self.start, self.stop, self.steps)
        if self.axis in ("n", "ell"):
            rounded = np.rint(values)
            if not np.allclose(values, rounded, rtol=0, atol=1e-9):
                raise ConfigError(f"{self.axis} sweep must land on integers")
            values = rounded.astype(int)
            if self.axis == "n" and values.min() < 0:
                raise ConfigError("n sweep must stay >= 0")
        return values


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_int_list(text: str) -> tuple[int, ...]:
    out: list[int] = []
    text = text.strip()
    if not text:
        return ()
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {text!r}")
    return value


def parse_value(key: str, text: str):
    key = ALIASES.get(key, key)
    if key not in _FIELD_TYPES:
        raise KeyError(key)
    text = text.strip()
    if key in ("n", "ell"):
        return key, _parse_int_list(text)
    if key in ("steps", "grid_points", "points"):
        return key, int(text)
    if key == "oracle":
        return key, _parse_bool(text)
    if key in ("axis", "output", "format", "measure", "branch"):
        return key, text
    if key in ("rho_max", "tolerance", "start", "stop") and text.lower() in ("", "none"):
        return key, None
    return key, _parse_float(text)


def _apply(cfg: RunConfig, key: str, text: str, line: int | None, source: str) -> RunConfig:
    try:
        name, value = parse_value(key.strip(), text)
    except KeyError:
        raise ConfigError(f"unknown key {key.strip()!r}", line, source) from None
    except ValueError as exc:
        raise ConfigError(f"bad value for {key.strip()!r}: {exc}", line, source) from None
    return replace(cfg, **{name: value})


def parse_config_text(text: str, source: str = "<config>", base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno, source)
        key, value = line.split("=", 1)
        cfg = _apply(cfg, key, value, lineno, source)
    return cfg


def load_config(path: str | Path | None, overrides: list[str] = (), base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        cfg = parse_config_text(text, str(path), cfg)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}", source="--set")
        key, value = item.split("=", 1)
        cfg = _apply(cfg, key, value, None, "--set")
    return cfg.validate()
