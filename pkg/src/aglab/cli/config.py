"""INI-style run configuration with flat key = value sections."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

from ..field_lab.grid import MIN_NODES
from ..identity_verifier.identities import DEFAULT_GRIDS

DEFAULT_TEXT = """\
[run]
seed = 0
jobs = 1

[verify]
grids = 64,128,256
identities =

[grid]
nx = 128
ny = 128
h = 0.015748031496062992
"""


class ConfigError(ValueError):
    """Raised for unreadable or invalid configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    jobs: int = 1
    grids: tuple[int, ...] = DEFAULT_GRIDS
    identities: tuple[str, ...] = ()
    nx: int = 128
    ny: int = 128
    h: float = 2.0 / 127
    extra: dict = field(default_factory=dict, compare=False)

    def validate(self) -> "RunConfig":
        if any(n < MIN_NODES for n in self.grids):
            raise ConfigError(f"every verify grid needs at least {MIN_NODES} nodes, got {list(self.grids)}")
        if len(self.grids) < 2:
            raise ConfigError("verify needs at least two grids")
        if self.nx < MIN_NODES or self.ny < MIN_NODES:
            raise ConfigError(f"grid needs at least {MIN_NODES} nodes per axis, got {self.nx}x{self.ny}")
        if not self.h > 0:
            raise ConfigError(f"grid spacing must be positive, got {self.h}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        return self


def _ints(text: str, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated integers, got {text!r}") from None


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    cfg = RunConfig()
    try:
        if cp.has_section("run"):
            s = cp["run"]
            cfg = replace(cfg, seed=s.getint("seed", cfg.seed), jobs=s.getint("jobs", cfg.jobs))
        if cp.has_section("verify"):
            s = cp["verify"]
            grids = _ints(s.get("grids", ""), "verify.grids") or cfg.grids
            ids = tuple(t.strip() for t in s.get("identities", "").split(",") if t.strip())
            cfg = replace(cfg, grids=grids, identities=ids)
        if cp.has_section("grid"):
            s = cp["grid"]
            cfg = replace(cfg, nx=s.getint("nx", cfg.nx), ny=s.getint("ny", cfg.ny), h=s.getfloat("h", cfg.h))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate()


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return parse_config(DEFAULT_TEXT)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    return parse_config(text)


def parse_grid_flag(text: str) -> tuple[int, int, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--grid expects nx,ny,h, got {text!r}")
    try:
        return int(parts[0]), int(parts[1]), float(parts[2])
    except ValueError:
        raise ConfigError(f"--grid expects nx,ny,h, got {text!r}") from None
