"""Pipeline configuration: validation, JSON round trip, hashing and seed splitting."""



from __future__ import annotations

import hashlib
import json

from dataclasses import asdict, dataclass, field, fields

import numpy as np

from ..circle_dynamics import REPRESENTATION_KINDS
from ..constants import setting
from ..hyperbolic_core.polygon import BUILDERS
from ..utils.errors import ConfigError



STAGES = {
    "group": 0,
    "rep": 1,
    "mesh": 2,
    "harmonic": 3,
    "montecarlo": 4,
    "connection": 5,
    "gauss_bonnet": 6,
    "rigidity": 7,
}
"""Stage indices used as spawn keys of the root seed."""

FIELD_SOURCES = ("solve", "exact")


def _default_levels() -> list[float]:
    return list(setting("gauss_bonnet", "levels", []))


@dataclass
class PipelineConfig:
    """
    Attributes:
    -----------
        family : str
            Surface group family.
        representation : str
            Representation kind.
        rotation_angle : float
            Angle of every generator for `rotation`.
        breakpoints : int
            Breakpoints of random PL lifts (`pl-custom`, and the conjugator of `conjugated-fuchsian`).
        field_source : str
            `solve` runs the harmonic solver; `exact` uses the closed-form field (Fuchsian kinds only).
        resolution, bins, tol, max_sweeps :
            Mesh and solver settings.
        cusp_area : float
            Area left beyond the cusp cutoff, per cusp.
        levels : list[float]
            Horocircle heights.
        seed : int
            Root seed.
        out_dir : str
            Directory for the artifacts; not part of the hash.
    """
    family: str = "punctured-torus"
    representation: str = "fuchsian-boundary"
    rotation_angle: float = 0.0
    breakpoints: int = field(default_factory=lambda: setting("pipeline", "random_breakpoints", 4))
    field_source: str = "solve"
    resolution: int = field(default_factory=lambda: setting("mesh", "resolution", 64))
    bins: int = field(default_factory=lambda: setting("solver", "bins", 256))
    tol: float = field(default_factory=lambda: setting("solver", "tol", 1e-6))
    max_sweeps: int = field(default_factory=lambda: setting("solver", "max_sweeps", 20000))
    cusp_area: float = field(default_factory=lambda: setting("mesh", "cusp_area", 0.5))
    levels: list[float] = field(default_factory=_default_levels)
    seed: int = field(default_factory=lambda: setting("pipeline", "seed", 0))
    out_dir: str = "out"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.family not in BUILDERS or self.family == "custom":
            raise ConfigError(f"unknown group family {self.family!r}")
        if self.representation not in REPRESENTATION_KINDS:
            raise ConfigError(f"unknown representation kind {self.representation!r}")
        if self.field_source not in FIELD_SOURCES:
            raise ConfigError(f"field_source must be one of {FIELD_SOURCES}")
        if self.field_source == "exact" and self.representation not in ("fuchsian-boundary", "conjugated-fuchsian"):
            raise ConfigError("exact fields exist only for Fuchsian kinds")
        if self.resolution < 8:
            raise ConfigError(f"resolution must be at least 8, got {self.resolution}")
        if self.bins < 64 or self.bins & (self.bins - 1):
            raise ConfigError(f"bins must be a power of two >= 64, got {self.bins}")
        if self.tol <= 0 or self.cusp_area <= 0:
            raise ConfigError("tolerances and the cusp area must be positive")
        if self.max_sweeps <= 0 or self.breakpoints <= 0:
            raise ConfigError("max_sweeps and breakpoints must be positive")
        if any(level <= 0 for level in self.levels):
            raise ConfigError("horocircle levels must be positive")
        if any(lower >= upper for lower, upper in zip(self.levels, self.levels[1:])):
            raise ConfigError("horocircle levels must be strictly increasing")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, payload: dict) -> PipelineConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(payload) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**payload)

    @classmethod
    def read(cls, path: str) -> PipelineConfig:
        try:
            with open(path, "r", encoding="utf-8") as file:
                payload = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError(f"cannot read config {path}: {error}") from error
        return cls.from_json(payload)

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON, without the output directory."""
        payload = self.to_json()
        payload.pop("out_dir")
        raw = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
        return hashlib.sha256(raw).hexdigest()

    def stage_rng(self, stage: str) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(STAGES[stage],)))
