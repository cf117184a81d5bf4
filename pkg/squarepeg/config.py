"""
Configuration management for squarepeg
"""

import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .errors import ConfigError

# Load environment variables
load_dotenv()


def _env_float(name: str, default: str) -> float:
    return float(os.getenv(name, default))


def _env_int(name: str, default: str) -> int:
    return int(os.getenv(name, default))


@dataclass
class GeometryConfig:
    """Polygonization and boundary tolerance"""
    curve_samples: int = field(default_factory=lambda: _env_int("SQUAREPEG_CURVE_SAMPLES", "256"))
    tol_factor: float = field(default_factory=lambda: _env_float("SQUAREPEG_TOL_FACTOR", "1e-9"))

    def __post_init__(self):
        if self.curve_samples < 32:
            raise ConfigError("curve_samples must be at least 32")
        if self.tol_factor < 0:
            raise ConfigError("tol_factor must be non-negative")


@dataclass
class ObtusenessConfig:
    """Sector search settings"""
    delta: float = field(default_factory=lambda: _env_float("SQUAREPEG_DELTA", "1e-3"))
    dir_samples: int = field(default_factory=lambda: _env_int("SQUAREPEG_DIR_SAMPLES", "64"))
    boundary_samples: int = field(default_factory=lambda: _env_int("SQUAREPEG_BOUNDARY_SAMPLES", "256"))
    grid: int = field(default_factory=lambda: _env_int("SQUAREPEG_GRID", "64"))
    # None means "same as delta"
    strictness_margin: Optional[float] = None

    def __post_init__(self):
        if self.delta <= 0:
            raise ConfigError("delta must be positive")
        if self.dir_samples < 8:
            raise ConfigError("dir_samples must be at least 8")
        if self.grid < 8:
            raise ConfigError("grid must be at least 8")


@dataclass
class TrivialityConfig:
    """Search grid for trivial squares"""
    boundary_samples: int = field(default_factory=lambda: _env_int("SQUAREPEG_TRIVIAL_BOUNDARY_SAMPLES", "64"))
    interior_grid: int = field(default_factory=lambda: _env_int("SQUAREPEG_TRIVIAL_INTERIOR_GRID", "12"))
    rotations: int = field(default_factory=lambda: _env_int("SQUAREPEG_TRIVIAL_ROTATIONS", "16"))
    side_steps: int = field(default_factory=lambda: _env_int("SQUAREPEG_TRIVIAL_SIDE_STEPS", "16"))
    inward_offset: float = field(default_factory=lambda: _env_float("SQUAREPEG_TRIVIAL_INWARD_OFFSET", "1e-3"))

    def __post_init__(self):
        if min(self.boundary_samples, self.interior_grid, self.rotations, self.side_steps) < 1:
            raise ConfigError("triviality search sizes must be positive")


@dataclass
class TableConfig:
    """Level-square solver settings"""
    start_grid: int = field(default_factory=lambda: _env_int("SQUAREPEG_START_GRID", "5"))
    start_rotations: int = field(default_factory=lambda: _env_int("SQUAREPEG_START_ROTATIONS", "8"))
    max_iters: int = field(default_factory=lambda: _env_int("SQUAREPEG_MAX_ITERS", "2000"))
    level_tol: float = field(default_factory=lambda: _env_float("SQUAREPEG_LEVEL_TOL", "1e-8"))
    penalty: float = field(default_factory=lambda: _env_float("SQUAREPEG_PENALTY", "1e3"))

    def __post_init__(self):
        if self.level_tol <= 0:
            raise ConfigError("level_tol must be positive")
        if self.max_iters < 1 or self.start_grid < 1 or self.start_rotations < 1:
            raise ConfigError("solver budget must be positive")


@dataclass
class InscribeConfig:
    """Square-peg pipeline settings"""
    safety: float = field(default_factory=lambda: _env_float("SQUAREPEG_SAFETY", "0.9"))

    def __post_init__(self):
        if not 0 < self.safety <= 1:
            raise ConfigError("safety must lie in (0, 1]")


@dataclass
class OracleConfig:
    """Brute-force inscribed square oracle settings"""
    n_boundary: int = field(default_factory=lambda: _env_int("SQUAREPEG_ORACLE_SAMPLES", "360"))
    # None derives eps from the boundary sample spacing
    eps: Optional[float] = None

    def __post_init__(self):
        if self.n_boundary < 32:
            raise ConfigError("n_boundary must be at least 32")
        if self.eps is not None and self.eps <= 0:
            raise ConfigError("eps must be positive")


@dataclass
class LoggingConfig:
    """Logging configuration"""
    level: str = field(default_factory=lambda: os.getenv("SQUAREPEG_LOG_LEVEL", "WARNING"))


@dataclass
class Config:
    """Main configuration class"""
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    obtuseness: ObtusenessConfig = field(default_factory=ObtusenessConfig)
    triviality: TrivialityConfig = field(default_factory=TrivialityConfig)
    table: TableConfig = field(default_factory=TableConfig)
    inscribe: InscribeConfig = field(default_factory=InscribeConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_env(cls) -> 'Config':
        """Create configuration from environment variables"""
        return cls()

    @classmethod
    def from_yaml(cls, config_path: str) -> 'Config':
        """Overlay a YAML file on top of the environment configuration"""
        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_file, 'r', encoding='utf-8') as f:
            try:
                data = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                mark = getattr(e, 'problem_mark', None)
                where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark is not None else ""
                problem = getattr(e, 'problem', None) or str(e)
                raise ConfigError(f"Invalid YAML in {config_path}: {where}{problem}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{config_path} must contain a mapping of sections, got {type(data).__name__}")

        config = cls.from_env()
        return config.updated(data)

    def updated(self, overrides: Dict[str, Any]) -> 'Config':
        """Return a copy with section values replaced from a nested dict"""
        sections = {}
        for f in fields(self):
            current = getattr(self, f.name)
            values = asdict(current)
            section_overrides = overrides.get(f.name) or {}
            unknown = set(section_overrides) - set(values)
            if unknown:
                raise ConfigError(f"Unknown keys in section '{f.name}': {', '.join(sorted(unknown))}")
            values.update(section_overrides)
            sections[f.name] = type(current)(**values)

        unknown_sections = set(overrides) - set(sections)
        if unknown_sections:
            raise ConfigError(f"Unknown config sections: {', '.join(sorted(unknown_sections))}")
        return Config(**sections)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)
