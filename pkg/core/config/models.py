"""
Configuration models using Pydantic for validation
"""
import os
from enum import Enum
from pathlib import Path
from typing import Optional
from pydantic import BaseModel, Field, field_validator


class SolveMethod(str, Enum):
    """Solution route for a fractional equation"""
    CHECKING = "checking"
    COMPUTING = "computing"


class OutputFormat(str, Enum):
    """CLI output formats"""
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class SolverConfig(BaseModel):
    """Numerical and algebraic solver settings"""
    grid_n: int = Field(default=1024, ge=16)
    tol: float = Field(default=1e-3, gt=0)
    method: SolveMethod = SolveMethod.COMPUTING
    minimal: bool = True
    root_tol: float = Field(default=1e-7, gt=0)
    zero_tol: float = Field(default=1e-12, gt=0)
    defect_tol: float = Field(default=1e-8, gt=0)
    ml_bound: float = Field(default=50.0, gt=0)
    range_tol: float = Field(default=1e-6, gt=0)
    condition_limit: float = Field(default=1e12, gt=1)
    start_correction: bool = True
    # ceiling of the quadrature widening, in units of tol * max(1, |w|)
    max_widening: float = Field(default=10.0, ge=1)


class LoggingConfig(BaseModel):
    """Logging configuration"""
    level: str = "WARNING"
    console: bool = True
    log_file: Optional[str] = None

    @field_validator('level')
    @classmethod
    def validate_level(cls, v: str) -> str:
        level = v.upper()
        if level not in ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level


class CliConfig(BaseModel):
    """Options of a single CLI invocation"""
    subcommand: str
    grid_n: int = 1024
    tol: float = 1e-3
    method: SolveMethod = SolveMethod.COMPUTING
    minimal: bool = True
    output_format: OutputFormat = OutputFormat.TEXT
    rhs_csv: Optional[Path] = None
    out: Optional[Path] = None

    @field_validator('grid_n')
    @classmethod
    def validate_grid_n(cls, v: int) -> int:
        if v < 16:
            raise ValueError("grid_n must be at least 16")
        return v

    @field_validator('tol')
    @classmethod
    def validate_tol(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tol must be positive")
        return v

    def solver_config(self, base: Optional[SolverConfig] = None) -> SolverConfig:
        """Overlay the invocation options on a base solver configuration"""
        base = base or SolverConfig()
        return base.model_copy(update={
            "grid_n": self.grid_n,
            "tol": self.tol,
            "method": self.method,
            "minimal": self.minimal,
        })


def _seed_from_env() -> Optional[int]:
    raw = os.getenv("FRACREDUCE_SEED")
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        return None


class AppConfig(BaseModel):
    """Main application configuration"""
    solver: SolverConfig = Field(default_factory=SolverConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    # Reserved for randomized methods; nothing reads it yet.
    seed: Optional[int] = Field(default_factory=_seed_from_env)
