# greatroot/config.py
from pathlib import Path

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    CACHE_DIR: Path = Path.home() / ".cache" / "greatroot"
    USE_CACHE: bool = True

    # Tracy-Widom table grid and Painleve II integration
    TW_GRID_MIN: float = -10.0
    TW_GRID_MAX: float = 10.0
    TW_GRID_STEP: float = 0.05
    TW_ODE_START: float = 10.0
    TW_ODE_STOP: float = -8.0
    TW_RTOL: float = 1e-12

    FREDHOLM_MIN_NODES: int = 24
    FREDHOLM_MAX_NODES: int = 384

    SIM_CHUNKS: int = 8
    SIM_THREADS: int = 1
    SIM_MAX_FAILURES: int = 5

    LOG_LEVEL: str = "WARNING"
    SCHEMA_VERSION: str = "1.0"

    model_config = SettingsConfigDict(
        env_prefix="GREATROOT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("TW_ODE_START")
    def validate_ode_start(cls, v):
        if v < 8.0:
            raise ValueError("TW_ODE_START must be >= 8 so that q(s) = Ai(s) is an accurate boundary value")
        return v

    @field_validator("TW_GRID_STEP", "TW_RTOL")
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("grid step and tolerance must be positive")
        return v

    @field_validator("SIM_CHUNKS", "SIM_THREADS", "SIM_MAX_FAILURES", "FREDHOLM_MIN_NODES")
    def validate_count(cls, v):
        if v < 1:
            raise ValueError("counts must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_grid(self):
        if not self.TW_GRID_MIN <= -8.0 or not self.TW_GRID_MAX >= 8.0:
            raise ValueError("the Tracy-Widom grid must cover [-8, 8]")
        if not self.TW_GRID_MIN <= self.TW_ODE_STOP < 0.0:
            raise ValueError("TW_ODE_STOP must lie inside the grid and below 0")
        if self.TW_ODE_START < self.TW_GRID_MAX:
            raise ValueError("TW_ODE_START must not lie below TW_GRID_MAX")
        if self.FREDHOLM_MAX_NODES < self.FREDHOLM_MIN_NODES:
            raise ValueError("FREDHOLM_MAX_NODES must be >= FREDHOLM_MIN_NODES")
        return self


settings = Settings()
