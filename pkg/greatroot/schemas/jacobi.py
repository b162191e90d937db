# greatroot/schemas/jacobi.py
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PolyValue(BaseModel):
    """A real number stored as sign * exp(log_magnitude)."""

    model_config = ConfigDict(frozen=True)

    log_magnitude: float
    sign: Literal[-1, 0, 1]

    @model_validator(mode="after")
    def validate_zero(self):
        if (self.sign == 0) != (self.log_magnitude == -math.inf):
            raise ValueError("sign is 0 exactly when the value is 0 (log_magnitude = -inf)")
        return self

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)


class NormConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=0)
    log_h_N: float
    log_l_N: float
    a_N: float = Field(..., ge=0.0)
    # a_N / (sin(phi) sin(gamma) / 2); tends to 1 at rate 1/N
    edge_ratio: float


class KernelRepCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: float
    v: float
    direct: float
    integral: float
    residual: float
    truncation: float
    tail_magnitude: float
