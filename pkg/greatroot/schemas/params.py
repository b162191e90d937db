# greatroot/schemas/params.py
import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from greatroot.models.enums import Caveat, Ensemble


class StatParams(BaseModel):
    """The (p, m, n) triple: dimension, error df, hypothesis df."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_error_df(self):
        if self.m < self.p:
            raise ValueError(f"m >= p is required so that A is invertible (got p={self.p}, m={self.m})")
        return self

    def caveats(self, ensemble: Ensemble = Ensemble.REAL) -> List[Caveat]:
        flags = []
        if ensemble is Ensemble.REAL and min(self.p, self.n) % 2 == 1:
            flags.append(Caveat.P_ODD)
        if self.m == self.p:
            flags.append(Caveat.HARD_EDGE)
        return flags


class JacobiParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=0)
    alpha: float = Field(..., ge=0.0)
    beta: float = Field(..., ge=0.0)
    ensemble: Ensemble = Ensemble.REAL

    @property
    def kappa(self) -> float:
        return 2 * self.N + self.alpha + self.beta + 1.0

    def lowered(self) -> "JacobiParams":
        """Same (alpha, beta) at degree N - 1."""
        if self.N < 1:
            raise ValueError("degree N - 1 is undefined at N = 0")
        return self.model_copy(update={"N": self.N - 1})


class LGParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    kappa: float = Field(..., gt=0.0)
    lam: float = Field(..., ge=0.0, lt=1.0)
    mu_lg: float = Field(..., ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def validate_sum(self):
        if self.lam + self.mu_lg > 1.0 + 1e-15:
            raise ValueError("lambda + mu must not exceed 1")
        return self


class Angles(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: float
    phi: float

    @model_validator(mode="after")
    def validate_order(self):
        if not 0.0 < self.gamma <= math.pi / 2 + 1e-15:
            raise ValueError(f"gamma must lie in (0, pi/2] (got {self.gamma})")
        if not 0.0 < self.phi < math.pi:
            raise ValueError(f"phi must lie in (0, pi) (got {self.phi})")
        if self.gamma > self.phi + 1e-15:
            raise ValueError("gamma <= phi is required")
        return self


class TurningPoints(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_minus: float
    x_plus: float

    @field_validator("x_minus", "x_plus")
    def validate_range(cls, v):
        if not -1.0 <= v <= 1.0:
            raise ValueError("turning points lie in [-1, 1]")
        return v

    @model_validator(mode="after")
    def validate_order(self):
        if self.x_minus > self.x_plus:
            raise ValueError("x_minus <= x_plus is required")
        return self

    @property
    def center(self) -> float:
        return 0.5 * (self.x_plus + self.x_minus)
