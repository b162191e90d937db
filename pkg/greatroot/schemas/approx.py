# greatroot/schemas/approx.py
import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from greatroot.models.enums import Caveat
from greatroot.schemas.params import StatParams
from greatroot.schemas.scaling import EdgeScaling


class TestResult(BaseModel):
    """Greatest-root test of an observed statistic against the Tracy-Widom approximation."""

    __test__ = False
    model_config = ConfigDict(frozen=True)

    params: StatParams
    statistic_theta: float = Field(..., gt=0.0, lt=1.0)
    s_value: float
    log_cdf: float = Field(..., le=0.0)
    p_value: float = Field(..., ge=0.0, le=1.0)
    scaling: EdgeScaling
    caveats: List[Caveat] = []


class WachterDensity(BaseModel):
    """Limiting spectral density c sqrt((theta_+ - theta)(theta - theta_-)) / (theta (1 - theta))."""

    model_config = ConfigDict(frozen=True)

    theta_minus: float = Field(..., ge=0.0, le=1.0)
    theta_plus: float = Field(..., ge=0.0, le=1.0)
    normalization: float = Field(..., gt=0.0)
    gamma: float = Field(..., gt=0.0)

    @model_validator(mode="after")
    def validate_support(self):
        if not self.theta_minus < self.theta_plus:
            raise ValueError("theta_minus < theta_plus is required")
        return self

    @property
    def width(self) -> float:
        return self.theta_plus - self.theta_minus

    @property
    def printed_constant_ratio(self) -> float:
        """normalization * 2 pi sin^2(gamma / 2); 1 when the constant is the reciprocal of 2 pi sin^2(gamma / 2)."""
        return self.normalization * 2.0 * math.pi * math.sin(0.5 * self.gamma) ** 2
