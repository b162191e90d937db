# greatroot/schemas/lg.py
import math
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from greatroot.models.enums import ScaleKind
from greatroot.schemas.params import LGParams


class LGTransform(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: LGParams
    x_plus: float
    x_minus: float
    zeta_dot_at_xplus: float = Field(..., gt=0.0)
    sigma_N: float = Field(..., gt=0.0)

    @property
    def x_zero(self) -> float:
        """Midpoint of the turning points; the lower end of the domain of zeta."""
        return 0.5 * (self.x_plus + self.x_minus)


class AiryErrorEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int
    sup_error: float
    sup_derivative_error: float
    s_min: float
    s_max: float
    scale_kind: ScaleKind = ScaleKind.U
    underflow: bool = False


class KernelErrorEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int
    sup_error: float
    center: float
    scale: float
    paired: bool


class RateReport(BaseModel):
    """Sup errors over a sequence of degrees with a least-squares rate N^fitted_exponent."""

    model_config = ConfigDict(frozen=True)

    N_values: Tuple[int, ...]
    sup_errors: Tuple[float, ...]
    fitted_exponent: Optional[float] = None
    label: str = "sup_error"

    @model_validator(mode="after")
    def validate_series(self):
        if len(self.N_values) != len(self.sup_errors) or not self.N_values:
            raise ValueError("N_values and sup_errors must be nonempty and of equal length")
        if any(b <= a for a, b in zip(self.N_values, self.N_values[1:])):
            raise ValueError("N_values must be increasing")
        if any(not e > 0.0 for e in self.sup_errors):
            raise ValueError("sup_errors must be positive")
        return self

    @property
    def ratios(self) -> Tuple[float, ...]:
        return tuple(b / a for a, b in zip(self.sup_errors, self.sup_errors[1:]))

    def to_frame(self) -> pd.DataFrame:
        ratio = (math.nan,) + self.ratios
        return pd.DataFrame({"N": self.N_values, "sup_error": self.sup_errors, "ratio": ratio})[
            ["N", "sup_error", "ratio"]
        ]

    @classmethod
    def fit(cls, N_values, sup_errors, label: str = "sup_error") -> "RateReport":
        exponent = None
        if len(N_values) >= 2:
            exponent = float(np.polyfit(np.log(N_values), np.log(sup_errors), 1)[0])
        return cls(
            N_values=tuple(int(n) for n in N_values),
            sup_errors=tuple(float(e) for e in sup_errors),
            fitted_exponent=exponent,
            label=label,
        )
