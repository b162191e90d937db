# greatroot/schemas/scaling.py
from pydantic import BaseModel, ConfigDict, Field, model_validator

from greatroot.models.enums import Ensemble, ScaleKind


class EdgeScaling(BaseModel):
    """Centering and scaling so that (statistic - center) / scale is close to Tracy-Widom."""

    model_config = ConfigDict(frozen=True)

    center: float
    scale: float = Field(..., gt=0.0)
    scale_kind: ScaleKind
    ensemble: Ensemble = Ensemble.REAL
    reflected: bool = False

    @model_validator(mode="after")
    def validate_center(self):
        if self.scale_kind is ScaleKind.X and not -1.0 < self.center < 1.0:
            raise ValueError(f"x-scale center must lie in (-1, 1) (got {self.center})")
        if self.scale_kind is ScaleKind.THETA and not 0.0 < self.center < 1.0:
            raise ValueError(f"theta-scale center must lie in (0, 1) (got {self.center})")
        return self

    def standardize(self, value: float) -> float:
        """Tracy-Widom argument of a statistic; a reflected scaling measures distance below the center."""
        s = (value - self.center) / self.scale
        return -s if self.reflected else s

    def unstandardize(self, s: float) -> float:
        return self.center + self.scale * (-s if self.reflected else s)


class DegreeStepDiagnostics(BaseModel):
    """Differences between the degree N and degree N - 1 edge quantities at fixed (alpha, beta)."""

    model_config = ConfigDict(frozen=True)

    N: int
    delta_N: float
    sigma_ratio: float
    tau_ratio: float
    omega_ratio: float
    u_diff: float
    u_diff_predicted: float
    x_derivative: float
    gamma_derivative: float
    phi_derivative: float
