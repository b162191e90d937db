# greatroot/schemas/montecarlo.py
from typing import Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from greatroot.config import settings
from greatroot.models.enums import Ensemble, ScaleKind
from greatroot.schemas.params import StatParams

MAX_SEED = 2 ** 64 - 1


class SimConfig(BaseModel):
    """Replication plan; output depends on (params, ensemble, reps, seed, chunk_count) only."""

    model_config = ConfigDict(frozen=True)

    params: StatParams
    ensemble: Ensemble = Ensemble.REAL
    reps: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, le=MAX_SEED)
    chunk_count: int = Field(default_factory=lambda: settings.SIM_CHUNKS, ge=1)
    threads: int = Field(default_factory=lambda: settings.SIM_THREADS, ge=1)
    scale_kind: ScaleKind = ScaleKind.LOGIT

    @model_validator(mode="after")
    def validate_scale(self):
        if self.scale_kind not in (ScaleKind.LOGIT, ScaleKind.THETA):
            raise ValueError("simulations standardise on the logit or theta scale")
        return self


class EmpiricalCDF(BaseModel):
    """Fraction of standardised draws at or below each reference point, with binomial SE sqrt(F (1 - F) / R)."""

    model_config = ConfigDict(frozen=True)

    reference_s: Tuple[float, ...]
    estimates: Tuple[float, ...]
    reps: int = Field(..., ge=1)
    standard_errors: Tuple[float, ...]
    nominal: Optional[Tuple[float, ...]] = None

    @model_validator(mode="after")
    def validate_lengths(self):
        n = len(self.reference_s)
        if len(self.estimates) != n or len(self.standard_errors) != n:
            raise ValueError("reference_s, estimates and standard_errors must have equal length")
        if self.nominal is not None and len(self.nominal) != n:
            raise ValueError("nominal levels must match reference_s")
        if any(not 0.0 <= e <= 1.0 for e in self.estimates):
            raise ValueError("estimates are probabilities")
        return self

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"s": self.reference_s, "estimate": self.estimates, "se": self.standard_errors})
        if self.nominal is not None:
            frame["nominal"] = self.nominal
        return frame
