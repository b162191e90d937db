# greatroot/schemas/special.py
import math
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, model_validator


class AiryValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float
    ai: float
    ai_prime: float

    @model_validator(mode="after")
    def validate_decay(self):
        # non-strict so that underflow far out on the positive axis is allowed
        if self.s > 0 and (self.ai < 0 or self.ai_prime > 0):
            raise ValueError("Ai must be positive and decreasing on s > 0")
        return self


class TWTable(BaseModel):
    """Tabulated Tracy-Widom law with the Hastings-McLeod solution on the same grid.

    The distribution is stored as log F so that it stays strictly increasing
    where F itself rounds to 1 in double precision.
    """

    model_config = ConfigDict(frozen=True)

    beta_index: Literal[1, 2]
    s_grid: Tuple[float, ...]
    log_F_values: Tuple[float, ...]
    q_values: Tuple[float, ...]

    @model_validator(mode="after")
    def validate_table(self):
        n = len(self.s_grid)
        if n < 2 or len(self.log_F_values) != n or len(self.q_values) != n:
            raise ValueError("s_grid, log_F_values and q_values must have equal length >= 2")
        if any(b <= a for a, b in zip(self.s_grid, self.s_grid[1:])):
            raise ValueError("s_grid must be strictly increasing")
        if any(b <= a for a, b in zip(self.log_F_values, self.log_F_values[1:])):
            raise ValueError("the tabulated distribution must be strictly increasing")
        if self.log_F_values[-1] >= 0.0:
            raise ValueError("tabulated probabilities lie strictly below 1")
        if any(q <= 0.0 for q in self.q_values):
            raise ValueError("the Hastings-McLeod solution is positive")
        return self

    @property
    def F_values(self) -> Tuple[float, ...]:
        return tuple(math.exp(v) for v in self.log_F_values)

    @property
    def s_min(self) -> float:
        return self.s_grid[0]

    @property
    def s_max(self) -> float:
        return self.s_grid[-1]

    def is_extrapolated(self, s: float) -> bool:
        return not self.s_min <= s <= self.s_max
