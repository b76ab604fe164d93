from typing import Tuple

from pydantic import BaseModel, validator


class DamageSeries(BaseModel):
    """
    Expected damage D(k) of an undetected attack at each timestep k = 1..T.

    `values[k - 1]` holds D(k); the horizon T is the number of values.
    """

    values: Tuple[float, ...]

    class Config:
        frozen = True

    @validator("values")
    def values_must_be_valid(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) == 0:
            raise ValueError("A damage series needs at least one timestep")
        for k, value in enumerate(v, start=1):
            if not value >= 0:
                raise ValueError(f"Damage at k={k} must be non-negative, got {value}")
        return v

    @property
    def horizon(self) -> int:
        return len(self.values)

    def at(self, k: int) -> float:
        return self.values[k - 1]
