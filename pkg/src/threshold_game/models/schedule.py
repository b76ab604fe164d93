from dataclasses import dataclass
from typing import Optional, Tuple

from pydantic import BaseModel, root_validator, validator


class ThresholdSchedule(BaseModel):
    """
    Per-timestep detection delays; `delays[k - 1]` is the delay of the threshold at k.
    """

    delays: Tuple[int, ...]

    class Config:
        frozen = True

    @validator("delays")
    def delays_must_be_valid(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(v) == 0:
            raise ValueError("A schedule needs at least one timestep")
        if any(delay < 0 for delay in v):
            raise ValueError("Detection delays must be non-negative")
        return v

    @classmethod
    def constant(cls, delay: int, horizon: int) -> "ThresholdSchedule":
        return cls(delays=(delay,) * horizon)

    @property
    def horizon(self) -> int:
        return len(self.delays)

    def at(self, k: int) -> int:
        return self.delays[k - 1]


class AttackPlan(BaseModel):
    start: int
    horizon: int

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def start_must_be_valid(cls, values):
        start, horizon = values["start"], values["horizon"]
        if 1 <= start <= horizon:
            return values
        raise ValueError(f"Attack start {start} is outside 1..{horizon}")


@dataclass(frozen=True)
class DetectionOutcome:
    detected: bool
    time: Optional[int]
    accrual_end: int
    start: int

    @property
    def delay(self) -> Optional[int]:
        if self.time is None:
            return None
        return self.time - self.start
