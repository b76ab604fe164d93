from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, validator

from ..errors import ContractViolation
from .schedule import ThresholdSchedule


class DamageCap(BaseModel):
    """
    Upper bound P on the damage any attack may cause against a schedule.
    """

    value: float

    class Config:
        frozen = True

    @validator("value")
    def value_must_be_valid(cls, v: float) -> float:
        if v >= 0:
            return v
        raise ValueError("A damage cap must be non-negative")


@dataclass(frozen=True)
class DpKey:
    """
    State of the cost recursion; `previous_delay` is None for the arbitrary delay
    before timestep 1.
    """

    n: int
    m: int
    previous_delay: Optional[int]

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.m < self.n:
            raise ContractViolation(f"Invalid DP state n={self.n}, m={self.m}")
        if self.n == 1 and self.previous_delay is not None:
            raise ContractViolation("The state at n=1 has no previous delay")
        if self.n > 1 and self.previous_delay is None:
            raise ContractViolation(f"The state at n={self.n} needs a previous delay")


@dataclass(frozen=True)
class DpCell:
    cost: float
    argmin_delay: Optional[int]


@dataclass(frozen=True)
class FixedSolution:
    optimal_delay: int
    defender_loss: float
    best_response: int
    attacker_payoff: float


@dataclass(frozen=True)
class CapSolution:
    """
    Minimum-cost thresholds under a damage cap; `schedule` is None when infeasible.
    """

    cap: DamageCap
    total_cost: float
    schedule: Optional[ThresholdSchedule]

    @property
    def feasible(self) -> bool:
        return self.schedule is not None


@dataclass(frozen=True)
class AdaptiveSolution:
    schedule: ThresholdSchedule
    total_cost: float
    defender_loss: float
    best_response: int
    attacker_payoff: float
    chosen_cap: DamageCap
