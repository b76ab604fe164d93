from bisect import bisect_left
from typing import List, Optional, Tuple

from pydantic import BaseModel, root_validator, validator

from ..errors import ContractViolation


class CurvePoint(BaseModel):
    delay: int
    fp: float
    threshold: Optional[float] = None

    class Config:
        frozen = True

    @validator("delay")
    def delay_must_be_valid(cls, v: int) -> int:
        if v >= 0:
            return v
        raise ValueError("Detection delay must be non-negative")

    @validator("fp")
    def fp_must_be_valid(cls, v: float) -> float:
        """
        Checks that the false-positive rate is a probability.
        """
        if 0 <= v <= 1:
            return v
        raise ValueError("False-positive rate must be between 0 and 1 inclusive")

    @validator("threshold")
    def threshold_must_be_valid(cls, v: Optional[float]) -> Optional[float]:
        if v is None or v >= 0:
            return v
        raise ValueError("Threshold must be non-negative")


class TradeoffCurve(BaseModel):
    """
    The attainable detection delays Δ with their false-positive rates.

    Thresholds are encoded by their delays: a schedule or a fixed strategy only ever
    refers to a delay on this curve.
    """

    points: Tuple[CurvePoint, ...]

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def points_must_be_monotone(cls, values):
        points = values["points"]
        for previous, current in zip(points, points[1:]):
            if current.delay <= previous.delay:
                raise ValueError(
                    f"Delays must be strictly increasing, got {previous.delay} "
                    f"then {current.delay}"
                )
            if current.fp > previous.fp:
                raise ValueError(
                    f"False-positive rate must not increase with delay, got "
                    f"FP({previous.delay})={previous.fp} < "
                    f"FP({current.delay})={current.fp}"
                )
        return values

    @classmethod
    def from_pairs(
        cls,
        pairs: List[Tuple[int, float]],
        thresholds: Optional[List[Optional[float]]] = None,
    ) -> "TradeoffCurve":
        etas = thresholds if thresholds is not None else [None] * len(pairs)
        points = tuple(
            CurvePoint(delay=delay, fp=fp, threshold=eta)
            for (delay, fp), eta in zip(pairs, etas)
        )
        return cls(points=points)

    @property
    def delays(self) -> Tuple[int, ...]:
        return tuple(point.delay for point in self.points)

    @property
    def fp_rates(self) -> Tuple[float, ...]:
        return tuple(point.fp for point in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, delay: int) -> int:
        delays = self.delays
        i = bisect_left(delays, delay)
        if i == len(delays) or delays[i] != delay:
            raise ContractViolation(f"Delay {delay} is not on the trade-off curve")
        return i

    def contains(self, delay: int) -> bool:
        delays = self.delays
        i = bisect_left(delays, delay)
        return i < len(delays) and delays[i] == delay

    def fp(self, delay: int) -> float:
        return self.points[self.index_of(delay)].fp

    def threshold(self, delay: int) -> Optional[float]:
        return self.points[self.index_of(delay)].threshold
