from typing import List, Optional

from pydantic import BaseModel


class InputEcho(BaseModel):
    """
    Everything needed to reproduce a run; hashes cover the parsed tables, not the
    files they came from.
    """

    damage_source: str
    damage_sha256: str
    horizon: int
    curve_source: str
    curve_sha256: str
    curve_points: int
    fp_cost: float
    change_cost: float
    alpha: Optional[float] = None
    cap: Optional[float] = None
    seed: int
    dp_mode: str


class FixedReport(BaseModel):
    optimal_delay: int
    threshold: Optional[float]
    defender_loss: float
    best_response: int
    attacker_payoff: float


class AdaptiveReport(BaseModel):
    schedule: List[int]
    thresholds: List[Optional[float]]
    change_points: List[int]
    change_count: int
    total_cost: float
    defender_loss: float
    best_response: int
    attacker_payoff: float
    chosen_cap: float


class BestResponseReport(BaseModel):
    schedule: List[int]
    fixed: bool
    best_response: int
    attacker_payoff: float
    defender_loss: float


class Runtime(BaseModel):
    seconds: float
    threads: int


class SolutionReport(BaseModel):
    command: str
    inputs: InputEcho
    fixed: Optional[FixedReport] = None
    adaptive: Optional[AdaptiveReport] = None
    best_response: Optional[BestResponseReport] = None
    payoff_trace: List[float]
    runtime: Runtime
