"""
Closed-form quantities of the attacker-defender game.

Timesteps are 1-based throughout, matching D(1..T). An attack that is still
undetected at the horizon accrues damage through T only.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from .errors import ContractViolation
from .models.config import GameConfig
from .models.curve import TradeoffCurve
from .models.damage import DamageSeries
from .models.schedule import AttackPlan, DetectionOutcome, ThresholdSchedule


def _plan(k_a: int, horizon: int) -> AttackPlan:
    try:
        return AttackPlan(start=k_a, horizon=horizon)
    except ValidationError as e:
        raise ContractViolation(f"Attack start {k_a} is outside 1..{horizon}") from e


def _check_schedule(d: DamageSeries, s: ThresholdSchedule) -> None:
    if s.horizon != d.horizon:
        raise ContractViolation(
            f"Schedule covers {s.horizon} timesteps but the damage series covers "
            f"{d.horizon}"
        )


def interval_damage(values: Sequence[float], k_a: int, k_e: int) -> float:
    return math.fsum(values[k_a - 1:k_e])


def accrual_end(delays: Sequence[int], k_a: int) -> Tuple[Optional[int], int]:
    """
    Returns the detection time (or None) and the last accruing timestep of an attack.
    """
    for k in range(k_a, len(delays) + 1):
        if delays[k - 1] <= k - k_a:
            return k, k
    return None, len(delays)


def total_damage(d: DamageSeries, k_a: int, k_e: int) -> float:
    if not 1 <= k_a <= k_e <= d.horizon:
        raise ContractViolation(
            f"Damage interval [{k_a}, {k_e}] is not within 1..{d.horizon}"
        )
    return interval_damage(d.values, k_a, k_e)


def interval_sums(d: DamageSeries) -> np.ndarray:
    """
    Table of every total damage, indexed `[k_a, k_e]` for 1 <= k_a <= k_e <= T.

    Entries outside that triangle are zero.
    """
    horizon = d.horizon
    table = np.zeros((horizon + 2, horizon + 2))
    for k_a in range(1, horizon + 1):
        for k_e in range(k_a, horizon + 1):
            table[k_a, k_e] = interval_damage(d.values, k_a, k_e)
    return table


def detection_time(s: ThresholdSchedule, k_a: int) -> DetectionOutcome:
    plan = _plan(k_a, s.horizon)
    time, end = accrual_end(s.delays, plan.start)
    return DetectionOutcome(
        detected=time is not None, time=time, accrual_end=end, start=plan.start
    )


def attacker_payoff_adaptive(d: DamageSeries, s: ThresholdSchedule, k_a: int) -> float:
    _check_schedule(d, s)
    outcome = detection_time(s, k_a)
    return interval_damage(d.values, k_a, outcome.accrual_end)


def attacker_payoff_fixed(d: DamageSeries, delay: int, k_a: int) -> float:
    plan = _plan(k_a, d.horizon)
    if delay < 0:
        raise ContractViolation(f"Detection delay must be non-negative, got {delay}")
    return interval_damage(d.values, plan.start, min(plan.start + delay, d.horizon))


def change_points(s: ThresholdSchedule) -> List[int]:
    """
    Timesteps k after which the threshold changes, i.e. delays[k] != delays[k + 1].
    """
    delays = s.delays
    return [k for k in range(1, len(delays)) if delays[k - 1] != delays[k]]


def change_count(s: ThresholdSchedule) -> int:
    return len(change_points(s))


def schedule_cost(c: TradeoffCurve, g: GameConfig, s: ThresholdSchedule) -> float:
    """
    Total cost of a schedule: threshold changes plus false-alarm investigations.
    """
    fp_cost = math.fsum(g.fp_cost * c.fp(delay) for delay in s.delays)
    return change_count(s) * g.change_cost + fp_cost


def defender_loss_adaptive(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    s: ThresholdSchedule,
    k_a: int,
) -> float:
    _check_schedule(d, s)
    return schedule_cost(c, g, s) + attacker_payoff_adaptive(d, s, k_a)


def defender_loss_fixed(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    delay: int,
    k_a: int,
) -> float:
    fp = c.fp(delay)
    return g.fp_cost * fp * d.horizon + attacker_payoff_fixed(d, delay, k_a)


def payoff_trace_fixed(d: DamageSeries, delay: int) -> List[float]:
    return [attacker_payoff_fixed(d, delay, k_a) for k_a in range(1, d.horizon + 1)]


def payoff_trace_adaptive(d: DamageSeries, s: ThresholdSchedule) -> List[float]:
    return [
        attacker_payoff_adaptive(d, s, k_a) for k_a in range(1, d.horizon + 1)
    ]


def thresholds_for(c: TradeoffCurve, s: ThresholdSchedule) -> List[Optional[float]]:
    """
    Maps a delay schedule back to the maximal threshold behind each delay.
    """
    return [c.threshold(delay) for delay in s.delays]
