"""
Brute-force reference solvers for testing.

They enumerate every strategy directly from the loss and payoff definitions
and refuse instances too large to enumerate.
"""
import itertools
import math
from typing import Iterable, Optional, Sequence, Tuple

from .. import const, game
from ..errors import OracleBoundError
from ..models.config import GameConfig
from ..models.curve import TradeoffCurve
from ..models.damage import DamageSeries
from ..models.schedule import ThresholdSchedule
from ..models.solutions import AdaptiveSolution, CapSolution, DamageCap, FixedSolution
from .fixed import check_instance


def _worst_attack(values: Sequence[float], delays: Sequence[int]) -> Tuple[int, float]:
    best_start, best_payoff = 1, -math.inf
    for k_a in range(1, len(values) + 1):
        _, end = game.accrual_end(delays, k_a)
        payoff = game.interval_damage(values, k_a, end)
        if payoff > best_payoff:
            best_start, best_payoff = k_a, payoff
    return best_start, best_payoff


def _schedules(
    d: DamageSeries, c: TradeoffCurve, max_schedules: int
) -> Iterable[Tuple[int, ...]]:
    count = len(c) ** d.horizon
    if count > max_schedules:
        raise OracleBoundError(
            f"{count} schedules exceed the oracle bound of {max_schedules}"
        )
    # Lexicographic order, so the first optimum found is the smallest schedule.
    return itertools.product(c.delays, repeat=d.horizon)


def _cost(c: TradeoffCurve, g: GameConfig, delays: Tuple[int, ...]) -> float:
    return game.schedule_cost(c, g, ThresholdSchedule.construct(delays=delays))


def oracle_fixed(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    max_horizon: int = const.ORACLE_MAX_HORIZON,
) -> FixedSolution:
    check_instance(d, c, g)
    if d.horizon > max_horizon:
        raise OracleBoundError(
            f"Horizon {d.horizon} exceeds the oracle bound of {max_horizon}"
        )

    best: Optional[FixedSolution] = None
    for delay in c.delays:
        best_start, best_payoff = 1, -math.inf
        for k_a in range(1, d.horizon + 1):
            payoff = game.attacker_payoff_fixed(d, delay, k_a)
            if payoff > best_payoff:
                best_start, best_payoff = k_a, payoff

        loss = game.defender_loss_fixed(d, c, g, delay, best_start)
        if best is None or loss < best.defender_loss:
            best = FixedSolution(delay, loss, best_start, best_payoff)

    assert best is not None
    return best


def oracle_adaptive(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    max_schedules: int = const.ORACLE_MAX_SCHEDULES,
) -> AdaptiveSolution:
    check_instance(d, c, g)

    best: Optional[AdaptiveSolution] = None
    for delays in _schedules(d, c, max_schedules):
        k_a, payoff = _worst_attack(d.values, delays)
        cost = _cost(c, g, delays)
        loss = cost + payoff
        if best is None or loss < best.defender_loss:
            best = AdaptiveSolution(
                schedule=ThresholdSchedule(delays=delays),
                total_cost=cost,
                defender_loss=loss,
                best_response=k_a,
                attacker_payoff=payoff,
                chosen_cap=DamageCap(value=payoff),
            )

    assert best is not None
    return best


def oracle_min_cost(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    cap: DamageCap,
    max_schedules: int = const.ORACLE_MAX_SCHEDULES,
) -> CapSolution:
    check_instance(d, c, g)

    best_cost = math.inf
    best_delays: Optional[Tuple[int, ...]] = None
    for delays in _schedules(d, c, max_schedules):
        _, payoff = _worst_attack(d.values, delays)
        if payoff > cap.value:
            continue
        cost = _cost(c, g, delays)
        if cost < best_cost:
            best_cost, best_delays = cost, delays

    schedule = None if best_delays is None else ThresholdSchedule(delays=best_delays)
    return CapSolution(cap, best_cost, schedule)
