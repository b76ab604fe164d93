import logging
import math
import sys
import time
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

from .. import game
from ..errors import ConfigurationError
from ..executors import Executor, basic_executor
from ..models.config import GameConfig
from ..models.curve import TradeoffCurve
from ..models.damage import DamageSeries
from ..models.solutions import FixedSolution


logger = logging.getLogger(__name__)

# Each window value carries at most one rounding per step entering or leaving.
_ROUNDING_SLACK = 4


class _Candidate(NamedTuple):
    delay: int
    best_response: int
    payoff: float
    loss: float


def check_instance(d: DamageSeries, c: TradeoffCurve, g: GameConfig) -> None:
    if len(c) == 0:
        raise ConfigurationError("The trade-off curve has no attainable delays")
    if g.horizon != d.horizon:
        raise ConfigurationError(
            f"Game horizon {g.horizon} does not match the damage series horizon "
            f"{d.horizon}"
        )


def sliding_payoffs(values: Sequence[float], delay: int) -> Iterator[Tuple[int, float]]:
    """
    Yields the payoff of every attack start, moving the detection window one step
    at a time: the departing D(k_a - 1) leaves, D(k_a + delay) enters while it is
    still inside the horizon.
    """
    horizon = len(values)
    payoff = game.interval_damage(values, 1, min(1 + delay, horizon))
    yield 1, payoff
    for k_a in range(2, horizon + 1):
        payoff -= values[k_a - 2]
        if k_a + delay <= horizon:
            payoff += values[k_a + delay - 1]
        yield k_a, payoff


def _sliding_best_response(values: Sequence[float], delay: int) -> Tuple[int, float]:
    """
    Returns the earliest payoff-maximising start.

    The sliding window only screens starts. Every start whose window value lies
    within the window's rounding bound of the maximum is re-summed directly, and
    the exact sums decide.
    """
    window = list(sliding_payoffs(values, delay))
    top = max(payoff for _, payoff in window)
    bound = _ROUNDING_SLACK * len(values) * sys.float_info.epsilon * math.fsum(values)

    horizon = len(values)
    best_start, best_payoff = 1, -math.inf
    for k_a, payoff in window:
        if payoff < top - bound:
            continue
        exact = game.interval_damage(values, k_a, min(k_a + delay, horizon))
        if exact > best_payoff:
            best_start, best_payoff = k_a, exact
    return best_start, best_payoff


def best_response_fixed(d: DamageSeries, delay: int) -> Tuple[int, float]:
    if delay < 0:
        raise ConfigurationError(f"Detection delay must be non-negative, got {delay}")
    return _sliding_best_response(d.values, delay)


def solve_fixed(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    executor: Optional[Executor] = None,
) -> FixedSolution:
    check_instance(d, c, g)
    execute = executor or basic_executor()
    horizon = d.horizon

    def evaluate(index: int) -> _Candidate:
        point = c.points[index]
        k_a, payoff = _sliding_best_response(d.values, point.delay)
        loss = g.fp_cost * point.fp * horizon + payoff
        return _Candidate(point.delay, k_a, payoff, loss)

    start_time = time.perf_counter()
    candidates = execute(evaluate, range(len(c)))

    # Ordered by delay, so a strict comparison keeps the smallest optimal delay.
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.loss < best.loss:
            best = candidate
    end_time = time.perf_counter()
    logger.info(
        "Fixed threshold: delay %d, loss %.4f (calc time %.6fs)",
        best.delay,
        best.loss,
        end_time - start_time,
    )

    return FixedSolution(
        optimal_delay=best.delay,
        defender_loss=best.loss,
        best_response=best.best_response,
        attacker_payoff=best.payoff,
    )
