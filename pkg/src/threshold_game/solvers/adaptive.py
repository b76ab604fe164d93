"""
Optimal adaptive thresholds.

`minimum_cost_thresholds` is a backward dynamic program over states
(n, m, previous delay): n is the current timestep, m the size of the pending
window of attacks that started at n - m..n and are still undetected. Its value
is the cheapest false-alarm plus change cost for timesteps n..T that keeps every
attack within the damage cap. `solve_adaptive` then searches every attainable
total damage P for the minimum of TC(P) + P.

The table is vectorised over a batch of caps: every cap owns one row of each
cost array, so a batch gives bit-identical results to solving its caps one by
one.
"""
import logging
import math
import time
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .. import const, game
from ..errors import ContractViolation
from ..executors import Executor, basic_executor
from ..models.config import GameConfig
from ..models.curve import TradeoffCurve
from ..models.damage import DamageSeries
from ..models.schedule import ThresholdSchedule
from ..models.solutions import AdaptiveSolution, CapSolution, DamageCap, DpCell, DpKey
from .fixed import check_instance


logger = logging.getLogger(__name__)

_NO_DELAY = -1


class DpMode(Enum):
    LAZY = "lazy"
    EAGER = "eager"

    def __str__(self):
        return self.value


class _Row(NamedTuple):
    cost: np.ndarray
    argmin: np.ndarray


class _CostTable:
    """
    Memoised Cost(n, m, previous delay) for a batch of damage caps.

    Row (n, m) holds a (caps x delays) cost array indexed by the previous delay;
    row (1, 0) has a single column for the arbitrary delay before timestep 1.
    """

    def __init__(
        self,
        sums: np.ndarray,
        curve: TradeoffCurve,
        config: GameConfig,
        caps: np.ndarray,
    ) -> None:
        self.sums = sums
        self.horizon = config.horizon
        self.delays = np.array(curve.delays, dtype=np.int64)
        self.step_costs = config.fp_cost * np.array(curve.fp_rates, dtype=float)
        self.change_cost = config.change_cost
        self.caps = caps
        self.rows: Dict[Tuple[int, int], _Row] = {}

        size = len(self.delays)
        self._indices = np.arange(size)[np.newaxis, :]
        self._caps_index = np.arange(len(caps))
        # Number of delays <= m, i.e. candidates that detect the oldest pending attack.
        self._split = np.searchsorted(
            self.delays, np.arange(self.horizon + 2), side="right"
        )

    def row(self, n: int, m: int) -> _Row:
        cached = self.rows.get((n, m))
        if cached is None:
            cached = self._compute(n, m)
            self.rows[(n, m)] = cached
        return cached

    def fill(self) -> None:
        for n in range(self.horizon + 1, 0, -1):
            for m in range(n):
                self.row(n, m)

    def _terminal(self, m: int) -> _Row:
        shape = (len(self.caps), len(self.delays))
        if m == 0:
            feasible = np.ones(len(self.caps), dtype=bool)
        else:
            feasible = self.sums[self.horizon + 1 - m, self.horizon] <= self.caps
        cost = np.repeat(
            np.where(feasible, 0.0, math.inf)[:, np.newaxis], shape[1], axis=1
        )
        return _Row(cost, np.full(shape, _NO_DELAY, dtype=np.int32))

    def _compute(self, n: int, m: int) -> _Row:
        if n == self.horizon + 1:
            return self._terminal(m)

        size = len(self.delays)
        split = int(self._split[m])
        step = np.empty((len(self.caps), size))

        # Delays above m leave every pending attack undetected; the window grows.
        if split < size:
            step[:, split:] = self.row(n + 1, m + 1).cost[:, split:]

        # Otherwise the oldest pending attack, started at n - m, is detected now.
        if split > 0:
            window_ok = self.sums[n - m, n] <= self.caps
            if window_ok.any():
                for i in range(split):
                    delay = int(self.delays[i])
                    step[:, i] = self.row(n + 1, delay).cost[:, i]
                step[~window_ok, :split] = math.inf
            else:
                step[:, :split] = math.inf

        step += self.step_costs

        if n == 1:
            best = step.argmin(axis=1)
            cost = step[self._caps_index, best][:, np.newaxis]
            argmin = best.astype(np.int32)[:, np.newaxis]
            argmin[np.isinf(cost)] = _NO_DELAY
            return _Row(cost, argmin)

        changed = step + self.change_cost
        best = changed.argmin(axis=1)
        best_changed = changed[self._caps_index, best][:, np.newaxis]
        best = best[:, np.newaxis]

        cost = np.minimum(step, best_changed)
        argmin = np.where(
            step < best_changed,
            self._indices,
            np.where(step > best_changed, best, np.minimum(self._indices, best)),
        ).astype(np.int32)
        argmin[np.isinf(cost)] = _NO_DELAY
        return _Row(cost, argmin)

    def cell(self, cap_index: int, key: DpKey) -> DpCell:
        row = self.row(key.n, key.m)
        column = 0
        if key.previous_delay is not None:
            column = int(np.searchsorted(self.delays, key.previous_delay))
        cost = float(row.cost[cap_index, column])
        i = int(row.argmin[cap_index, column])
        delay = None if i == _NO_DELAY else int(self.delays[i])
        return DpCell(cost=cost, argmin_delay=delay)

    def recover(self, cap_index: int) -> Tuple[float, Optional[Tuple[int, ...]]]:
        """
        Replays the argmin cells forwards from (1, 0, arbitrary).
        """
        total = float(self.row(1, 0).cost[cap_index, 0])
        if math.isinf(total):
            return math.inf, None

        delays: List[int] = []
        m = 0
        previous: Optional[int] = None
        for n in range(1, self.horizon + 1):
            row = self.row(n, m)
            i = int(row.argmin[cap_index, 0 if previous is None else previous])
            delay = int(self.delays[i])
            delays.append(delay)
            m = min(m + 1, delay)
            previous = i
        return total, tuple(delays)


def damage_search_space(d: DamageSeries) -> List[float]:
    """
    Every total damage an attack interval can cause, deduplicated and ascending.
    """
    values = d.values
    horizon = d.horizon
    return sorted(
        {
            game.interval_damage(values, k_a, k_e)
            for k_a in range(1, horizon + 1)
            for k_e in range(k_a, horizon + 1)
        }
    )


def _solve_caps(
    sums: np.ndarray,
    c: TradeoffCurve,
    g: GameConfig,
    caps: Sequence[float],
    mode: DpMode,
) -> List[CapSolution]:
    table = _CostTable(sums, c, g, np.array(caps, dtype=float))
    if mode == DpMode.EAGER:
        table.fill()

    solutions = []
    for index, cap in enumerate(caps):
        total, delays = table.recover(index)
        schedule = None
        if delays is not None:
            # Summed as game.schedule_cost sums, not in the table's order.
            schedule = ThresholdSchedule(delays=delays)
            total = game.schedule_cost(c, g, schedule)
        solutions.append(CapSolution(DamageCap(value=cap), total, schedule))
    logger.debug("Solved %d caps with %d memoised rows", len(caps), len(table.rows))
    return solutions


def minimum_cost_thresholds(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    cap: DamageCap,
    mode: DpMode = DpMode.LAZY,
) -> CapSolution:
    check_instance(d, c, g)
    return _solve_caps(game.interval_sums(d), c, g, [cap.value], mode)[0]


def best_response_adaptive(d: DamageSeries, s: ThresholdSchedule) -> Tuple[int, float]:
    best_start, best_payoff = 1, -math.inf
    for k_a, payoff in enumerate(game.payoff_trace_adaptive(d, s), start=1):
        if payoff > best_payoff:
            best_start, best_payoff = k_a, payoff
    return best_start, best_payoff


def _chunks(items: Sequence[float], size: int) -> List[Sequence[float]]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def cost_profile(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    executor: Optional[Executor] = None,
    mode: DpMode = DpMode.LAZY,
) -> List[CapSolution]:
    """
    Minimum-cost thresholds for every cap of the damage search space, ascending.
    """
    check_instance(d, c, g)
    execute = executor or basic_executor()
    sums = game.interval_sums(d)
    space = damage_search_space(d)

    def solve_chunk(caps: Sequence[float]) -> List[CapSolution]:
        return _solve_caps(sums, c, g, caps, mode)

    batches = execute(solve_chunk, _chunks(space, const.DP_CAP_BATCH_SIZE))
    return [solution for batch in batches for solution in batch]


def solve_adaptive(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    executor: Optional[Executor] = None,
    mode: DpMode = DpMode.LAZY,
) -> AdaptiveSolution:
    start_time = time.perf_counter()
    profile = cost_profile(d, c, g, executor, mode)

    # Caps ascend, so a strict comparison keeps the smallest optimal cap.
    best: Optional[CapSolution] = None
    for candidate in profile:
        if not candidate.feasible:
            continue
        if best is None or (
            candidate.total_cost + candidate.cap.value
            < best.total_cost + best.cap.value
        ):
            best = candidate
    # The largest cap bounds the whole-horizon attack, so it is always feasible.
    assert best is not None and best.schedule is not None

    k_a, payoff = best_response_adaptive(d, best.schedule)
    end_time = time.perf_counter()
    logger.info(
        "Adaptive thresholds: cap %.4f over %d caps, %d changes, loss %.4f "
        "(calc time %.6fs)",
        best.cap.value,
        len(profile),
        game.change_count(best.schedule),
        best.total_cost + payoff,
        end_time - start_time,
    )

    return AdaptiveSolution(
        schedule=best.schedule,
        total_cost=best.total_cost,
        defender_loss=best.total_cost + payoff,
        best_response=k_a,
        attacker_payoff=payoff,
        chosen_cap=best.cap,
    )


def cost_cell(
    d: DamageSeries,
    c: TradeoffCurve,
    g: GameConfig,
    cap: DamageCap,
    key: DpKey,
    mode: DpMode = DpMode.LAZY,
) -> DpCell:
    """
    Looks up one memoised cell of the cost recursion.
    """
    check_instance(d, c, g)
    if key.n > d.horizon + 1:
        raise ContractViolation(
            f"DP state n={key.n} lies beyond the horizon {d.horizon}"
        )
    if key.previous_delay is not None:
        c.index_of(key.previous_delay)
    table = _CostTable(game.interval_sums(d), c, g, np.array([cap.value]))
    if mode == DpMode.EAGER:
        table.fill()
    return table.cell(0, key)
