"""
Re-solves both games over a grid of one cost parameter.
"""
import logging
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

import pandas as pd

from . import game
from .executors import Executor
from .models.config import GameConfig
from .models.curve import TradeoffCurve
from .models.damage import DamageSeries
from .models.run_spec import SweepParameter
from .solvers.adaptive import DpMode, solve_adaptive
from .solvers.fixed import solve_fixed


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    parameter: str
    value: float
    fixed_delay: int
    fixed_loss: float
    fixed_payoff: float
    adaptive_loss: float
    adaptive_payoff: float
    adaptive_changes: int
    adaptive_cost: float


def _config(base: GameConfig, parameter: SweepParameter, value: float) -> GameConfig:
    if parameter == SweepParameter.FP_COST:
        return GameConfig(
            fp_cost=value, change_cost=base.change_cost, horizon=base.horizon
        )
    return GameConfig(fp_cost=base.fp_cost, change_cost=value, horizon=base.horizon)


def sweep(
    d: DamageSeries,
    c: TradeoffCurve,
    base: GameConfig,
    parameter: SweepParameter,
    values: Sequence[float],
    executor: Optional[Executor] = None,
    mode: DpMode = DpMode.LAZY,
) -> List[SweepRow]:
    rows = []
    for value in values:
        g = _config(base, parameter, value)
        fixed = solve_fixed(d, c, g, executor)
        adaptive = solve_adaptive(d, c, g, executor, mode)
        rows.append(
            SweepRow(
                parameter=str(parameter),
                value=value,
                fixed_delay=fixed.optimal_delay,
                fixed_loss=fixed.defender_loss,
                fixed_payoff=fixed.attacker_payoff,
                adaptive_loss=adaptive.defender_loss,
                adaptive_payoff=adaptive.attacker_payoff,
                adaptive_changes=game.change_count(adaptive.schedule),
                adaptive_cost=adaptive.total_cost,
            )
        )
        logger.debug("Swept %s=%s", parameter, value)
    return rows


def to_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(row) for row in rows])
