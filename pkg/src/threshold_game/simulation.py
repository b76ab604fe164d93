"""
Monte-Carlo estimation of the CUSUM detector's delay / false-positive trade-off.

The nonparametric statistic is S(k) = max(S(k - 1) + z(k), 0) with S(0) = 0 and
an alarm whenever S(k) > eta; the statistic restarts from zero after each alarm.
Trials run in fixed-size batches, each with its own child seed, so the result
does not depend on how batches are scheduled.
"""
import logging
import math
import time
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from . import const
from .errors import ConfigurationError
from .executors import Executor, basic_executor
from .models.curve import TradeoffCurve
from .models.simulation import EmpiricalCurve, ObserverModel, SimConfig


logger = logging.getLogger(__name__)


class Decision(Enum):
    ATTACK = "attack"
    NORMAL = "normal"

    def __str__(self):
        return self.value


def cusum_update(previous: ArrayLike, z: ArrayLike) -> np.ndarray:
    return np.maximum(np.add(previous, z), 0.0)


def exceeds(statistic: ArrayLike, eta: ArrayLike) -> np.ndarray:
    return np.greater(statistic, eta)


def decide(statistic: float, eta: float) -> Decision:
    if exceeds(statistic, eta):
        return Decision.ATTACK
    return Decision.NORMAL


class _Batch(NamedTuple):
    size: int
    seed: np.random.SeedSequence


class _BatchResult(NamedTuple):
    fp_fraction: np.ndarray
    delays: np.ndarray


def _alarms(z: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """
    Runs one detector per threshold over every stream; returns alarms as
    (thresholds x streams x timesteps).
    """
    streams, length = z.shape
    statistic = np.zeros((len(grid), streams))
    thresholds = grid[:, np.newaxis]
    alarms = np.zeros((len(grid), streams, length), dtype=bool)
    for t in range(length):
        statistic = cusum_update(statistic, z[:, t])
        fired = exceeds(statistic, thresholds)
        alarms[:, :, t] = fired
        statistic[fired] = 0.0
    return alarms


def _run_batch(model: ObserverModel, cfg: SimConfig, batch: _Batch) -> _BatchResult:
    rng = np.random.default_rng(batch.seed)
    grid = np.array(cfg.threshold_grid, dtype=float)
    shape = (batch.size, cfg.run_length)
    start = cfg.run_length // 2

    normal = rng.normal(model.normal_mean, model.noise_std, size=shape)
    fp_fraction = _alarms(normal, grid).mean(axis=2)

    attacked = rng.normal(model.normal_mean, model.noise_std, size=shape)
    attacked[:, start:] += model.attack_mean - model.normal_mean
    after_start = _alarms(attacked, grid)[:, :, start:]
    detected = after_start.any(axis=2)
    delays = after_start.argmax(axis=2).astype(float)
    delays[~detected] = np.nan

    return _BatchResult(fp_fraction, delays)


def _batches(cfg: SimConfig) -> List[_Batch]:
    count = math.ceil(cfg.trials / const.SIM_BATCH_SIZE)
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(count)
    sizes = [const.SIM_BATCH_SIZE] * (count - 1)
    sizes.append(cfg.trials - const.SIM_BATCH_SIZE * (count - 1))
    return [_Batch(size, seed) for size, seed in zip(sizes, seeds)]


def _stderr(samples: np.ndarray) -> float:
    if len(samples) < 2:
        return 0.0
    return float(samples.std(ddof=1) / math.sqrt(len(samples)))


def estimate_curve(
    m: ObserverModel,
    cfg: SimConfig,
    executor: Optional[Executor] = None,
) -> EmpiricalCurve:
    if m.noise_std == 0:
        raise ConfigurationError(
            "A noiseless observer has no delay/false-alarm trade-off"
        )

    execute = executor or basic_executor()
    start_time = time.perf_counter()
    results = execute(lambda batch: _run_batch(m, cfg, batch), _batches(cfg))
    fp_fraction = np.concatenate([result.fp_fraction for result in results], axis=1)
    delays = np.concatenate([result.delays for result in results], axis=1)

    mean_delay = np.full(len(cfg.threshold_grid), np.nan)
    delay_stderr = np.full(len(cfg.threshold_grid), np.nan)
    censored = np.zeros(len(cfg.threshold_grid))
    for i, row in enumerate(delays):
        observed = row[~np.isnan(row)]
        censored[i] = 1.0 - len(observed) / cfg.trials
        if len(observed) > 0:
            mean_delay[i] = observed.mean()
            delay_stderr[i] = _stderr(observed)

    curve = EmpiricalCurve(
        eta=np.array(cfg.threshold_grid, dtype=float),
        fp_rate=fp_fraction.mean(axis=1),
        fp_stderr=np.array([_stderr(row) for row in fp_fraction]),
        mean_delay=mean_delay,
        delay_stderr=delay_stderr,
        censored_fraction=censored,
    )
    end_time = time.perf_counter()
    logger.info(
        "Simulated %d trials over %d thresholds (calc time %.6fs)",
        cfg.trials,
        len(cfg.threshold_grid),
        end_time - start_time,
    )
    return curve


def to_tradeoff_curve(empirical: EmpiricalCurve) -> TradeoffCurve:
    """
    Rounds mean delays to whole timesteps; the smallest threshold reaching each
    delay defines its false-positive rate and is kept as the curve's threshold.
    """
    chosen: Dict[int, Tuple[float, float]] = {}
    for eta, fp, delay in zip(empirical.eta, empirical.fp_rate, empirical.mean_delay):
        if math.isnan(delay):
            continue
        rounded = math.floor(delay + 0.5)
        if rounded not in chosen:
            chosen[rounded] = (float(fp), float(eta))

    if not chosen:
        raise ConfigurationError("No threshold on the grid ever detected the attack")

    delays = sorted(chosen)
    # Sampling noise can break monotonicity; the running minimum restores it.
    fps = np.minimum.accumulate(np.clip([chosen[d][0] for d in delays], 0.0, 1.0))
    return TradeoffCurve.from_pairs(
        [(delay, float(fp)) for delay, fp in zip(delays, fps)],
        thresholds=[chosen[d][1] for d in delays],
    )
