import math

import numpy as np
import pytest

from threshold_game.errors import ConfigurationError
from threshold_game.executors import dask_executor
from threshold_game.models.simulation import EmpiricalCurve, ObserverModel, SimConfig
from threshold_game.simulation import (
    Decision,
    cusum_update,
    decide,
    estimate_curve,
    to_tradeoff_curve,
)


def _model(attack_mean: float = 1.0, noise_std: float = 1.0) -> ObserverModel:
    return ObserverModel(normal_mean=-1, attack_mean=attack_mean, noise_std=noise_std)


@pytest.mark.parametrize("previous,z,expected", [(0, -1, 0), (2, 1.5, 3.5), (1, -3, 0)])
def test_cusum_update_clamps_at_zero(previous, z, expected):
    result = cusum_update(previous, z)

    assert result == expected


def test_cusum_statistic_stays_non_negative():
    rng = np.random.default_rng(0)
    statistic = 0.0

    for z in rng.normal(-0.5, 3, size=1000):
        statistic = cusum_update(statistic, z)
        assert statistic >= 0


@pytest.mark.parametrize(
    "statistic,eta,expected",
    [(2.5, 2.5, Decision.NORMAL), (0.1, 0, Decision.ATTACK), (4.9, 5, Decision.NORMAL)],
)
def test_decide_alarms_strictly_above_threshold(statistic, eta, expected):
    result = decide(statistic, eta)

    assert result == expected


def test_estimate_curve_noiseless_observer_raises_error():
    cfg = SimConfig(threshold_grid=(0.0,), trials=10, run_length=10, rng_seed=1)

    with pytest.raises(ConfigurationError):
        _ = estimate_curve(_model(noise_std=0), cfg)


def test_estimate_curve_is_reproducible_for_a_seed():
    cfg = SimConfig(
        threshold_grid=(0.0, 2.0, 4.0), trials=700, run_length=40, rng_seed=9
    )

    first = estimate_curve(_model(), cfg).to_frame()
    second = estimate_curve(_model(), cfg).to_frame()
    parallel = estimate_curve(_model(), cfg, dask_executor(4)).to_frame()

    assert first.equals(second)
    assert first.equals(parallel)


def test_estimate_curve_alarm_rate_at_zero_threshold():
    cfg = SimConfig(threshold_grid=(0.0,), trials=2000, run_length=50, rng_seed=3)

    result = estimate_curve(_model(), cfg)

    # Every step alarms exactly when z > 0, i.e. with probability 1 - Phi(1).
    assert result.fp_rate[0] == pytest.approx(0.1587, abs=0.01)


def test_estimate_curve_strong_attack_is_detected_immediately():
    cfg = SimConfig(threshold_grid=(0.5, 1.0), trials=200, run_length=40, rng_seed=4)

    result = estimate_curve(_model(attack_mean=100), cfg)

    assert list(result.mean_delay) == [0.0, 0.0]
    assert list(result.censored_fraction) == [0.0, 0.0]


def test_estimate_curve_is_monotone_within_confidence():
    grid = tuple(float(eta) for eta in range(0, 20, 2))
    cfg = SimConfig(threshold_grid=grid, trials=10_000, run_length=200, rng_seed=17)

    result = estimate_curve(_model(), cfg)

    for i in range(len(grid) - 1):
        fp_band = 2 * math.hypot(result.fp_stderr[i], result.fp_stderr[i + 1])
        delay_band = 2 * math.hypot(result.delay_stderr[i], result.delay_stderr[i + 1])
        assert result.fp_rate[i + 1] <= result.fp_rate[i] + fp_band
        assert result.mean_delay[i + 1] >= result.mean_delay[i] - delay_band


def _empirical(fp_rate, mean_delay) -> EmpiricalCurve:
    size = len(fp_rate)
    return EmpiricalCurve(
        eta=np.arange(size, dtype=float),
        fp_rate=np.array(fp_rate, dtype=float),
        fp_stderr=np.zeros(size),
        mean_delay=np.array(mean_delay, dtype=float),
        delay_stderr=np.zeros(size),
        censored_fraction=np.zeros(size),
    )


def test_to_tradeoff_curve_keeps_smallest_threshold_per_delay():
    empirical = _empirical([0.5, 0.3, 0.32, 0.1], [0.2, 0.6, 1.4, np.nan])

    result = to_tradeoff_curve(empirical)

    assert result.delays == (0, 1)
    assert result.fp_rates == (0.5, 0.3)
    assert result.threshold(1) == 1.0


def test_to_tradeoff_curve_restores_monotone_false_positives():
    empirical = _empirical([0.5, 0.2, 0.3], [0.1, 1.2, 2.5])

    result = to_tradeoff_curve(empirical)

    assert result.delays == (0, 1, 3)
    assert result.fp_rates == (0.5, 0.2, 0.2)


def test_to_tradeoff_curve_without_detections_raises_error():
    empirical = _empirical([0.5, 0.2], [np.nan, np.nan])

    with pytest.raises(ConfigurationError):
        _ = to_tradeoff_curve(empirical)
