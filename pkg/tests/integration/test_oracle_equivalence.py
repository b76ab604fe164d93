import math

import numpy as np
import pytest

from threshold_game import game
from threshold_game.inputs import load_curve_csv, load_damage_csv
from threshold_game.models.config import GameConfig
from threshold_game.models.curve import TradeoffCurve
from threshold_game.models.damage import DamageSeries
from threshold_game.models.schedule import ThresholdSchedule
from threshold_game.models.solutions import DamageCap
from threshold_game.outputs import write_curve_csv, write_damage_csv
from threshold_game.solvers.adaptive import (
    DpMode,
    best_response_adaptive,
    cost_profile,
    damage_search_space,
    minimum_cost_thresholds,
    solve_adaptive,
)
from threshold_game.solvers.fixed import solve_fixed
from threshold_game.solvers.oracle import (
    oracle_adaptive,
    oracle_fixed,
    oracle_min_cost,
)

SEEDS = range(100)


def dyadic_instance(seed: int, max_horizon: int, max_points: int):
    """
    Draws a small game with dyadic damages and costs, so every sum is exact and
    ties are common.
    """
    rng = np.random.default_rng(seed)
    horizon = int(rng.integers(1, max_horizon + 1))
    size = int(rng.integers(1, max_points + 1))
    values = tuple(float(v) for v in rng.integers(0, 17, size=horizon) / 4)
    delays = sorted(int(x) for x in rng.choice(horizon + 4, size=size, replace=False))
    fps = sorted((float(x) for x in rng.integers(0, 9, size=size) / 8), reverse=True)
    d = DamageSeries(values=values)
    c = TradeoffCurve.from_pairs(list(zip(delays, fps)))
    g = GameConfig(
        fp_cost=float(rng.integers(0, 9) / 4),
        change_cost=float(rng.integers(0, 9) / 8),
        horizon=horizon,
    )
    return d, c, g


def real_instance(seed: int, max_horizon: int, max_points: int):
    """
    Draws a small game with arbitrary real damages and costs, whose sums round.
    """
    rng = np.random.default_rng(10_000 + seed)
    horizon = int(rng.integers(1, max_horizon + 1))
    size = int(rng.integers(1, max_points + 1))
    values = tuple(float(v) for v in rng.random(size=horizon) * 4)
    delays = sorted(int(x) for x in rng.choice(horizon + 4, size=size, replace=False))
    fps = sorted((float(x) for x in rng.random(size=size)), reverse=True)
    d = DamageSeries(values=values)
    c = TradeoffCurve.from_pairs(list(zip(delays, fps)))
    g = GameConfig(
        fp_cost=float(rng.random() * 2),
        change_cost=float(rng.random()),
        horizon=horizon,
    )
    return d, c, g


DRAWS = [dyadic_instance, real_instance]


@pytest.mark.parametrize("draw", DRAWS)
@pytest.mark.parametrize("seed", SEEDS)
def test_solve_fixed_matches_oracle(draw, seed):
    d, c, g = draw(seed, max_horizon=8, max_points=4)

    result = solve_fixed(d, c, g)
    expected = oracle_fixed(d, c, g)

    assert result == expected


@pytest.mark.parametrize("draw", DRAWS)
@pytest.mark.parametrize("seed", SEEDS)
def test_solve_adaptive_matches_oracle(draw, seed):
    d, c, g = draw(seed, max_horizon=6, max_points=3)

    result = solve_adaptive(d, c, g)
    expected = oracle_adaptive(d, c, g)

    assert result.defender_loss == expected.defender_loss


@pytest.mark.parametrize("draw", DRAWS)
@pytest.mark.parametrize("seed", SEEDS)
def test_minimum_cost_thresholds_matches_oracle_for_every_cap(draw, seed):
    d, c, g = draw(seed, max_horizon=6, max_points=3)

    for cap in damage_search_space(d):
        result = minimum_cost_thresholds(d, c, g, DamageCap(value=cap))
        expected = oracle_min_cost(d, c, g, DamageCap(value=cap))

        assert result.total_cost == expected.total_cost
        assert result.feasible == expected.feasible
        if result.schedule is not None:
            assert game.schedule_cost(c, g, result.schedule) == result.total_cost
            assert max(game.payoff_trace_adaptive(d, result.schedule)) <= cap


@pytest.mark.parametrize("seed", range(20))
def test_free_threshold_changes_match_oracle(seed):
    d, c, g = dyadic_instance(seed, max_horizon=6, max_points=3)
    free = GameConfig(fp_cost=g.fp_cost, change_cost=0, horizon=g.horizon)

    result = solve_adaptive(d, c, free)
    expected = oracle_adaptive(d, c, free)

    assert result.defender_loss == expected.defender_loss


@pytest.mark.parametrize("seed", SEEDS)
def test_structural_invariants_hold(seed, tmp_path):
    d, c, g = dyadic_instance(seed, max_horizon=6, max_points=3)

    adaptive = solve_adaptive(d, c, g, mode=DpMode.EAGER)
    fixed = solve_fixed(d, c, g)
    constant = ThresholdSchedule.constant(fixed.optimal_delay, d.horizon)
    k_a, _ = best_response_adaptive(d, constant)
    assert adaptive.defender_loss <= game.defender_loss_adaptive(d, c, g, constant, k_a)

    costs = [solution.total_cost for solution in cost_profile(d, c, g)]
    assert costs == sorted(costs, reverse=True)
    assert not math.isinf(costs[-1])

    for k_a in range(1, d.horizon + 1):
        assert game.attacker_payoff_adaptive(d, adaptive.schedule, k_a) >= d.at(k_a)

    write_damage_csv(str(tmp_path / "damage.csv"), d)
    write_curve_csv(str(tmp_path / "curve.csv"), c)
    assert load_damage_csv(str(tmp_path / "damage.csv")) == d
    assert load_curve_csv(str(tmp_path / "curve.csv")) == c
