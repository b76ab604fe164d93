import numpy as np
import pytest

from threshold_game import game
from threshold_game.errors import ContractViolation
from threshold_game.models.config import GameConfig
from threshold_game.models.curve import TradeoffCurve
from threshold_game.models.damage import DamageSeries
from threshold_game.models.schedule import ThresholdSchedule


def _schedule(*delays: int) -> ThresholdSchedule:
    return ThresholdSchedule(delays=delays)


@pytest.mark.parametrize("k_a,k_e,expected", [(1, 3, 6), (2, 2, 2), (2, 3, 5)])
def test_total_damage_sums_interval(toy_damage, k_a, k_e, expected):
    result = game.total_damage(toy_damage, k_a, k_e)

    assert result == expected


@pytest.mark.parametrize("k_a,k_e", [(0, 1), (2, 1), (1, 4), (4, 4)])
def test_total_damage_outside_horizon_raises_error(toy_damage, k_a, k_e):
    with pytest.raises(ContractViolation):
        _ = game.total_damage(toy_damage, k_a, k_e)


def test_total_damage_is_additive():
    rng = np.random.default_rng(7)
    d = DamageSeries(values=tuple(rng.integers(0, 16, size=10) / 4))

    for a in range(1, 11):
        for b in range(a, 10):
            for c in range(b + 1, 11):
                split = game.total_damage(d, a, b) + game.total_damage(d, b + 1, c)
                assert game.total_damage(d, a, c) == split


def test_interval_sums_matches_total_damage(toy_damage):
    table = game.interval_sums(toy_damage)

    for k_a in range(1, 4):
        for k_e in range(k_a, 4):
            assert table[k_a, k_e] == game.total_damage(toy_damage, k_a, k_e)


@pytest.mark.parametrize(
    "delays,k_a,detected,time,accrual_end",
    [
        ((0, 0, 0), 2, True, 2, 2),
        ((1, 1, 1), 1, True, 2, 2),
        ((1, 1, 1), 3, False, None, 3),
    ],
)
def test_detection_time_finds_first_alarm(delays, k_a, detected, time, accrual_end):
    result = game.detection_time(_schedule(*delays), k_a)

    assert result.detected == detected
    assert result.time == time
    assert result.accrual_end == accrual_end


def test_detection_outcome_reports_delay():
    result = game.detection_time(_schedule(2, 2, 2, 2), 1)

    assert result.delay == 2


@pytest.mark.parametrize("k_a", [0, 4])
def test_detection_time_outside_horizon_raises_error(k_a):
    with pytest.raises(ContractViolation):
        _ = game.detection_time(_schedule(1, 1, 1), k_a)


@pytest.mark.parametrize(
    "delays,k_a,expected",
    [((1, 0, 1), 1, 3), ((1, 0, 1), 3, 3), ((0, 0, 0), 3, 3)],
)
def test_attacker_payoff_adaptive_sums_until_detection(
    toy_damage, delays, k_a, expected
):
    result = game.attacker_payoff_adaptive(toy_damage, _schedule(*delays), k_a)

    assert result == expected


def test_attacker_payoff_adaptive_with_wrong_horizon_raises_error(toy_damage):
    with pytest.raises(ContractViolation):
        _ = game.attacker_payoff_adaptive(toy_damage, _schedule(0, 0), 1)


@pytest.mark.parametrize(
    "delays,k_a,expected", [((1, 0, 1), 3, 3.9), ((0, 0, 0), 3, 4.5)]
)
def test_defender_loss_adaptive_adds_costs_and_payoff(
    toy_damage, toy_curve, toy_config, delays, k_a, expected
):
    result = game.defender_loss_adaptive(
        toy_damage, toy_curve, toy_config, _schedule(*delays), k_a
    )

    assert result == pytest.approx(expected)


def test_defender_loss_adaptive_without_costs_or_damage_is_zero():
    d = DamageSeries(values=(0.0, 0.0))
    c = TradeoffCurve.from_pairs([(0, 0.7)])
    g = GameConfig(fp_cost=0, change_cost=0, horizon=2)

    result = game.defender_loss_adaptive(d, c, g, _schedule(0, 0), 2)

    assert result == 0


def test_defender_loss_adaptive_off_curve_raises_error(
    toy_damage, toy_curve, toy_config
):
    with pytest.raises(ContractViolation):
        _ = game.defender_loss_adaptive(
            toy_damage, toy_curve, toy_config, _schedule(1, 2, 1), 1
        )


@pytest.mark.parametrize("delay,k_a,expected", [(0, 3, 3), (1, 2, 5), (1, 3, 3)])
def test_attacker_payoff_fixed_clamps_at_horizon(toy_damage, delay, k_a, expected):
    result = game.attacker_payoff_fixed(toy_damage, delay, k_a)

    assert result == expected


@pytest.mark.parametrize("delay,k_a,expected", [(0, 3, 4.5), (1, 2, 5.3)])
def test_defender_loss_fixed_charges_whole_horizon(
    toy_damage, toy_curve, toy_config, delay, k_a, expected
):
    result = game.defender_loss_fixed(toy_damage, toy_curve, toy_config, delay, k_a)

    assert result == pytest.approx(expected)


def test_defender_loss_fixed_off_curve_raises_error(
    toy_damage, toy_curve, toy_config
):
    with pytest.raises(ContractViolation):
        _ = game.defender_loss_fixed(toy_damage, toy_curve, toy_config, 2, 1)


@pytest.mark.parametrize(
    "delays,expected",
    [
        ((5, 5, 5), 0),
        ((1, 0, 1), 2),
        ((23,) * 11 + (1,) * 4 + (3,) * 9, 2),
        ((4,), 0),
    ],
)
def test_change_count_counts_boundaries(delays, expected):
    result = game.change_count(_schedule(*delays))

    assert result == expected


def test_change_points_lists_last_timestep_before_each_change():
    result = game.change_points(_schedule(23, 23, 1, 1, 3))

    assert result == [2, 4]


def test_schedule_cost_adds_changes_and_false_alarms(toy_curve, toy_config):
    result = game.schedule_cost(toy_curve, toy_config, _schedule(1, 0, 1))

    assert result == pytest.approx(0.9)


def test_payoff_is_at_least_damage_at_start():
    rng = np.random.default_rng(11)
    d = DamageSeries(values=tuple(rng.integers(0, 9, size=6) / 2))

    for _ in range(50):
        s = ThresholdSchedule(delays=tuple(int(x) for x in rng.integers(0, 7, size=6)))
        for k_a in range(1, 7):
            assert game.attacker_payoff_adaptive(d, s, k_a) >= d.at(k_a)


def test_lowering_a_delay_never_delays_detection():
    rng = np.random.default_rng(3)

    for _ in range(50):
        delays = [int(x) for x in rng.integers(0, 6, size=8)]
        k = int(rng.integers(0, 8))
        lowered = list(delays)
        lowered[k] = int(rng.integers(0, delays[k] + 1))
        for k_a in range(1, 9):
            before = game.detection_time(_schedule(*delays), k_a).accrual_end
            after = game.detection_time(_schedule(*lowered), k_a).accrual_end
            assert after <= before


def test_constant_schedule_matches_fixed_payoff_when_detected():
    d = DamageSeries(values=(1.0, 4.0, 2.0, 0.5, 3.0, 2.5))

    for delay in range(6):
        s = ThresholdSchedule.constant(delay, 6)
        for k_a in range(1, 7 - delay):
            assert game.attacker_payoff_adaptive(d, s, k_a) == (
                game.attacker_payoff_fixed(d, delay, k_a)
            )


def test_payoff_traces_cover_every_start(toy_damage):
    fixed = game.payoff_trace_fixed(toy_damage, 1)
    adaptive = game.payoff_trace_adaptive(toy_damage, _schedule(1, 0, 1))

    assert fixed == [3, 5, 3]
    assert adaptive == [3, 2, 3]


def test_thresholds_for_maps_delays_to_thresholds():
    c = TradeoffCurve.from_pairs([(0, 0.5), (2, 0.1)], thresholds=[0.0, 4.0])

    result = game.thresholds_for(c, _schedule(2, 0, 2))

    assert result == [4.0, 0.0, 4.0]


def test_constant_schedule_loss_matches_fixed_loss():
    d = DamageSeries(values=(1.0, 2.0, 0.5, 4.0))
    c = TradeoffCurve.from_pairs([(0, 0.5), (1, 0.25), (2, 0.125)])
    g = GameConfig(fp_cost=2.0, change_cost=1.0, horizon=4)

    for delay in c.delays:
        s = ThresholdSchedule.constant(delay, 4)
        for k_a in range(1, 5 - delay):
            assert game.defender_loss_adaptive(d, c, g, s, k_a) == (
                game.defender_loss_fixed(d, c, g, delay, k_a)
            )
