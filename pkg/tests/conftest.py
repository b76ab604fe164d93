import pytest

from threshold_game.models.config import GameConfig
from threshold_game.models.curve import TradeoffCurve
from threshold_game.models.damage import DamageSeries


@pytest.fixture
def toy_damage() -> DamageSeries:
    return DamageSeries(values=(1.0, 2.0, 3.0))


@pytest.fixture
def toy_curve() -> TradeoffCurve:
    return TradeoffCurve.from_pairs([(0, 0.5), (1, 0.1)])


@pytest.fixture
def toy_config() -> GameConfig:
    return GameConfig(fp_cost=1.0, change_cost=0.1, horizon=3)
