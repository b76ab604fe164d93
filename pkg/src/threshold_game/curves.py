import math

import numpy as np

from .errors import ConfigurationError
from .models.curve import TradeoffCurve


def fit_curve_exponential(fp0: float, max_delay: int, fp_max: float) -> TradeoffCurve:
    """
    Tabulates FP(delay) = fp0 * exp(-b * delay) on 0..max_delay, with b chosen so
    that the curve passes through (max_delay, fp_max).
    """
    if not 0 < fp_max < fp0 <= 1:
        raise ConfigurationError(
            f"The fit needs 0 < fp_max < fp0 <= 1, got fp0={fp0}, fp_max={fp_max}"
        )
    if max_delay < 1:
        raise ConfigurationError(f"The fit needs max_delay >= 1, got {max_delay}")

    rate = math.log(fp0 / fp_max) / max_delay
    delays = np.arange(max_delay + 1)
    fps = fp0 * np.exp(-rate * delays)
    # Pin the endpoints so they survive exp/log rounding.
    fps[0], fps[-1] = fp0, fp_max
    return TradeoffCurve.from_pairs(
        [(int(delay), float(fp)) for delay, fp in zip(delays, fps)]
    )
