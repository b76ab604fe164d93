import sys
from typing import Optional, Union

import pandas as pd

from .models.curve import TradeoffCurve
from .models.damage import DamageSeries
from .models.report import SolutionReport
from .models.simulation import EmpiricalCurve
from .utils import sha256_text


Result = Union[SolutionReport, pd.DataFrame]


def damage_frame(d: DamageSeries) -> pd.DataFrame:
    return pd.DataFrame({"k": range(1, d.horizon + 1), "damage": d.values})


def curve_frame(c: TradeoffCurve) -> pd.DataFrame:
    df = pd.DataFrame({"delay": c.delays, "fp": c.fp_rates})
    thresholds = [point.threshold for point in c.points]
    if any(eta is not None for eta in thresholds):
        df["threshold"] = pd.Series(thresholds, dtype=float)
    return df


def digest(df: pd.DataFrame) -> str:
    """
    Content hash of a table, independent of where the table was read from.
    """
    return sha256_text(df.to_csv(index=False))


def _write_frame(df: pd.DataFrame, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(df.to_csv(index=False))
    else:
        df.to_csv(path, index=False)


def write_damage_csv(path: Optional[str], d: DamageSeries) -> None:
    _write_frame(damage_frame(d), path)


def write_curve_csv(path: Optional[str], c: TradeoffCurve) -> None:
    _write_frame(curve_frame(c), path)


def write_empirical_curve_csv(path: Optional[str], e: EmpiricalCurve) -> None:
    _write_frame(e.to_frame(), path)


def write_report(path: Optional[str], report: SolutionReport) -> None:
    text = report.json(indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as output_file:
            output_file.write(text)


def write_result(path: Optional[str], result: Result) -> None:
    if isinstance(result, SolutionReport):
        write_report(path, result)
    else:
        _write_frame(result, path)
