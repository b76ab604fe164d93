import logging
from importlib import resources
from typing import Optional, Type

import pandas as pd
from pandera import DataFrameModel as SchemaModel
from pandera.errors import SchemaError

from .errors import ConfigurationError, ParseError
from .models.curve import TradeoffCurve
from .models.damage import DamageSeries
from .models.input import CurveSchema, DamageSchema, DemandSchema, EmpiricalCurveSchema
from .models.simulation import EmpiricalCurve


logger = logging.getLogger(__name__)

CASE_STUDY_RESOURCE = "demand.csv"


def _failing_row(error: SchemaError) -> Optional[int]:
    """
    Returns the 1-based data row of the first failure case, if pandera knows it.
    """
    cases = getattr(error, "failure_cases", None)
    if not isinstance(cases, pd.DataFrame) or "index" not in cases or cases.empty:
        return None
    index = cases["index"].iloc[0]
    if index is None or pd.isna(index):
        return None
    return int(index) + 1


def _read(path: str) -> pd.DataFrame:
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise ParseError(f"{path}: {e}") from e


def _validate(path: str, df: pd.DataFrame, schema: Type[SchemaModel]) -> pd.DataFrame:
    try:
        return schema.validate(df)
    except SchemaError as e:
        row = _failing_row(e)
        where = f"{path}: row {row}" if row is not None else path
        raise ParseError(f"{where}: {e}") from e


def _check_integral(path: str, df: pd.DataFrame, column: str) -> None:
    values = pd.to_numeric(df[column], errors="coerce")
    broken = df.index[values.isna() | (values % 1 != 0)]
    if len(broken) > 0:
        raise ParseError(
            f"{path}: row {broken[0] + 1}: {column} must be an integer, got "
            f"'{df[column].iloc[broken[0]]}'"
        )


def _check_columns(path: str, df: pd.DataFrame, *columns: str) -> None:
    missing = [column for column in columns if column not in df.columns]
    if missing:
        raise ParseError(f"{path}: missing column(s) {', '.join(missing)}")


def load_damage_csv(path: str, alpha: Optional[float] = None) -> DamageSeries:
    """
    Reads `k,damage` rows, or `k,demand` rows scaled by alpha into damage.

    Rows may come in any order but must cover k = 1..T without gaps.
    """
    df = _read(path)
    if "damage" in df.columns:
        _check_columns(path, df, "k")
        _check_integral(path, df, "k")
        df = _validate(path, df, DamageSchema)
        column = "damage"
    elif "demand" in df.columns:
        if alpha is None or not alpha > 0:
            raise ConfigurationError(
                f"{path}: demand input needs a positive scale alpha, got {alpha}"
            )
        _check_columns(path, df, "k")
        _check_integral(path, df, "k")
        df = _validate(path, df, DemandSchema)
        column = "demand"
    else:
        raise ParseError(f"{path}: expected a header of k,damage or k,demand")

    if df.empty:
        raise ParseError(f"{path}: no rows")

    ordered = df.sort_values("k")
    for expected, (index, k) in enumerate(ordered["k"].items(), start=1):
        if k != expected:
            raise ParseError(f"{path}: row {index + 1}: missing k={expected}")

    values = ordered[column].to_numpy(dtype=float)
    if column == "demand":
        values = alpha * values
    logger.info("Loaded %d timesteps of %s from %s", len(values), column, path)
    return DamageSeries(values=tuple(float(v) for v in values))


def load_curve_csv(path: str) -> TradeoffCurve:
    df = _read(path)
    _check_columns(path, df, "delay", "fp")
    _check_integral(path, df, "delay")
    df = _validate(path, df, CurveSchema).sort_values("delay")

    fps = df["fp"].tolist()
    rows = [index + 1 for index in df.index]
    for i in range(1, len(fps)):
        if fps[i] > fps[i - 1]:
            raise ParseError(
                f"{path}: row {rows[i]}: false-positive rate {fps[i]} increases "
                f"with delay (previous {fps[i - 1]})"
            )

    thresholds = None
    if "threshold" in df.columns:
        thresholds = [None if pd.isna(eta) else float(eta) for eta in df["threshold"]]
    logger.info("Loaded %d curve points from %s", len(df), path)
    return TradeoffCurve.from_pairs(
        [(int(delay), float(fp)) for delay, fp in zip(df["delay"], df["fp"])],
        thresholds=thresholds,
    )


def read_empirical_curve_csv(path: str) -> EmpiricalCurve:
    df = _read(path)
    _check_columns(
        path,
        df,
        "eta",
        "fp_rate",
        "fp_stderr",
        "mean_delay",
        "delay_stderr",
        "censored_fraction",
    )
    return EmpiricalCurve.from_frame(_validate(path, df, EmpiricalCurveSchema))


def load_case_study(alpha: float) -> DamageSeries:
    """
    The bundled, digitised hourly water demand of a single day (T = 24).
    """
    source = resources.files(__package__) / "data" / CASE_STUDY_RESOURCE
    with resources.as_file(source) as path:
        return load_damage_csv(str(path), alpha)
