from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, root_validator, validator


class ObserverModel(BaseModel):
    """
    Gaussian observer feeding the CUSUM statistic.

    Under normal behaviour z(k) ~ N(normal_mean, noise_std); once an attack
    starts the mean shifts to attack_mean.
    """

    normal_mean: float
    attack_mean: float
    noise_std: float

    class Config:
        frozen = True

    @validator("normal_mean")
    def normal_mean_must_be_valid(cls, v: float) -> float:
        if v < 0:
            return v
        raise ValueError("The observer must drift below zero under normal behaviour")

    @validator("attack_mean")
    def attack_mean_must_be_valid(cls, v: float) -> float:
        if v > 0:
            return v
        raise ValueError("The observer must drift above zero under attack")

    @validator("noise_std")
    def noise_std_must_be_valid(cls, v: float) -> float:
        if v >= 0:
            return v
        raise ValueError("Observer noise must not be negative")


class SimConfig(BaseModel):
    threshold_grid: Tuple[float, ...]
    trials: int
    run_length: int
    rng_seed: int

    class Config:
        frozen = True

    @validator("threshold_grid")
    def grid_must_be_valid(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) == 0:
            raise ValueError("The threshold grid must not be empty")
        if any(eta < 0 for eta in v):
            raise ValueError("Thresholds must be non-negative")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("The threshold grid must be strictly ascending")
        return v

    @validator("trials", "run_length")
    def count_must_be_valid(cls, v: int) -> int:
        if v >= 1:
            return v
        raise ValueError("Trials and run length must be at least 1")

    @root_validator(skip_on_failure=True)
    def seed_must_fit(cls, values):
        if not 0 <= values["rng_seed"] < 2**64:
            raise ValueError("The seed must be an unsigned 64-bit integer")
        return values


@dataclass(frozen=True)
class EmpiricalCurve:
    eta: np.ndarray
    fp_rate: np.ndarray
    fp_stderr: np.ndarray
    mean_delay: np.ndarray
    delay_stderr: np.ndarray
    censored_fraction: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "eta": self.eta,
                "fp_rate": self.fp_rate,
                "fp_stderr": self.fp_stderr,
                "mean_delay": self.mean_delay,
                "delay_stderr": self.delay_stderr,
                "censored_fraction": self.censored_fraction,
            }
        )

    @classmethod
    def from_frame(cls, df: pd.DataFrame) -> "EmpiricalCurve":
        return cls(
            eta=df["eta"].to_numpy(dtype=float),
            fp_rate=df["fp_rate"].to_numpy(dtype=float),
            fp_stderr=df["fp_stderr"].to_numpy(dtype=float),
            mean_delay=df["mean_delay"].to_numpy(dtype=float),
            delay_stderr=df["delay_stderr"].to_numpy(dtype=float),
            censored_fraction=df["censored_fraction"].to_numpy(dtype=float),
        )
