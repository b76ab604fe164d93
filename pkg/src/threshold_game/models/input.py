from typing import Optional

from pandera import DataFrameModel as SchemaModel, Field
from pandera.typing import Series


class DamageSchema(SchemaModel):
    k: Series[int] = Field(ge=1, unique=True)
    damage: Series[float] = Field(ge=0)

    class Config:
        coerce = True


class DemandSchema(SchemaModel):
    k: Series[int] = Field(ge=1, unique=True)
    demand: Series[float] = Field(ge=0)

    class Config:
        coerce = True


class CurveSchema(SchemaModel):
    delay: Series[int] = Field(ge=0, unique=True)
    fp: Series[float] = Field(ge=0, le=1)
    threshold: Optional[Series[float]] = Field(ge=0, nullable=True)

    class Config:
        coerce = True


class EmpiricalCurveSchema(SchemaModel):
    eta: Series[float] = Field(ge=0)
    fp_rate: Series[float] = Field(ge=0, le=1)
    fp_stderr: Series[float] = Field(ge=0)
    mean_delay: Series[float] = Field(ge=0, nullable=True)
    delay_stderr: Series[float] = Field(ge=0, nullable=True)
    censored_fraction: Series[float] = Field(ge=0, le=1)

    class Config:
        coerce = True
