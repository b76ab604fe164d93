from pydantic import BaseModel, validator


class GameConfig(BaseModel):
    """
    Costs of the attacker-defender game over a horizon of T timesteps.

    `fp_cost` is C, charged per unit false-positive rate per timestep;
    `change_cost` is C_d, charged per threshold change.
    """

    fp_cost: float
    change_cost: float = 0.0
    horizon: int

    class Config:
        frozen = True

    @validator("fp_cost", "change_cost")
    def cost_must_be_valid(cls, v: float) -> float:
        if v >= 0:
            return v
        raise ValueError("Costs must be non-negative")

    @validator("horizon")
    def horizon_must_be_valid(cls, v: int) -> int:
        if v >= 1:
            return v
        raise ValueError("Horizon must be at least one timestep")
