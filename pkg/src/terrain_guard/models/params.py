"""Generator parameters."""

from enum import StrEnum

from pydantic import BaseModel, Field, model_validator

from ..core.terrain import COORDINATE_BOUND


class EndStyle(StrEnum):
    VERTICAL_BOTH = "vertical"
    HORIZONTAL_BOTH = "horizontal"
    MIXED = "mixed"


class GenParams(BaseModel):
    """Parameters of the seeded random terrain generator."""

    seed: int = Field(0, ge=0, lt=2**64)
    steps: int = Field(4, ge=1, description="Number of horizontal runs")
    max_run: int = Field(5, ge=1, description="Maximum horizontal run length")
    max_jump: int = Field(5, ge=1, description="Maximum wall height")
    ends: EndStyle = EndStyle.VERTICAL_BOTH

    @model_validator(mode="after")
    def _check_bounds(self) -> "GenParams":
        if self.steps * self.max_run > COORDINATE_BOUND:
            raise ValueError("steps * max_run exceeds the coordinate bound")
        if (self.steps + 1) * self.max_jump > COORDINATE_BOUND:
            raise ValueError("(steps + 1) * max_jump exceeds the coordinate bound")
        return self
