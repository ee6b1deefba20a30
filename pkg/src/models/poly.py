from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class LaguerreParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int = Field(..., ge=0, description="차수")
    alpha: float = Field(..., gt=-1.0, description="위첨자 α")
