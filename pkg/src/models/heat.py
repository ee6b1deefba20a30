from pydantic import BaseModel, ConfigDict, Field, field_validator


class HeatKernelParams(BaseModel):
    """N_c(x, s) 매개변수"""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=2, description="짝수 차원")
    s: float = Field(..., gt=0.0, description="시간 매개변수")

    @field_validator("m")
    def validate_even(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError("heat kernel dimension must be even")
        return v
