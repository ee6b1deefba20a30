from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.grid import GridSpec
from src.models.transform import KernelSign, TransformMethod


class Command(str, Enum):
    TRANSFORM = "transform"
    HEAT = "heat"
    HARDY = "hardy"
    MIYACHI = "miyachi"
    COROLLARY = "corollary"
    VERIFY_ALL = "verify-all"
    BENCH = "bench"


class RunConfig(BaseModel):
    """한 번의 실행 설정 (기본값 = 수용 테스트 매개변수)"""

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    command: Command = Field(..., description="실행할 실험")

    # 격자
    m: int = Field(default=2, ge=1, le=8)
    R: float = Field(default=10.0, gt=0.0)
    N: int = Field(default=256, ge=8)
    bench_sizes: List[int] = Field(default_factory=lambda: [64, 128, 256])

    sign: KernelSign = Field(default=KernelSign.MINUS)
    method: TransformMethod = Field(default=TransformMethod.FFT)

    # 함수족 매개변수
    p: float = Field(default=0.5, gt=0.0)
    a: float = Field(default=0.5, gt=0.0)
    b: float = Field(default=0.25, gt=0.0)
    lam: float = Field(default=0.05, gt=0.0, alias="lambda")
    delta: float = Field(default=0.375, gt=0.0)
    r: float = Field(default=2.0, gt=0.0)
    s: float = Field(default=1.0, gt=0.0)
    t: float = Field(default=1.0, gt=0.0)
    j: int = Field(default=0, ge=0)
    k: int = Field(default=1, ge=0)
    l: int = Field(default=0, ge=0)  # noqa: E741

    output: str = Field(default="reports", min_length=1)
    seed: int = Field(default=0)
    workers: int = Field(default=1, ge=1)
    plotdata: bool = Field(default=False)

    @field_validator("N")
    def validate_even(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError("N must be even")
        return v

    @field_validator("bench_sizes")
    def validate_bench_sizes(cls, v: List[int]) -> List[int]:
        if not v or any(n < 8 or n % 2 for n in v):
            raise ValueError("bench sizes must be even integers >= 8")
        return v

    @property
    def grid(self) -> GridSpec:
        return GridSpec(m=self.m, R=self.R, N=self.N)

    def parameters(self) -> dict:
        """보고서용 매개변수 (출력 경로 등 실행 환경 제외)"""
        return self.model_dump(
            mode="json", by_alias=True, exclude={"output", "workers", "plotdata"}
        )
