from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class KernelSign(str, Enum):
    """K_+ 또는 K_- 선택"""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def e12_factor(self) -> float:
        """K = cos θ + factor * e12 sin θ 의 factor"""
        return 1.0 if self is KernelSign.MINUS else -1.0


class TransformMethod(str, Enum):
    QUADRATURE = "quadrature"
    FFT = "fft"


class TransformDiagnostics(BaseModel):
    method: TransformMethod = Field(..., description="사용된 변환 경로")
    sign: KernelSign = Field(..., description="핵 부호")
    grid: Dict[str, Any] = Field(..., description="입력/출력 격자")
    truncation_radius: float = Field(..., gt=0.0, description="적분 절단 반폭")
    fallback_used: bool = Field(default=False, description="대체 엔진 사용 여부")


class TransformResult(BaseModel):
    """변환 결과 (출력 격자 = 입력 격자)"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: Any = Field(..., description="주파수 격자 위 SampledField")
    method: TransformMethod = Field(..., description="변환 경로")
    residual_meta: TransformDiagnostics = Field(..., description="진단 정보")


class KernelBoundReport(BaseModel):
    m: int = Field(..., description="차원")
    samples: int = Field(..., ge=0, description="표본 쌍 수")
    max_ratio: float = Field(..., ge=0.0, description="max ||K|| / e^{||x|| ||y||}")
    bound_constant: float = Field(..., gt=0.0, description="상수 C")
    growth_constant: float = Field(..., gt=0.0, description="(1+u)^n e^{-u} 의 상한")
    passed: bool = Field(..., description="통과 여부")


class DilationReport(BaseModel):
    c: float = Field(..., gt=0.0, description="확대 인자")
    ratio: float = Field(..., description="적합된 스칼라 비 F(f_c) / F(f)(λ/c)")
    fitted_exponent: Optional[float] = Field(None, description="ratio = c^γ 의 γ")
    error_plus_m: float = Field(..., ge=0.0, description="+m 가설의 상대 오차")
    error_minus_m: float = Field(..., ge=0.0, description="-m 가설의 상대 오차")
    preferred_exponent: str = Field(..., description="오차가 작은 가설")
    symmetry_error: float = Field(..., ge=0.0, description="max ||K(x,cy) - K(cx,y)||")
    passed: bool = Field(..., description="통과 여부")


class GrowthBoundReport(BaseModel):
    a: float = Field(..., gt=0.0, description="가우시안 가중 지수")
    c_emp: float = Field(..., ge=0.0, description="복소 인자 포함 경험 상수")
    c_real: float = Field(..., ge=0.0, description="실수 인자 경험 상수")
    samples: int = Field(..., ge=0, description="평가점 수")
    max_imag_norm: float = Field(..., ge=0.0, description="최대 ||η||")
    passed: bool = Field(..., description="c_emp <= 10 c_real")


class BenchmarkRecord(BaseModel):
    method: TransformMethod = Field(..., description="변환 경로")
    N: int = Field(..., description="축당 격자점 수")
    seconds: float = Field(..., ge=0.0, description="벽시계 시간")
    max_error: float = Field(..., ge=0.0, description="오라클 대비 L∞ 오차")
