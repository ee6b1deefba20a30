from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DecayFit(BaseModel):
    """||f(x)|| ≈ C e^{-p ||x||^2} 적합 결과"""

    C: float = Field(..., gt=0.0, description="전인자")
    p: float = Field(..., description="가우시안 감쇠율")
    residual: float = Field(..., ge=0.0, description="로그 편차의 최대 상대값")
    nodes: int = Field(..., ge=0, description="적합에 사용된 격자점 수")

    def log_model(self, r_squared: Any) -> Any:
        """log C - p ||x||^2"""
        return np.log(self.C) - self.p * np.asarray(r_squared)


class HardyRegime(str, Enum):
    SUPERCRITICAL = "supercritical"
    CRITICAL = "critical"
    SUBCRITICAL = "subcritical"


class HardyVerdict(BaseModel):
    p: float = Field(..., description="f 의 감쇠율")
    q: float = Field(..., description="F(f) 의 감쇠율")
    product: float = Field(..., description="p*q")
    regime: HardyRegime = Field(..., description="1/4 대비 영역")
    gaussian_residual: Optional[float] = Field(
        None, ge=0.0, description="||f - A e^{-p||x||^2}||_∞ / ||f||_∞ (임계 영역만)"
    )
    amplitude: Optional[List[float]] = Field(None, description="적합된 다중벡터 상수 A")
    grade_content: Optional[Dict[str, float]] = Field(
        None, description="A 의 등급별 노름"
    )
    fit_residual_f: float = Field(..., ge=0.0, description="f 감쇠 적합 잔차")
    fit_residual_transform: float = Field(..., ge=0.0, description="F(f) 감쇠 적합 잔차")


class FunctionalEstimate(BaseModel):
    value: float = Field(..., ge=0.0, description="격자 정육면체 안의 적분값")
    tail: float = Field(..., ge=0.0, description="적합 감쇠로 추정한 바깥 꼬리")
    floor_nodes: int = Field(..., ge=0, description="잡음 바닥 아래에서 모델로 대체된 점 수")
    sweep: Dict[str, float] = Field(default_factory=dict, description="정육면체 반폭별 적분값")

    @property
    def total(self) -> float:
        return self.value + self.tail

    @property
    def finite(self) -> bool:
        return self.tail != float("inf")


class MiyachiConclusion(str, Enum):
    ZERO = "zero"
    GAUSSIAN_MULTIPLE = "gaussian_multiple"
    COUNTEREXAMPLE_FAMILY = "counterexample_family"
    NO_CONCLUSION = "no_conclusion"


class MiyachiReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    a: float = Field(..., gt=0.0)
    b: float = Field(..., gt=0.0)
    lam: float = Field(..., gt=0.0, alias="lambda")
    integral: float = Field(..., ge=0.0, description="절단된 log⁺ 범함수")
    tail: float = Field(..., ge=0.0, description="꼬리 추정")
    finite_flag: bool = Field(..., description="R 스윕에서 안정적인지 여부")
    sweep: Dict[str, float] = Field(default_factory=dict, description="반폭별 범함수값")
    regime: HardyRegime = Field(..., description="ab 대비 1/4")
    conclusion: MiyachiConclusion = Field(..., description="정리의 결론")
    constant: Optional[List[float]] = Field(None, description="임계 영역의 상수 C")
    constant_norm: Optional[float] = Field(None, ge=0.0, description="|C|")
    hypothesis_linf: bool = Field(..., description="e^{a||x||^2} f 의 L∞ 증거")
    hypothesis_l1: bool = Field(..., description="e^{a||x||^2} f 의 L¹ 증거")
    divergence_ratio: Optional[float] = Field(None, description="v(R_max) / v(R_min)")
    reason: Optional[str] = Field(None, description="정리가 아무것도 말하지 않는 경우의 사유")
    passed: bool = Field(..., description="관측이 결론과 일치하는지 여부")


class CorollaryReport(BaseModel):
    a: float = Field(..., gt=0.0)
    b: float = Field(..., gt=0.0)
    r: float = Field(..., gt=0.0, description="지수 (inf 허용)")
    integral: float = Field(..., ge=0.0, description="격자 적분 (r=inf 이면 상한)")
    sweep: Dict[str, float] = Field(default_factory=dict)
    regime: HardyRegime = Field(...)
    expected: str = Field(..., description="zero | divergent | finite | bounded")
    observed: str = Field(..., description="zero | divergent | finite | inconclusive")
    passed: bool = Field(...)


class PolynomialImageReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    degree_p: int = Field(..., ge=0)
    degree_q: int = Field(..., ge=-1)
    degree_match: bool = Field(...)
    residual: float = Field(..., ge=0.0, description="max ||F - Q e^{-||y||^2/4δ}|| / max ||F||")
    delta: float = Field(..., gt=0.0)
    trust_nodes: int = Field(..., ge=0)
    q_coefficients: Dict[str, List[float]] = Field(default_factory=dict)
    q_fit: Optional[Any] = Field(None, exclude=True, description="적합된 PolyField Q")
