import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckRow(BaseModel):
    """보고서 한 행 (검증 항목 하나)"""

    id: str = Field(..., min_length=1, description="검증 항목 식별자")
    params: Dict[str, Any] = Field(default_factory=dict, description="검증 매개변수")
    value: float = Field(..., description="측정값")
    tolerance: float = Field(..., description="허용 한계")
    passed: bool = Field(..., description="통과 여부")
    gating: bool = Field(default=True, description="종료 코드에 반영되는 항목인지 여부")

    @classmethod
    def create(
        cls,
        id: str,
        value: float,
        tolerance: float,
        params: Optional[Dict[str, Any]] = None,
        passed: Optional[bool] = None,
        gating: bool = True,
    ) -> "CheckRow":
        """value <= tolerance 를 기본 통과 조건으로 하는 행 생성"""
        value = float(value)
        if passed is None:
            passed = not math.isnan(value) and value <= tolerance
        return cls(
            id=id,
            params=params or {},
            value=value,
            tolerance=float(tolerance),
            passed=bool(passed),
            gating=gating,
        )


class RunSummary(BaseModel):
    command: str = Field(..., description="실행 명령")
    total: int = Field(..., ge=0, description="검증 항목 수")
    passed: int = Field(..., ge=0, description="통과 항목 수")
    failed: int = Field(..., ge=0, description="실패 항목 수")
    failed_ids: List[str] = Field(default_factory=list, description="실패 항목 식별자")
    informational: int = Field(default=0, ge=0, description="비게이팅 항목 수")
    exit_code: int = Field(..., description="종료 코드")
    seed: int = Field(..., description="난수 시드")
    grid: Dict[str, Any] = Field(default_factory=dict, description="기본 격자")

    @classmethod
    def from_rows(
        cls, command: str, rows: List[CheckRow], seed: int, grid: Dict[str, Any]
    ) -> "RunSummary":
        gating = [r for r in rows if r.gating]
        failed_ids = [r.id for r in gating if not r.passed]
        return cls(
            command=command,
            total=len(rows),
            passed=sum(1 for r in gating if r.passed),
            failed=len(failed_ids),
            failed_ids=failed_ids,
            informational=len(rows) - len(gating),
            exit_code=2 if failed_ids else 0,
            seed=seed,
            grid=grid,
        )
