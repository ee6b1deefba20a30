from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class GridSpec(BaseModel):
    """중심 정육면체 [-R, R]^m 위의 균일 중점 격자"""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1, le=8, description="공간 차원")
    R: float = Field(..., gt=0.0, description="반폭")
    N: int = Field(..., ge=8, description="축당 격자점 수")

    @field_validator("N")
    def validate_even(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError("N must be even")
        return v

    @property
    def h(self) -> float:
        return 2.0 * self.R / self.N

    @property
    def weight(self) -> float:
        """구적 가중치 h^m"""
        return self.h**self.m

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.m

    @property
    def node_count(self) -> int:
        return self.N**self.m

    def axis_nodes(self) -> np.ndarray:
        return -self.R + (np.arange(self.N) + 0.5) * self.h

    def points(self) -> np.ndarray:
        """행 우선 순서의 격자점, shape (N^m, m)"""
        axes = [self.axis_nodes()] * self.m
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([c.reshape(-1) for c in mesh], axis=1)

    def radii_squared(self) -> np.ndarray:
        """격자 모양 (N,)*m 의 ||x||^2"""
        return np.sum(self.points() ** 2, axis=1).reshape(self.shape)

    def shell_keys(self) -> np.ndarray:
        """정확한 껍질 키 Σ(2i+1-N)^2, ||x||^2 = (h/2)^2 * key"""
        offsets = 2 * np.arange(self.N, dtype=np.int64) + 1 - self.N
        mesh = np.meshgrid(*([offsets] * self.m), indexing="ij")
        return sum(c.astype(np.int64) ** 2 for c in mesh)

    def with_updates(self, **changes: Any) -> "GridSpec":
        data = self.model_dump()
        data.update(changes)
        return GridSpec(**data)

    def describe(self) -> Dict[str, Any]:
        return {"m": self.m, "R": self.R, "N": self.N}
