from abc import ABC, abstractmethod

from src.models.transform import KernelSign, TransformMethod, TransformResult


class ITransformEngine(ABC):
    """Clifford-Fourier 변환 엔진 인터페이스"""

    @property
    @abstractmethod
    def method(self) -> TransformMethod:
        """엔진이 사용하는 변환 경로"""
        pass

    @abstractmethod
    def transform(self, field, sign: KernelSign) -> TransformResult:
        """표본장 변환 (출력 격자 = 입력 격자)"""
        pass

    def __call__(self, field, sign: KernelSign) -> TransformResult:
        return self.transform(field, sign)
