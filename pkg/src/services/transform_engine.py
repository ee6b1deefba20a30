import logging
import time
from typing import Optional, Union

from src.core.config import get_settings
from src.core.errors import ConfigError
from src.core.interfaces.i_transform_engine import ITransformEngine
from src.models.transform import KernelSign, TransformMethod, TransformResult
from src.services.cft import transform_fft, transform_quadrature
from src.services.grid_transform import SampledField
from src.utils.metrics import metrics

logger = logging.getLogger(__name__)


class QuadratureEngine(ITransformEngine):
    """직접 중점 구적 (오라클)"""

    def __init__(self, block_size: Optional[int] = None, workers: Optional[int] = None):
        self.block_size = block_size
        self.workers = workers

    @property
    def method(self) -> TransformMethod:
        return TransformMethod.QUADRATURE

    def transform(self, field: SampledField, sign: KernelSign) -> TransformResult:
        return transform_quadrature(field, sign, self.block_size, self.workers)


class FFTEngine(ITransformEngine):
    @property
    def method(self) -> TransformMethod:
        return TransformMethod.FFT

    def transform(self, field: SampledField, sign: KernelSign) -> TransformResult:
        return transform_fft(field, sign)


class TransformEngineWrapper(ITransformEngine):
    """주 엔진 실패 시 대체 엔진(구적)으로 넘어가는 래퍼"""

    def __init__(self, primary: ITransformEngine, fallback: ITransformEngine):
        self.primary = primary
        self.fallback = fallback

    @property
    def method(self) -> TransformMethod:
        return self.primary.method

    def transform(self, field: SampledField, sign: KernelSign) -> TransformResult:
        start = time.perf_counter()
        try:
            result = self.primary.transform(field, sign)
            metrics.observe_transform(self.primary.method.value, time.perf_counter() - start)
            return result
        except Exception as e:
            if self.primary is self.fallback:
                raise
            logger.error(f"{self.primary.method.value} transform failed, fallback to {self.fallback.method.value}: {e}")
            metrics.count_fallback(self.primary.method.value)

        start = time.perf_counter()
        result = self.fallback.transform(field, sign)
        metrics.observe_transform(self.fallback.method.value, time.perf_counter() - start)
        diagnostics = result.residual_meta.model_copy(update={"fallback_used": True})
        return result.model_copy(update={"residual_meta": diagnostics})


def create_transform_engine(
    method: Union[TransformMethod, str, None] = None, workers: Optional[int] = None
) -> TransformEngineWrapper:
    """설정된 경로를 주 엔진으로, 구적을 대체 엔진으로 하는 래퍼 생성"""
    settings = get_settings()
    try:
        method = TransformMethod(method or settings.TRANSFORM_METHOD)
    except ValueError as e:
        raise ConfigError(f"unknown transform method: {method}") from e
    quadrature = QuadratureEngine(workers=workers)
    primary: ITransformEngine = FFTEngine() if method is TransformMethod.FFT else quadrature
    logger.debug(f"Transform engine: primary={method.value}, fallback=quadrature")
    return TransformEngineWrapper(primary=primary, fallback=quadrature)
