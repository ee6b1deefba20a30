from functools import lru_cache
from typing import List

from decouple import config
from pydantic_settings import BaseSettings


def safe_split(value: str, default):
    try:
        items = [s.strip() for s in value.split(",")] if value else default
        return [s for s in items if s != ""] or default
    except Exception:
        return default


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = config("LOG_LEVEL", default="INFO")
    LOG_FILE: str = config("LOG_FILE", default="logs/clifford.log")

    # 실행 환경
    CLIFFORD_WORKERS: int = config("CLIFFORD_WORKERS", default=1, cast=int)
    OUTPUT_DIR: str = config("OUTPUT_DIR", default="reports")
    METRICS_FILE: str = config("METRICS_FILE", default="")
    SEED: int = config("SEED", default=0, cast=int)

    # 기본 격자 (수용 테스트 기준)
    GRID_M: int = config("GRID_M", default=2, cast=int)
    GRID_R: float = config("GRID_R", default=10.0, cast=float)
    GRID_N: int = config("GRID_N", default=256, cast=int)

    # 구적 오라클 격자
    ORACLE_GRID_R: float = config("ORACLE_GRID_R", default=8.0, cast=float)
    ORACLE_GRID_N: int = config("ORACLE_GRID_N", default=64, cast=int)

    # 변환 엔진
    TRANSFORM_METHOD: str = config("TRANSFORM_METHOD", default="fft")
    KERNEL_SIGN: str = config("KERNEL_SIGN", default="minus")
    QUADRATURE_BLOCK_SIZE: int = config("QUADRATURE_BLOCK_SIZE", default=64, cast=int)
    # 쉼표 구분 목록은 문자열로 보관 (pydantic-settings 의 JSON 해석 회피)
    BENCH_GRID_SIZES: str = config("BENCH_GRID_SIZES", default="64,128,256")

    # 열 핵
    HEAT_FD_REFINEMENT: int = config("HEAT_FD_REFINEMENT", default=4, cast=int)

    # 감쇠 적합 / 불확정성 검증
    DECAY_FIT_FLOOR: float = config("DECAY_FIT_FLOOR", default=1e-12, cast=float)
    DECAY_FIT_MIN_NODES: int = config("DECAY_FIT_MIN_NODES", default=100, cast=int)
    CRITICAL_TOLERANCE: float = config("CRITICAL_TOLERANCE", default=1e-3, cast=float)
    TRUST_REGION_FLOOR: float = config("TRUST_REGION_FLOOR", default=1e-6, cast=float)
    # log⁺ 및 r 거듭제곱 범함수: 상대 잡음 바닥 아래는 적합 모델로 대체
    FUNCTIONAL_NOISE_FLOOR: float = config("FUNCTIONAL_NOISE_FLOOR", default=1e-7, cast=float)
    FUNCTIONAL_ZERO_TOLERANCE: float = config("FUNCTIONAL_ZERO_TOLERANCE", default=1e-6, cast=float)
    SWEEP_RADII: str = config("SWEEP_RADII", default="6,8,10")

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"

    def bench_grid_sizes(self) -> List[int]:
        return [int(n) for n in safe_split(self.BENCH_GRID_SIZES, ["64", "128", "256"])]

    def sweep_radii(self) -> List[float]:
        return [float(r) for r in safe_split(self.SWEEP_RADII, ["6", "8", "10"])]


@lru_cache()
def get_settings() -> Settings:
    return Settings()
