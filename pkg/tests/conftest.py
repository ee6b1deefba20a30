import os
import tempfile

import numpy as np
import pytest

# 테스트 환경변수 설정 (src 임포트 전)
os.environ.update({
    "LOG_LEVEL": "WARNING",
    "LOG_FILE": "",
    "METRICS_FILE": "",
    "OUTPUT_DIR": tempfile.mkdtemp(prefix="clifford-reports-"),
    "CLIFFORD_WORKERS": "1",
    "SEED": "0",
    "GRID_M": "2",
    "GRID_R": "8",
    "GRID_N": "64",  # 테스트는 작은 격자
    "ORACLE_GRID_R": "8",
    "ORACLE_GRID_N": "64",
    "TRANSFORM_METHOD": "fft",
    "KERNEL_SIGN": "minus",
    "SWEEP_RADII": "6,7,8",
})

from src.models.grid import GridSpec
from src.services.grid_transform import sample


@pytest.fixture(scope="session")
def small_grid():
    """구적 오라클과 같은 크기의 m=2 격자"""
    return GridSpec(m=2, R=8.0, N=64)


@pytest.fixture(scope="session")
def tiny_grid():
    """빠른 구조 검사용 격자"""
    return GridSpec(m=2, R=4.0, N=16)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def gaussian_field(small_grid):
    """e^{-||x||^2/2} (CFT 고정점)"""
    return sample(lambda pts: np.exp(-0.5 * np.sum(pts**2, axis=1)), small_grid)


@pytest.fixture
def output_dir(tmp_path):
    """보고서 출력 디렉터리"""
    return tmp_path / "reports"


# 테스트용 상수
E1 = 1
E2 = 2
E12 = 3
