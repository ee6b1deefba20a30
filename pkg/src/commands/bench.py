"""bench 명령: 격자 크기별 FFT 경로와 구적 경로의 시간, 속도 향상, 일치도"""

import logging
import math
import time
from typing import List

import numpy as np

from src.commands.context import CommandContext, checked
from src.models.common import CheckRow
from src.models.grid import GridSpec
from src.models.transform import BenchmarkRecord, TransformMethod
from src.services.cft import transform_fft
from src.services.grid_transform import sample

logger = logging.getLogger(__name__)

TARGET_SPEEDUP = 20.0
AGREEMENT_TOLERANCE = 1e-6


def _mixed_grade_field(points: np.ndarray) -> np.ndarray:
    """(1 + x1 e1 + x2 e12) e^{-||x||^2/2}"""
    values = np.zeros((points.shape[0], 4))
    values[:, 0] = 1.0
    values[:, 1] = points[:, 0]
    values[:, 3] = points[:, 1]
    return values * np.exp(-0.5 * np.sum(points**2, axis=1))[:, None]


def bench_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    rows: List[CheckRow] = []
    for N in ctx.config.bench_sizes:
        grid = GridSpec(m=2, R=ctx.grid.R, N=N)
        field = sample(_mixed_grade_field, grid)
        info = dict(grid.describe(), sign=ctx.sign.value, workers=ctx.config.workers)

        start = time.perf_counter()
        fast = transform_fft(field, ctx.sign).field
        fft_seconds = time.perf_counter() - start

        start = time.perf_counter()
        slow = ctx.oracle.transform(field, ctx.sign).field
        quadrature_seconds = time.perf_counter() - start

        error = (fast - slow).max_norm()
        speedup = quadrature_seconds / fft_seconds if fft_seconds > 0 else math.inf
        logger.info(
            f"Bench N={N}: fft={fft_seconds:.4f}s, quadrature={quadrature_seconds:.4f}s, "
            f"speedup={speedup:.1f}x, max error={error:.3e}"
        )
        ctx.bench_records.append(
            BenchmarkRecord(method=TransformMethod.FFT, N=N, seconds=fft_seconds, max_error=error)
        )
        ctx.bench_records.append(
            BenchmarkRecord(method=TransformMethod.QUADRATURE, N=N, seconds=quadrature_seconds, max_error=0.0)
        )

        # 시간 항목은 기록용 (종료 코드에 반영하지 않음)
        checked(rows, f"bench.fft_seconds.N{N}", math.inf, info, lambda: fft_seconds, gating=False)
        checked(rows, f"bench.quadrature_seconds.N{N}", math.inf, info, lambda: quadrature_seconds, gating=False)
        checked(
            rows,
            f"bench.speedup.N{N}",
            TARGET_SPEEDUP,
            info,
            lambda: (speedup, speedup >= TARGET_SPEEDUP),
            gating=False,
        )
        checked(rows, f"bench.agreement.N{N}", AGREEMENT_TOLERANCE, info, lambda: error)
    return rows
