"""corollary 명령: ∫ ||F(f)||^r e^{rb||y||^2} 의 유한/발산 판정을 ab 영역별로 확인"""

import logging
import math
from typing import List

import numpy as np

from src.commands.context import CommandContext, checked
from src.commands.miyachi import heat_multiple, monogenic_factor
from src.models.common import CheckRow
from src.models.uncertainty import CorollaryReport
from src.services.grid_transform import SampledField, sample, zero_field
from src.services.heat import heat_kernel_values
from src.services.uncertainty import corollary_64_check

logger = logging.getLogger(__name__)


def _gaussian_heat(s: float):
    return lambda pts: heat_kernel_values(2, s, np.sum(pts**2, axis=1))


def _row(
    ctx: CommandContext, rows: List[CheckRow], name: str, f: SampledField, a: float, b: float, r: float
) -> None:
    info = dict(ctx.grid.describe(), case=name, a=a, b=b, r=r)

    def evaluate():
        report: CorollaryReport = corollary_64_check(f, a, b, r, ctx.engine.transform, ctx.sign)
        extra = {
            "regime": report.regime.value,
            "expected": report.expected,
            "observed": report.observed,
            "sweep": report.sweep,
        }
        return report.integral, report.passed, extra

    # 판정은 범주형이라 허용 한계는 기록용
    checked(rows, f"corollary.{name}.r{r:g}", 0.0, info, evaluate)


def corollary_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    config = ctx.config
    a, b, r = config.a, config.b, config.r
    rows: List[CheckRow] = []

    subcritical = sample(heat_multiple(monogenic_factor(), config.delta), ctx.grid)
    for exponent in dict.fromkeys((r, math.inf)):
        _row(ctx, rows, "subcritical", subcritical, a, b, exponent)

    critical = sample(_gaussian_heat(b), ctx.grid)
    for exponent in (1.0, math.inf):
        _row(ctx, rows, "critical", critical, 1.0 / (4.0 * b), b, exponent)

    supercritical = sample(_gaussian_heat(b / 2.0), ctx.grid)
    _row(ctx, rows, "supercritical", supercritical, 1.0 / (2.0 * b), b, r)

    _row(ctx, rows, "zero", zero_field(ctx.grid), a, b, r)
    logger.info(f"Corollary checks: {sum(row.passed for row in rows)}/{len(rows)} passed")
    return rows
