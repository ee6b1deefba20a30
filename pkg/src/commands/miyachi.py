"""miyachi 명령: 아임계 유한성, 임계 가우시안 배수, 초임계 발산, 범함수 단조성"""

import logging
import math
from typing import List, Optional

import numpy as np

from src.commands.context import CommandContext, checked, failed_row
from src.core.errors import CliffordToolkitError, ConfigError
from src.models.common import CheckRow
from src.models.config import RunConfig
from src.models.uncertainty import MiyachiConclusion, MiyachiReport
from src.services.clifford_core import blade
from src.services.grid_transform import FieldFunction, SampledField, sample
from src.services.heat import heat_kernel_values
from src.services.poly_ops import PolyField
from src.services.uncertainty import critical_constant_bound, miyachi_functional, miyachi_verify

logger = logging.getLogger(__name__)

EXACT_FUNCTIONAL_TOLERANCE = 1e-9


def require_subcritical_family(config: RunConfig) -> None:
    """ab < 1/4, b < δ < 1/(4a) 이어야 P N_c(., δ) 가 아임계 증인이 된다"""
    a, b, delta = config.a, config.b, config.delta
    if not a * b < 0.25:
        raise ConfigError(f"subcritical family needs ab < 1/4, got a={a}, b={b}")
    if not b < delta < 1.0 / (4.0 * a):
        raise ConfigError(f"subcritical family needs b < delta < 1/(4a), got b={b}, delta={delta}, a={a}")


def heat_multiple(P: PolyField, s: float) -> FieldFunction:
    """x -> P(x) N_c(x, s)"""

    def evaluate(points: np.ndarray) -> np.ndarray:
        return P.evaluate(points) * heat_kernel_values(2, s, np.sum(points**2, axis=1))[:, None]

    return evaluate


def monogenic_factor() -> PolyField:
    """x1 - e12 x2"""
    return PolyField.variable(2, 1) - PolyField.variable(2, 2).right_multiply(blade(3, 2))


def _report_params(report: MiyachiReport) -> dict:
    return {
        "regime": report.regime.value,
        "conclusion": report.conclusion.value,
        "finite": report.finite_flag,
        "sweep": report.sweep,
        "tail": report.tail,
        **({"reason": report.reason} if report.reason else {}),
    }


def _verify(
    ctx: CommandContext,
    rows: List[CheckRow],
    id: str,
    tolerance: float,
    info: dict,
    f: SampledField,
    a: float,
    b: float,
    lam: float,
) -> Optional[MiyachiReport]:
    try:
        return miyachi_verify(f, a, b, lam, ctx.engine.transform, ctx.sign)
    except CliffordToolkitError as e:
        failed_row(rows, id, tolerance, info, e)
        return None


def _subcritical_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    config = ctx.config
    field = sample(heat_multiple(monogenic_factor(), config.delta), ctx.grid)
    info = dict(ctx.grid.describe(), a=config.a, b=config.b, delta=config.delta, **{"lambda": config.lam})
    report = _verify(ctx, rows, "miyachi.subcritical.hypothesis", 0.0, info, field, config.a, config.b, config.lam)
    if report is None:
        return
    checked(
        rows,
        "miyachi.subcritical.hypothesis",
        0.0,
        dict(info, linf=report.hypothesis_linf, l1=report.hypothesis_l1),
        lambda: (0.0, report.hypothesis_linf or report.hypothesis_l1),
    )

    def stability():
        values = list(report.sweep.values())
        spread = abs(values[-1] - values[0]) / values[-1] if values[-1] > 0 else 0.0
        in_family = report.conclusion is MiyachiConclusion.COUNTEREXAMPLE_FAMILY
        return spread, in_family and report.passed, dict(_report_params(report), integral=report.integral)

    checked(rows, "miyachi.subcritical.stability", 0.01, info, stability)
    ctx.add_plot("miyachi_subcritical", field)


def _critical_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    b, lam = ctx.config.b, ctx.config.lam
    a = 1.0 / (4.0 * b)
    cases = (
        # F(2πλ N_c(., b)) = λ e^{-b||y||^2}, 피적분함수가 정확히 0
        ("critical_zero", 2.0 * math.pi * lam, lam),
        ("critical_unit", 1.0, 1.0),
    )
    for name, scale, level in cases:
        field = sample(lambda pts: scale * heat_kernel_values(2, b, np.sum(pts**2, axis=1)), ctx.grid)
        info = dict(ctx.grid.describe(), a=a, b=b, scale=scale, **{"lambda": level})
        info["bound"] = critical_constant_bound(level)
        report = _verify(ctx, rows, f"miyachi.{name}", 1e-6, info, field, a, b, level)
        if report is None:
            continue
        checked(
            rows,
            f"miyachi.{name}",
            1e-6,
            dict(info, constant_norm=report.constant_norm, **_report_params(report)),
            lambda: (report.integral, report.passed),
        )


def _supercritical_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    b, lam = ctx.config.b, ctx.config.lam
    a = 1.0 / (2.0 * b)
    field = sample(lambda pts: heat_kernel_values(2, b / 2.0, np.sum(pts**2, axis=1)), ctx.grid)
    info = dict(ctx.grid.describe(), a=a, b=b, **{"lambda": lam})
    report = _verify(ctx, rows, "miyachi.supercritical", 2.0, info, field, a, b, lam)
    if report is None:
        return
    ratio = report.divergence_ratio if report.divergence_ratio is not None else math.nan
    # 반폭 스윕에서 2배 이상 자라야 통과
    checked(rows, "miyachi.supercritical", 2.0, dict(info, **_report_params(report)), lambda: (ratio, report.passed))


def _monotone_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    config = ctx.config
    field = sample(heat_multiple(monogenic_factor(), config.delta), ctx.grid)
    image = ctx.engine.transform(field, ctx.sign).field
    info = dict(ctx.grid.describe(), b=config.b, delta=config.delta, **{"lambda": config.lam})

    def increments(values: List[float]) -> float:
        return max(0.0, *(later - earlier for earlier, later in zip(values, values[1:])))

    lams = [config.lam / 2.0, config.lam, 2.0 * config.lam]
    checked(
        rows,
        "miyachi.monotone_lambda",
        0.0,
        dict(info, lambdas=lams),
        lambda: increments([miyachi_functional(image, config.b, lam).total for lam in lams]),
    )
    bs = [config.b / 2.0, config.b, (config.b + config.delta) / 2.0]
    checked(
        rows,
        "miyachi.monotone_b",
        0.0,
        dict(info, bs=bs),
        lambda: increments([-miyachi_functional(image, b, config.lam).total for b in bs]),
    )


def _exact_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    b, lam = ctx.config.b, ctx.config.lam
    g = sample(lambda pts: lam * np.exp(-b * np.sum(pts**2, axis=1)), ctx.grid)
    checked(
        rows,
        "miyachi.functional_exact",
        EXACT_FUNCTIONAL_TOLERANCE,
        dict(ctx.grid.describe(), b=b, **{"lambda": lam}),
        lambda: miyachi_functional(g, b, lam).total,
    )


def miyachi_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    require_subcritical_family(ctx.config)
    rows: List[CheckRow] = []
    _subcritical_rows(ctx, rows)
    _critical_rows(ctx, rows)
    _supercritical_rows(ctx, rows)
    _monotone_rows(ctx, rows)
    _exact_rows(ctx, rows)
    logger.info(f"Miyachi checks: {sum(r.passed for r in rows)}/{len(rows)} passed")
    return rows
