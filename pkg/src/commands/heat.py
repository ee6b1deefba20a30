"""heat 명령: 열 방정식, 원점 값, 변환 항등식, 척도, 질량, 반군, 양수성, 방사 대칭"""

import logging
import math
from typing import List

from src.commands.context import CommandContext, checked
from src.models.common import CheckRow
from src.models.heat import HeatKernelParams
from src.services.heat import (
    heat_closed_form_residual,
    heat_double_transform_check,
    heat_field,
    heat_inverse_representation_check,
    heat_kernel,
    heat_mass,
    heat_origin_laplacian_error,
    heat_pde_residual,
    heat_positivity,
    heat_radiality,
    heat_scaling_error,
    heat_semigroup_check,
    heat_transform_check,
)

logger = logging.getLogger(__name__)

SCALING_SAMPLES = 1000
MASS_TIMES = (0.25, 1.0, 4.0)
SEMIGROUP_PAIRS = ((0.5, 0.5), (0.25, 0.75))
CONVERGENCE_REFINEMENTS = (4, 8)


def _pde_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    params = HeatKernelParams(m=2, s=ctx.config.s)
    grid = ctx.grid.describe()
    checked(rows, f"heat.pde_residual.s{params.s:g}", 1e-4, dict(grid, s=params.s), lambda: heat_pde_residual(params, ctx.grid))
    checked(
        rows,
        f"heat.closed_forms.s{params.s:g}",
        1e-4,
        dict(grid, s=params.s),
        lambda: heat_closed_form_residual(params, ctx.grid),
    )

    def convergence():
        coarse, fine = (heat_pde_residual(params, ctx.grid, refinement=r) for r in CONVERGENCE_REFINEMENTS)
        ratio = coarse / fine
        # 2차 정확도면 보폭을 반으로 줄일 때 오차가 1/4
        return abs(ratio - 4.0), None, {"ratio": ratio, "coarse": coarse, "fine": fine}

    checked(rows, "heat.pde_convergence", 0.5, dict(grid, s=params.s), convergence)

    origin = HeatKernelParams(m=2, s=0.5)
    checked(
        rows,
        "heat.origin_value",
        1e-14,
        {"m": 2, "s": 0.5},
        lambda: abs(heat_kernel(origin, [0.0, 0.0]).scalar_part() - 1.0 / (2.0 * math.pi)),
    )
    checked(
        rows,
        "heat.origin_laplacian",
        1e-5,
        {"m": 2, "s": params.s, "step": 1e-3},
        lambda: heat_origin_laplacian_error(params, 1e-3),
    )


def _transform_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    transform = ctx.engine.transform
    for s in dict.fromkeys([ctx.config.s, 0.5]):
        params = HeatKernelParams(m=2, s=s)
        info = dict(ctx.grid.describe(), s=s, sign=ctx.sign.value)
        checked(rows, f"heat.transform.s{s:g}", 1e-6, info, lambda: heat_transform_check(params, ctx.grid, transform, ctx.sign))

    params = HeatKernelParams(m=2, s=ctx.config.s)
    info = dict(ctx.grid.describe(), s=params.s)
    checked(
        rows,
        "heat.inverse_representation",
        1e-5,
        info,
        lambda: heat_inverse_representation_check(params, ctx.grid, transform),
    )
    checked(
        rows,
        "heat.double_transform",
        1e-5,
        dict(info, sign=ctx.sign.value),
        lambda: heat_double_transform_check(params, ctx.grid, transform, ctx.sign),
    )


def _scaling_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    for m in (2, 4):
        points = ctx.rng.normal(scale=2.0, size=(SCALING_SAMPLES, m))
        s = ctx.rng.uniform(0.1, 4.0, size=SCALING_SAMPLES)
        lam = ctx.rng.uniform(0.1, 10.0, size=SCALING_SAMPLES)
        checked(
            rows,
            f"heat.scaling.m{m}",
            1e-12,
            {"m": m, "cases": SCALING_SAMPLES},
            lambda: heat_scaling_error(m, points, s, lam),
        )


def _mass_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    for s in MASS_TIMES:
        # 질량을 담도록 반폭을 8 sqrt(s) 까지 넓힌다
        grid = ctx.grid.with_updates(R=max(ctx.grid.R, 8.0 * math.sqrt(s)))
        params = HeatKernelParams(m=2, s=s)
        checked(rows, f"heat.mass.m2.s{s:g}", 1e-6, dict(grid.describe(), s=s), lambda: abs(heat_mass(params, grid) - 1.0))

    params4 = HeatKernelParams(m=4, s=1.0)
    checked(
        rows,
        "heat.mass.m4.s1",
        1e-5,
        {"m": 4, "s": 1.0, "R": ctx.grid.R, "path": "radial"},
        lambda: abs(heat_mass(params4, ctx.grid) - 1.0),
    )


def _semigroup_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    pairs = dict.fromkeys([(ctx.config.s, ctx.config.t), *SEMIGROUP_PAIRS])
    for s, t in pairs:
        checked(
            rows,
            f"heat.semigroup.m2.s{s:g}.t{t:g}",
            1e-5,
            dict(ctx.grid.describe(), s=s, t=t),
            lambda: heat_semigroup_check(s, t, ctx.grid),
        )
    checked(
        rows,
        "heat.semigroup.m4.s0.5.t0.5",
        1e-5,
        {"m": 4, "s": 0.5, "t": 0.5, "path": "radial", "relative": True},
        lambda: heat_semigroup_check(0.5, 0.5, ctx.grid, m=4),
    )


def _shape_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    params = HeatKernelParams(m=2, s=ctx.config.s)
    info = dict(ctx.grid.describe(), s=params.s)
    checked(rows, "heat.positivity", 0.0, info, lambda: _positivity(params, ctx))
    checked(rows, "heat.radiality", 1e-8, info, lambda: heat_radiality(params, ctx.grid))
    ctx.add_plot("heat_kernel", heat_field(params, ctx.grid))


def _positivity(params: HeatKernelParams, ctx: CommandContext) -> tuple:
    """값은 -min N_c (양수이면 음수 값)"""
    minimum, positive = heat_positivity(params, ctx.grid)
    return -minimum, positive, {"minimum": minimum}


def heat_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    rows: List[CheckRow] = []
    _pde_rows(ctx, rows)
    _transform_rows(ctx, rows)
    _scaling_rows(ctx, rows)
    _mass_rows(ctx, rows)
    _semigroup_rows(ctx, rows)
    _shape_rows(ctx, rows)
    logger.info(f"Heat checks: {sum(r.passed for r in rows)}/{len(rows)} passed")
    return rows
