"""transform 명령: 대수 항등식, 핵 성질, 변환 고정점, 역변환/Plancherel, FFT 대 구적, 확대, 성장, 다항식 상"""

import logging
from typing import List

import numpy as np

from src.commands.algebra import algebra_rows
from src.commands.context import CommandContext, checked, failed_row
from src.core.errors import CliffordToolkitError
from src.models.common import CheckRow
from src.models.transform import KernelSign
from src.services.cft import (
    dilation_check,
    growth_bound_check,
    inverse_check,
    kernel_bound_check,
    kernel_norm_deviation,
    kernel_symmetry_error,
    linearity_error,
    plancherel_check,
    transform_fft,
)
from src.services.clifford_core import blade, generator
from src.services.grid_transform import SampledField, sample
from src.services.poly_ops import PolyField, random_poly
from src.services.uncertainty import polynomial_gaussian_image

logger = logging.getLogger(__name__)

KERNEL_SAMPLES = 10_000
CORPUS_SIZE = 20
CORPUS_MAX_DEGREE = 3
DILATION_FACTORS = (2.0, 1.5)
IMAGE_DELTAS = (0.25, 0.5, 1.0)
GROWTH_DIRECTIONS = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]


def _gaussian(points: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * np.sum(points**2, axis=1))


def _gaussian_polynomial(P: PolyField):
    def evaluate(points: np.ndarray) -> np.ndarray:
        return P.evaluate(points) * _gaussian(points)[:, None]

    return evaluate


def _dilation_field(points: np.ndarray) -> np.ndarray:
    """(1 + x1 e1 - x2 e12) e^{-||x||^2/2}"""
    values = np.zeros((points.shape[0], 4))
    values[:, 0] = 1.0
    values[:, 1] = points[:, 0]
    values[:, 3] = -points[:, 1]
    return values * _gaussian(points)[:, None]


def _kernel_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    xs = ctx.rng.normal(scale=2.0, size=(KERNEL_SAMPLES, 2))
    ys = ctx.rng.normal(scale=2.0, size=(KERNEL_SAMPLES, 2))
    cs = ctx.rng.uniform(0.5, 2.0, size=KERNEL_SAMPLES)
    params = {"samples": KERNEL_SAMPLES}
    for sign in KernelSign:
        checked(
            rows,
            f"kernel.norm_unit.{sign.value}",
            1e-14,
            dict(params, sign=sign.value),
            lambda: kernel_norm_deviation(xs, ys, sign),
        )

    def bound():
        report = kernel_bound_check(2, zip(xs, ys))
        return report.max_ratio, report.passed, {"bound_constant": report.bound_constant}

    checked(rows, "kernel.bound_ratio", 1.0, params, bound)
    checked(rows, "kernel.symmetry", 1e-12, params, lambda: kernel_symmetry_error(xs, ys, cs, ctx.sign))


def _fixed_point_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    gaussian = sample(_gaussian, ctx.grid)
    for sign in KernelSign:
        checked(
            rows,
            f"transform.fixed_point.{sign.value}",
            1e-6,
            dict(ctx.grid.describe(), sign=sign.value),
            lambda: (ctx.engine.transform(gaussian, sign).field - gaussian).max_norm(),
        )

    # e12 가 e1 과 반교환하므로 F_-(e1 g) = e1 F_+(g) = e1 g
    e1 = gaussian.left_multiply(generator(1, 2))
    checked(
        rows,
        "transform.e1_gaussian",
        1e-6,
        dict(ctx.grid.describe(), sign=KernelSign.MINUS.value),
        lambda: (ctx.engine.transform(e1, KernelSign.MINUS).field - e1).max_norm(),
    )
    checked(
        rows,
        f"transform.plancherel.gaussian.{ctx.sign.value}",
        1e-6,
        ctx.grid.describe(),
        lambda: abs(plancherel_check(gaussian, ctx.sign, ctx.engine.transform) - 1.0),
    )
    ctx.add_plot("transform_gaussian", gaussian)


def _corpus(ctx: CommandContext) -> List[SampledField]:
    fields = []
    for _ in range(CORPUS_SIZE):
        P = random_poly(2, int(ctx.rng.integers(0, CORPUS_MAX_DEGREE + 1)), ctx.rng)
        fields.append(sample(_gaussian_polynomial(P), ctx.oracle_grid))
    return fields


def _corpus_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    corpus = _corpus(ctx)
    grid = ctx.oracle_grid.describe()
    for i, field in enumerate(corpus):
        params = dict(grid, element=i, sign=ctx.sign.value)
        checked(rows, f"transform.inverse.{i}", 1e-4, params, lambda: inverse_check(field, ctx.sign, ctx.engine.transform))
        checked(
            rows,
            f"transform.plancherel.{i}",
            1e-4,
            params,
            lambda: abs(plancherel_check(field, ctx.sign, ctx.engine.transform) - 1.0),
        )
        checked(
            rows,
            f"transform.fft_vs_quadrature.{i}",
            1e-6,
            params,
            lambda: (transform_fft(field, ctx.sign).field - ctx.oracle.transform(field, ctx.sign).field).max_norm(),
        )

    checked(
        rows,
        "transform.linearity",
        1e-12,
        dict(grid, alpha=1.7),
        lambda: linearity_error(corpus[0], corpus[1], 1.7, ctx.sign, ctx.oracle.transform),
    )


def _dilation_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    for c in DILATION_FACTORS:

        def evaluate():
            report = dilation_check(_dilation_field, ctx.oracle_grid, c, ctx.sign, rng=ctx.rng)
            extra = {
                "fitted_exponent": report.fitted_exponent,
                "preferred": report.preferred_exponent,
                "symmetry_error": report.symmetry_error,
            }
            return min(report.error_plus_m, report.error_minus_m), report.passed, extra

        checked(rows, f"transform.dilation.c{c:g}", 1e-6, dict(ctx.oracle_grid.describe(), c=c), evaluate)


def _growth_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    a = ctx.config.a
    field = sample(lambda pts: np.exp(-a * np.sum(pts**2, axis=1)), ctx.oracle_grid)
    params = dict(ctx.oracle_grid.describe(), a=a)
    try:
        report = growth_bound_check(field, a, GROWTH_DIRECTIONS, ctx.sign)
    except CliffordToolkitError as e:
        failed_row(rows, f"transform.growth.a{a:g}", 10.0, params, e)
        return
    checked(
        rows,
        f"transform.growth.a{a:g}",
        10.0,
        dict(params, c_emp=report.c_emp, samples=report.samples),
        lambda: report.c_emp / report.c_real,
    )
    # e^{-a||x||^2} 의 실수 상수는 정확히 1/(2a)
    checked(
        rows,
        f"transform.growth_real.a{a:g}",
        1e-6,
        dict(params, c_real=report.c_real),
        lambda: abs(report.c_real * 2.0 * a - 1.0),
    )


def _image_polynomials(ctx: CommandContext) -> List[tuple]:
    e12 = blade(3, 2)
    return [
        ("one", PolyField.constant(2, 1.0)),
        ("x1_e12x2", PolyField.variable(2, 1) - PolyField.variable(2, 2).right_multiply(e12)),
        ("radial_square", PolyField.radial_square(2)),
        ("random_deg2", random_poly(2, 2, ctx.rng)),
        ("random_deg3", random_poly(2, 3, ctx.rng)),
    ]


def _image_rows(ctx: CommandContext, rows: List[CheckRow]) -> None:
    for name, P in _image_polynomials(ctx):
        for delta in IMAGE_DELTAS:
            params = dict(ctx.grid.describe(), P=name, delta=delta, deg_p=P.degree)
            try:
                report = polynomial_gaussian_image(P, delta, ctx.grid, ctx.engine.transform, ctx.sign)
            except CliffordToolkitError as e:
                failed_row(rows, f"transform.poly_image.{name}.delta{delta:g}", 1e-5, params, e)
                continue
            checked(
                rows,
                f"transform.poly_image_degree.{name}.delta{delta:g}",
                0.0,
                dict(params, deg_q=report.degree_q),
                lambda: abs(report.degree_q - report.degree_p),
            )
            checked(
                rows,
                f"transform.poly_image.{name}.delta{delta:g}",
                1e-5,
                dict(params, trust_nodes=report.trust_nodes),
                lambda: report.residual,
            )


def transform_rows(ctx: CommandContext) -> List[CheckRow]:
    ctx.require_m2()
    rows = algebra_rows(ctx)
    _kernel_rows(ctx, rows)
    _fixed_point_rows(ctx, rows)
    _corpus_rows(ctx, rows)
    _dilation_rows(ctx, rows)
    _growth_rows(ctx, rows)
    _image_rows(ctx, rows)
    logger.info(f"Transform checks: {sum(r.passed for r in rows)}/{len(rows)} passed")
    return rows
