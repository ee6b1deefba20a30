"""Clifford 열 핵 N_c(x, s) = (2π)^{-m/2} (2s)^{-m/2} e^{-||x||^2/4s} 와 항등식 검사"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import dblquad, quad
from scipy.special import gamma as gamma_fn

from src.core.config import get_settings
from src.core.errors import GridResolutionError, UnsupportedDimensionError
from src.models.grid import GridSpec
from src.models.heat import HeatKernelParams
from src.models.transform import KernelSign
from src.services.cft import TransformFn, transform_quadrature
from src.services.clifford_core import Multivector, scalar, vector_coefficients
from src.services.grid_transform import SampledField, lp_norm, radial_convolve, radial_deviation, sample

logger = logging.getLogger(__name__)

FD_TIME_FACTOR = 1e-4


def heat_kernel_values(m: int, s: float, r_squared: np.ndarray) -> np.ndarray:
    """||x||^2 배열에서의 N_c 스칼라 값"""
    return (2.0 * np.pi) ** (-m / 2.0) * (2.0 * s) ** (-m / 2.0) * np.exp(-np.asarray(r_squared) / (4.0 * s))


def heat_kernel(params: HeatKernelParams, x: Sequence[float]) -> Multivector:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != params.m:
        raise UnsupportedDimensionError(f"point dimension {x.shape[-1]} != {params.m}")
    return scalar(float(heat_kernel_values(params.m, params.s, np.sum(x**2))), params.m)


def heat_field(params: HeatKernelParams, grid: GridSpec) -> SampledField:
    if grid.m != params.m:
        raise UnsupportedDimensionError(f"grid dimension {grid.m} != kernel dimension {params.m}")
    return sample(lambda pts: heat_kernel_values(params.m, params.s, np.sum(pts**2, axis=1)), grid)


def heat_laplacian(params: HeatKernelParams, points: np.ndarray) -> np.ndarray:
    """Δ_x N_c = Σ_i ∂_i^2 N_c, ∂_i^2 N_c = N_c (x_i^2/4s^2 - 1/2s)"""
    points = np.atleast_2d(points)
    s = params.s
    values = heat_kernel_values(params.m, s, np.sum(points**2, axis=1))
    second = points**2 / (4.0 * s * s) - 1.0 / (2.0 * s)
    return values * np.sum(second, axis=1)


def heat_dirac(params: HeatKernelParams, points: np.ndarray) -> np.ndarray:
    """∂_x N_c = -x N_c / 2s (벡터 값), shape (M, 2^m)"""
    points = np.atleast_2d(points)
    values = heat_kernel_values(params.m, params.s, np.sum(points**2, axis=1))
    return vector_coefficients(points) * (-values / (2.0 * params.s))[:, None]


def heat_time_derivative(params: HeatKernelParams, points: np.ndarray) -> np.ndarray:
    """∂_s N_c = d/ds[(2π)^{-m/2}(2s)^{-m/2}] e^{-r^2/4s} + (2π)^{-m/2}(2s)^{-m/2} d/ds[e^{-r^2/4s}]"""
    points = np.atleast_2d(points)
    m, s = params.m, params.s
    r2 = np.sum(points**2, axis=1)
    prefactor = (2.0 * np.pi) ** (-m / 2.0) * (2.0 * s) ** (-m / 2.0)
    d_prefactor = -m * (2.0 * np.pi) ** (-m / 2.0) * (2.0 * s) ** (-m / 2.0 - 1.0)
    gaussian = np.exp(-r2 / (4.0 * s))
    return d_prefactor * gaussian + prefactor * gaussian * r2 / (4.0 * s * s)


def _require_resolved(params: HeatKernelParams, grid: GridSpec) -> None:
    limit = math.sqrt(params.s) / 4.0
    if grid.h > limit * (1.0 + 1e-12):
        raise GridResolutionError(
            f"grid step h={grid.h:.4g} does not resolve the kernel width (need h <= sqrt(s)/4 = {limit:.4g})"
        )


def _finite_differences(
    params: HeatKernelParams, grid: GridSpec, refinement: Optional[int]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """격자점에서 (점, N_c, 중심 차분 ∂_s, Δ_x, ∇_x)

    공간 보폭은 h / refinement, 시간 보폭은 s * 1e-4. 스텐실 점의 핵 값은 닫힌 형식으로 계산한다.
    """
    _require_resolved(params, grid)
    refinement = refinement or get_settings().HEAT_FD_REFINEMENT
    step = grid.h / refinement
    tau = params.s * FD_TIME_FACTOR
    m, s = params.m, params.s
    points = grid.points()
    r2 = np.sum(points**2, axis=1)

    center = heat_kernel_values(m, s, r2)
    d_s = (heat_kernel_values(m, s + tau, r2) - heat_kernel_values(m, s - tau, r2)) / (2.0 * tau)
    laplacian = np.zeros_like(center)
    gradient = np.zeros_like(points)
    for i in range(m):
        forward = heat_kernel_values(m, s, r2 + 2.0 * step * points[:, i] + step * step)
        backward = heat_kernel_values(m, s, r2 - 2.0 * step * points[:, i] + step * step)
        laplacian += (forward - 2.0 * center + backward) / (step * step)
        gradient[:, i] = (forward - backward) / (2.0 * step)
    return points, center, d_s, laplacian, gradient


def heat_pde_residual(params: HeatKernelParams, grid: GridSpec, refinement: Optional[int] = None) -> float:
    """max |∂_s N_c - Δ_x N_c| / max |N_c| (중심 차분)"""
    _, center, d_s, laplacian, _ = _finite_differences(params, grid, refinement)
    residual = float(np.max(np.abs(d_s - laplacian)) / np.max(np.abs(center)))
    logger.debug(f"Heat PDE residual m={params.m} s={params.s} h={grid.h:.4g}: {residual:.3e}")
    return residual


def heat_closed_form_residual(
    params: HeatKernelParams, grid: GridSpec, refinement: Optional[int] = None
) -> float:
    """닫힌 형식 ∂_s, Δ_x, ∂_x 와 중심 차분의 최대 편차, 그리고 닫힌 형식 ∂_s - Δ_x (max |N_c| 로 나눔)"""
    points, center, d_s, laplacian, gradient = _finite_differences(params, grid, refinement)
    time_closed = heat_time_derivative(params, points)
    laplacian_closed = heat_laplacian(params, points)
    errors = {
        "time": float(np.max(np.abs(d_s - time_closed))),
        "laplacian": float(np.max(np.abs(laplacian - laplacian_closed))),
        "dirac": float(np.max(np.abs(vector_coefficients(gradient) - heat_dirac(params, points)))),
        "equation": float(np.max(np.abs(time_closed - laplacian_closed))),
    }
    scale = float(np.max(np.abs(center)))
    logger.debug(f"Heat closed-form deviations m={params.m} s={params.s}: {errors}")
    return max(errors.values()) / scale


def heat_origin_laplacian_error(params: HeatKernelParams, step: float) -> float:
    """원점에서 중심 차분 Δ N_c 와 -(m/2s) N_c(0,s) 의 상대 오차"""
    m, s = params.m, params.s
    center = heat_kernel_values(m, s, 0.0)
    neighbour = heat_kernel_values(m, s, step * step)
    fd = m * (2.0 * neighbour - 2.0 * center) / (step * step)
    expected = -(m / (2.0 * s)) * center
    return float(abs(fd - expected) / abs(expected))


def heat_scaling_error(m: int, points: np.ndarray, s: np.ndarray, lam: np.ndarray) -> float:
    """max |N_c(λ^{1/2} x, λ s) - λ^{-m/2} N_c(x, s)| / N_c(x, s), 점마다 (x, s, λ) 한 쌍"""
    r2 = np.sum(np.atleast_2d(points) ** 2, axis=1)
    s = np.asarray(s, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    lhs = heat_kernel_values(m, lam * s, lam * r2)
    rhs = lam ** (-m / 2.0) * heat_kernel_values(m, s, r2)
    return float(np.max(np.abs(lhs - rhs) / rhs))


def heat_transform_check(
    params: HeatKernelParams,
    grid: GridSpec,
    transform: TransformFn = transform_quadrature,
    sign: KernelSign = KernelSign.MINUS,
) -> float:
    """L∞ | F(N_c(., s)) - (2π)^{-1} e^{-s||y||^2} |"""
    if params.m != 2:
        raise UnsupportedDimensionError("the heat-kernel transform identity is checked for m=2")
    image = transform(heat_field(params, grid), sign).field
    expected = sample(lambda pts: np.exp(-params.s * np.sum(pts**2, axis=1)) / (2.0 * np.pi), grid)
    return (image - expected).max_norm()


def heat_inverse_representation_check(
    params: HeatKernelParams,
    grid: GridSpec,
    transform: TransformFn = transform_quadrature,
) -> float:
    """L∞ | F_+((2π)^{-1} e^{-s||.||^2}) - N_c(., s) |"""
    if params.m != 2:
        raise UnsupportedDimensionError("the inverse representation is checked for m=2")
    spectrum = sample(lambda pts: np.exp(-params.s * np.sum(pts**2, axis=1)) / (2.0 * np.pi), grid)
    image = transform(spectrum, KernelSign.PLUS).field
    return (image - heat_field(params, grid)).max_norm()


def heat_double_transform_check(
    params: HeatKernelParams,
    grid: GridSpec,
    transform: TransformFn = transform_quadrature,
    sign: KernelSign = KernelSign.MINUS,
) -> float:
    """L∞ | F(F(N_c)) - N_c |"""
    field = heat_field(params, grid)
    twice = transform(transform(field, sign).field, sign).field
    return (twice - field).max_norm()


def unit_sphere_area(m: int) -> float:
    """R^m 단위구면 넓이 2π^{m/2} / Γ(m/2)"""
    return float(2.0 * np.pi ** (m / 2.0) / gamma_fn(m / 2.0))


def heat_mass(params: HeatKernelParams, grid: GridSpec) -> float:
    """||N_c(., s)||_1, m=2 는 격자 구적, m >= 4 는 1차원 방사 구적"""
    if grid.R < 6.0 * math.sqrt(params.s) * (1.0 - 1e-12):
        raise GridResolutionError(
            f"grid half-width R={grid.R} does not capture the mass (need R >= 6 sqrt(s))"
        )
    if params.m <= 2 and grid.m == params.m:
        return lp_norm(heat_field(params, grid), 1)
    surface = unit_sphere_area(params.m)
    value, _ = quad(
        lambda r: surface * r ** (params.m - 1) * heat_kernel_values(params.m, params.s, r * r),
        0.0,
        grid.R,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=200,
    )
    return float(value)


def radial_convolution_oracle(
    m: int, s: float, t: float, radii: Sequence[float], r_max: float
) -> np.ndarray:
    """방사 핵의 고전 합성곱 (N_c(., t) * N_c(., s))(r), (반경, 극각) 2차원 구적

    dy = |S^{m-2}| ρ^{m-1} sin^{m-2} φ dφ dρ
    """
    if m < 2:
        raise UnsupportedDimensionError(f"radial convolution needs m >= 2, got {m}")
    sphere = unit_sphere_area(m - 1) if m > 2 else 2.0
    out = []
    for r in radii:

        def integrand(phi: float, rho: float, r: float = r) -> float:
            dist2 = r * r + rho * rho - 2.0 * r * rho * math.cos(phi)
            return float(
                heat_kernel_values(m, t, max(dist2, 0.0))
                * heat_kernel_values(m, s, rho * rho)
                * rho ** (m - 1)
                * math.sin(phi) ** (m - 2)
            )

        value, _ = dblquad(integrand, 0.0, r_max, 0.0, math.pi, epsabs=1e-14, epsrel=1e-10)
        out.append(sphere * value)
    return np.array(out)


def heat_semigroup_check(
    s: float,
    t: float,
    grid: GridSpec,
    m: Optional[int] = None,
    radii: Sequence[float] = (0.0, 0.5, 1.0, 2.0, 3.0),
) -> float:
    """| N_c(., t) *_Cl N_c(., s) - (2π)^{-m/2} N_c(., s+t) |

    m == grid.m 이면 격자 합성곱의 L∞ 오차, 그보다 큰 차원은 몇 반경에서 방사 구적과 비교한 상대 오차.
    """
    m = m or grid.m
    left = HeatKernelParams(m=m, s=t)
    right = HeatKernelParams(m=m, s=s)
    factor = (2.0 * np.pi) ** (-m / 2.0)
    if m == grid.m:
        convolved = radial_convolve(heat_field(left, grid), heat_field(right, grid), normalized=True)
        expected = heat_field(HeatKernelParams(m=m, s=s + t), grid) * factor
        return (convolved - expected).max_norm()
    values = factor * radial_convolution_oracle(m, s, t, radii, grid.R)
    expected = factor * heat_kernel_values(m, s + t, np.asarray(radii) ** 2)
    return float(np.max(np.abs(values - expected)) / np.max(expected))


def heat_radiality(params: HeatKernelParams, grid: GridSpec) -> float:
    return radial_deviation(heat_field(params, grid))


def heat_positivity(params: HeatKernelParams, grid: GridSpec) -> Tuple[float, bool]:
    """(최소값, 모든 격자점에서 양수인지)"""
    values = heat_field(params, grid).component(0)
    minimum = float(np.min(values))
    return minimum, minimum > 0.0
