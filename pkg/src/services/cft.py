"""Clifford-Fourier 변환 (m=2 닫힌 형식 핵), 구적/FFT 경로, 역변환·Plancherel·확대·성장 검사

F_±(f)(y) = (2π)^{-m/2} ∫ K_±(x, y) ⊗ f(x) dx,  m=2 에서 K_∓ = cos θ ± e12 sin θ, θ = x1 y2 - x2 y1.
핵은 f 에 왼쪽에서 곱한다.
"""

import logging
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.signal import czt

from src.core.config import get_settings
from src.core.errors import (
    HypothesisError,
    InvalidParameterError,
    UnsupportedDimensionError,
    ZeroFieldError,
)
from src.models.grid import GridSpec
from src.models.transform import (
    DilationReport,
    GrowthBoundReport,
    KernelBoundReport,
    KernelSign,
    TransformDiagnostics,
    TransformMethod,
    TransformResult,
)
from src.services.clifford_core import (
    ComplexMultivector,
    Multivector,
    blade,
    coefficient_norms,
    left_multiplication_matrix,
)
from src.services.grid_transform import FieldFunction, SampledField, lp_norm, sample
from src.utils.workers import block_ranges, map_blocks

logger = logging.getLogger(__name__)

E12 = 3
TransformFn = Callable[[SampledField, KernelSign], TransformResult]


@lru_cache(maxsize=1)
def _e12_left() -> np.ndarray:
    return left_multiplication_matrix(blade(E12, 2))


def _require_m2(m: int) -> None:
    if m != 2:
        raise UnsupportedDimensionError(
            f"the closed-form Clifford-Fourier kernel is implemented for m=2 only, got m={m}"
        )


def _combine(cos_part: np.ndarray, sin_part: np.ndarray, sign: KernelSign) -> np.ndarray:
    """(2π)^{-1} (C ± e12 ⊗ S)"""
    return (cos_part + sign.e12_factor * sin_part @ _e12_left().T) / (2.0 * np.pi)


def kernel_m2_array(x: np.ndarray, y: np.ndarray, sign: KernelSign) -> np.ndarray:
    """점 배열 x, y (M, 2) 에서 K(x, y) 계수 (M, 4), 복소 점이면 복소 계수"""
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    theta = x[:, 0] * y[:, 1] - x[:, 1] * y[:, 0]
    out = np.zeros(theta.shape + (4,), dtype=np.result_type(theta, np.float64))
    out[:, 0] = np.cos(theta)
    out[:, E12] = KernelSign(sign).e12_factor * np.sin(theta)
    return out


def kernel_m2(
    x: Sequence[complex], y: Sequence[complex], sign: KernelSign
) -> Union[Multivector, ComplexMultivector]:
    """K_-(x, y) = cos θ + e12 sin θ, K_+ 는 θ -> -θ"""
    values = kernel_m2_array(np.array([x]), np.array([y]), sign)[0]
    if np.iscomplexobj(values):
        return ComplexMultivector.from_array(2, values)
    return Multivector(2, values)


def kernel_growth_constant(n: float) -> float:
    """u >= 0 에서 (1+u)^n e^{-u} 의 최대값 n^n / e^{n-1} (n <= 1 이면 1)"""
    if n <= 1:
        return 1.0
    return float(n**n / np.exp(n - 1))


def kernel_bound_check(m: int, samples: Iterable[Tuple[Sequence[float], Sequence[float]]]) -> KernelBoundReport:
    """max ||K(x,y)|| / e^{||x|| ||y||} <= C (m=2 에서 C = 1)"""
    _require_m2(m)
    pairs = list(samples)
    xs = np.array([p[0] for p in pairs], dtype=np.float64).reshape(-1, 2)
    ys = np.array([p[1] for p in pairs], dtype=np.float64).reshape(-1, 2)
    norms = np.linalg.norm(kernel_m2_array(xs, ys, KernelSign.MINUS), axis=1)
    ratios = norms * np.exp(-np.linalg.norm(xs, axis=1) * np.linalg.norm(ys, axis=1))
    max_ratio = float(np.max(ratios)) if len(pairs) else 0.0
    bound = 1.0
    return KernelBoundReport(
        m=m,
        samples=len(pairs),
        max_ratio=max_ratio,
        bound_constant=bound,
        growth_constant=kernel_growth_constant((m - 2) / 2.0),
        passed=max_ratio <= bound,
    )


def kernel_norm_deviation(xs: np.ndarray, ys: np.ndarray, sign: KernelSign = KernelSign.MINUS) -> float:
    """max | ||K(x,y)|| - 1 |"""
    norms = np.linalg.norm(kernel_m2_array(xs, ys, sign), axis=1)
    return float(np.max(np.abs(norms - 1.0)))


def kernel_symmetry_error(xs: np.ndarray, ys: np.ndarray, cs: np.ndarray, sign: KernelSign) -> float:
    """max ||K(x, cy) - K(cx, y)||"""
    cs = np.asarray(cs)[:, None]
    diff = kernel_m2_array(xs, cs * ys, sign) - kernel_m2_array(cs * xs, ys, sign)
    return float(np.max(np.linalg.norm(diff, axis=1)))


def transform_at(
    field: SampledField,
    points: np.ndarray,
    sign: KernelSign,
    block_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """임의의 실수/복소 점 (P, 2) 에서 F(f) 를 중점 구적으로 평가, (P, 4)"""
    _require_m2(field.m)
    settings = get_settings()
    block_size = block_size or settings.QUADRATURE_BLOCK_SIZE
    sign = KernelSign(sign)
    points = np.atleast_2d(points)
    nodes = field.grid.points()
    values = field.flat_values()

    def evaluate(rows: range) -> Tuple[np.ndarray, np.ndarray]:
        y = points[rows.start : rows.stop]
        theta = np.outer(y[:, 1], nodes[:, 0]) - np.outer(y[:, 0], nodes[:, 1])
        return np.cos(theta) @ values, np.sin(theta) @ values

    blocks = block_ranges(points.shape[0], block_size)
    parts = map_blocks(evaluate, blocks, workers)
    cos_part = np.concatenate([c for c, _ in parts], axis=0)
    sin_part = np.concatenate([s for _, s in parts], axis=0)
    return _combine(cos_part, sin_part, sign) * field.grid.weight


def _diagnostics(field: SampledField, method: TransformMethod, sign: KernelSign) -> TransformDiagnostics:
    return TransformDiagnostics(
        method=method,
        sign=sign,
        grid=field.grid.describe(),
        truncation_radius=field.grid.R,
    )


def transform_quadrature(
    field: SampledField,
    sign: KernelSign,
    block_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> TransformResult:
    """출력 격자점마다 Σ K(x, y) ⊗ f(x) h^2 / 2π"""
    _require_m2(field.m)
    sign = KernelSign(sign)
    values = transform_at(field, field.grid.points(), sign, block_size, workers)
    logger.debug(f"Quadrature transform on grid {field.grid.describe()} ({sign.value})")
    return TransformResult(
        field=SampledField(field.grid, values),
        method=TransformMethod.QUADRATURE,
        residual_meta=_diagnostics(field, TransformMethod.QUADRATURE, sign),
    )


def transform_fft(field: SampledField, sign: KernelSign) -> TransformResult:
    """성분별 고전 2차원 푸리에 변환을 회전 주파수 ỹ = (y2, -y1) 에서 평가

    chirp-z 변환으로 격자 자신의 주파수 점에서 정확히 계산하므로 보간이 없다.
    ỹ 는 정사각 격자를 자기 자신으로 보내는 색인 순열이다.
    """
    _require_m2(field.m)
    sign = KernelSign(sign)
    grid = field.grid
    h = grid.h
    nodes = grid.axis_nodes()
    x0 = float(nodes[0])
    w = np.exp(-1j * h * h)
    a = np.exp(1j * h * x0)
    phase = np.exp(-1j * x0 * nodes)

    spectrum = field.values.astype(np.complex128)
    for axis in (0, 1):
        spectrum = czt(spectrum, m=grid.N, w=w, a=a, axis=axis)
        shape = [1, 1, 1]
        shape[axis] = grid.N
        spectrum = spectrum * phase.reshape(shape)
    spectrum *= grid.weight

    # out[i, j] = FT[j, N-1-i]
    rotated = np.swapaxes(spectrum[:, ::-1, :], 0, 1)
    values = _combine(rotated.real, -rotated.imag, sign)
    logger.debug(f"FFT transform on grid {grid.describe()} ({sign.value})")
    return TransformResult(
        field=SampledField(grid, values),
        method=TransformMethod.FFT,
        residual_meta=_diagnostics(field, TransformMethod.FFT, sign),
    )


def inverse_check(field: SampledField, sign: KernelSign, transform: TransformFn = transform_quadrature) -> float:
    """||F(F(f)) - f||_2 / ||f||_2"""
    _require_m2(field.m)
    norm = lp_norm(field, 2)
    if norm == 0.0:
        return 0.0
    twice = transform(transform(field, sign).field, sign).field
    return lp_norm(twice - field, 2) / norm


def plancherel_check(field: SampledField, sign: KernelSign, transform: TransformFn = transform_quadrature) -> float:
    """||F(f)||_2 / ||f||_2"""
    _require_m2(field.m)
    norm = lp_norm(field, 2)
    if norm == 0.0:
        raise ZeroFieldError("Plancherel ratio is undefined for the zero field")
    return lp_norm(transform(field, sign).field, 2) / norm


def linearity_error(
    f: SampledField,
    g: SampledField,
    alpha: float,
    sign: KernelSign,
    transform: TransformFn = transform_quadrature,
) -> float:
    """||F(αf + g) - αF(f) - F(g)||_∞ / max(|α| ||F(f)||_∞, ||F(g)||_∞)"""
    combined = transform(f * alpha + g, sign).field
    ff = transform(f, sign).field
    fg = transform(g, sign).field
    scale = max(abs(alpha) * ff.max_norm(), fg.max_norm())
    if scale == 0.0:
        return 0.0
    return (combined - ff * alpha - fg).max_norm() / scale


def dilation_check(
    f: FieldFunction,
    grid: GridSpec,
    c: float,
    sign: KernelSign,
    rng: Optional[np.random.Generator] = None,
    symmetry_samples: int = 1000,
    tolerance: float = 1e-6,
) -> DilationReport:
    """F(f_c)(λ) 와 F(f)(λ/c) 의 비를 c^γ 로 적합, 핵 대칭 K(x,cy) = K(cx,y) 도 확인

    f_c(x) = f(cx) 는 새로 표본화해야 하므로 f 는 점 함수로 받는다.
    """
    _require_m2(grid.m)
    if not 0.5 <= c <= 2.0:
        raise InvalidParameterError(f"dilation factor must lie in [1/2, 2], got {c}")
    sign = KernelSign(sign)
    rng = rng or np.random.default_rng(get_settings().SEED)

    field = sample(f, grid)
    dilated = sample(lambda pts: f(c * pts), grid)
    lhs = transform_quadrature(dilated, sign).field.flat_values()
    rhs = transform_at(field, grid.points() / c, sign)

    denominator = float(np.sum(rhs * rhs))
    ratio = float(np.sum(lhs * rhs) / denominator) if denominator > 0 else 0.0
    scale = float(np.max(np.abs(lhs))) or 1.0
    error_plus = float(np.max(np.abs(lhs - c**grid.m * rhs)) / scale)
    error_minus = float(np.max(np.abs(lhs - c ** (-grid.m) * rhs)) / scale)
    exponent = float(np.log(ratio) / np.log(c)) if c != 1.0 and ratio > 0 else None

    xs = rng.normal(scale=2.0, size=(symmetry_samples, 2))
    ys = rng.normal(scale=2.0, size=(symmetry_samples, 2))
    cs = rng.uniform(0.5, 2.0, size=symmetry_samples)
    symmetry = kernel_symmetry_error(xs, ys, cs, sign)

    preferred = "-m" if error_minus <= error_plus else "+m"
    logger.info(
        f"Dilation c={c}: ratio={ratio:.12g}, exponent={exponent}, "
        f"errors(+m)={error_plus:.3e}, (-m)={error_minus:.3e}"
    )
    return DilationReport(
        c=c,
        ratio=ratio,
        fitted_exponent=exponent,
        error_plus_m=error_plus,
        error_minus_m=error_minus,
        preferred_exponent=preferred,
        symmetry_error=symmetry,
        passed=symmetry <= 1e-12 and min(error_plus, error_minus) <= tolerance,
    )


def gaussian_weight_bounded(field: SampledField, a: float, band: float = 0.8, slack: float = 1e-6) -> Tuple[bool, bool]:
    """e^{a||x||^2} ||f|| 의 유계성 증거 (L∞, L¹)

    바깥 띠 (||x|| >= band*R) 의 상한이 안쪽 상한을 넘지 않으면 L∞ 증거,
    바깥 띠 질량이 전체의 1e-3 이하이면 L¹ 증거로 본다.
    """
    norms = field.norms()
    if not np.any(norms):
        return True, True
    r2 = field.grid.radii_squared()
    with np.errstate(divide="ignore"):
        log_weight = a * r2 + np.log(norms)
    outer = np.sqrt(r2) >= band * field.grid.R
    inner = ~outer
    inner_max = float(np.max(log_weight[inner])) if np.any(inner) else -np.inf
    outer_max = float(np.max(log_weight[outer])) if np.any(outer) else -np.inf
    linf_ok = outer_max <= inner_max + np.log1p(slack)
    shifted = np.exp(log_weight - max(inner_max, outer_max))
    l1_ok = float(np.sum(shifted[outer])) <= 1e-3 * float(np.sum(shifted))
    return bool(linf_ok), bool(l1_ok)


def growth_bound_check(
    field: SampledField,
    a: float,
    imag_dirs: List[Sequence[float]],
    sign: KernelSign = KernelSign.MINUS,
    magnitudes: Sequence[float] = (0.0, 0.5, 1.0, 1.5, 2.0),
    stride: Optional[int] = None,
) -> GrowthBoundReport:
    """복소 인자 z = ξ + iη 에서 ||F(f)(z)|| e^{-||z||^2/4a} 의 상한 C_emp"""
    _require_m2(field.m)
    linf_ok, l1_ok = gaussian_weight_bounded(field, a)
    if not (linf_ok or l1_ok):
        raise HypothesisError(f"e^(a|x|^2) f is not bounded on the grid for a={a}")
    directions = []
    for d in imag_dirs:
        d = np.asarray(d, dtype=np.float64)
        length = float(np.linalg.norm(d))
        if length == 0.0:
            raise InvalidParameterError("imaginary directions must be nonzero")
        directions.append(d / length)

    grid = field.grid
    stride = stride or max(1, grid.N // 16)
    nodes = grid.axis_nodes()[::stride]
    xi = np.stack([c.reshape(-1) for c in np.meshgrid(nodes, nodes, indexing="ij")], axis=1)
    xi = xi[np.linalg.norm(xi, axis=1) <= 0.5 * grid.R]
    # 중점 격자에는 원점이 없으므로 따로 넣는다
    xi = np.vstack([np.zeros((1, 2)), xi])

    c_real = 0.0
    c_emp = 0.0
    samples = 0
    for t in magnitudes:
        for d in directions if t > 0 else directions[:1]:
            eta = t * d
            z = xi + 1j * eta[None, :]
            values = transform_at(field, z, sign)
            norms = coefficient_norms(values)
            z_norm2 = np.sum(xi**2, axis=1) + float(np.sum(eta**2))
            ratio = float(np.max(norms * np.exp(-z_norm2 / (4.0 * a))))
            samples += xi.shape[0]
            c_emp = max(c_emp, ratio)
            if t == 0:
                c_real = max(c_real, ratio)
    logger.info(f"Growth bound a={a}: C_emp={c_emp:.6g}, C_real={c_real:.6g}")
    return GrowthBoundReport(
        a=a,
        c_emp=c_emp,
        c_real=c_real,
        samples=samples,
        max_imag_norm=float(max(magnitudes)),
        passed=c_emp <= 10.0 * c_real,
    )
