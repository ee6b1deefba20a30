"""균일 텐서 격자 위 다중벡터 표본장, 구적, 노름, 방사 합성곱, 직렬화"""

import csv
import logging
import struct
from pathlib import Path
from typing import Callable, Tuple, Union

import numpy as np
from scipy.signal import fftconvolve

from src.core.errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NonRadialFieldError,
)
from src.models.grid import GridSpec
from src.services.clifford_core import Multivector, cayley_table, coefficient_norms, multiply_coefficients

logger = logging.getLogger(__name__)

RADIAL_TOLERANCE = 1e-8
_BINARY_HEADER = struct.Struct("<idi")


class SampledField:
    """격자점마다 다중벡터 하나, values shape (N,)*m + (2^m,) (불변)"""

    __slots__ = ("_grid", "_values")

    def __init__(self, grid: GridSpec, values: np.ndarray):
        values = np.array(values, dtype=np.float64)
        expected = grid.shape + (1 << grid.m,)
        if values.shape != expected:
            try:
                values = values.reshape(expected)
            except ValueError as e:
                raise DimensionMismatchError(
                    f"field values of shape {values.shape} do not fit grid {grid.describe()}"
                ) from e
        values.setflags(write=False)
        self._grid = grid
        self._values = values

    @property
    def grid(self) -> GridSpec:
        return self._grid

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def m(self) -> int:
        return self._grid.m

    def flat_values(self) -> np.ndarray:
        """행 우선 (N^m, 2^m)"""
        return self._values.reshape(-1, 1 << self.m)

    def norms(self) -> np.ndarray:
        """격자점별 Clifford 노름, shape (N,)*m"""
        return coefficient_norms(self._values)

    def max_norm(self) -> float:
        return float(np.max(self.norms()))

    def is_zero(self) -> bool:
        return not np.any(self._values)

    def at(self, index: Tuple[int, ...]) -> Multivector:
        return Multivector(self.m, self._values[tuple(index)])

    def component(self, mask: int) -> np.ndarray:
        return self._values[..., mask]

    def _check(self, other: "SampledField") -> None:
        if self._grid != other._grid:
            raise DimensionMismatchError(
                f"grid mismatch: {self._grid.describe()} vs {other._grid.describe()}"
            )

    def __add__(self, other: "SampledField") -> "SampledField":
        self._check(other)
        return SampledField(self._grid, self._values + other._values)

    def __sub__(self, other: "SampledField") -> "SampledField":
        self._check(other)
        return SampledField(self._grid, self._values - other._values)

    def __neg__(self) -> "SampledField":
        return SampledField(self._grid, -self._values)

    def __mul__(self, value: float) -> "SampledField":
        return SampledField(self._grid, self._values * float(value))

    __rmul__ = __mul__

    def left_multiply(self, value: Multivector) -> "SampledField":
        if value.m != self.m:
            raise DimensionMismatchError(f"dimension mismatch: {value.m} vs {self.m}")
        return SampledField(self._grid, multiply_coefficients(value.coeffs, self._values, self.m))

    def __repr__(self) -> str:
        return f"SampledField(grid={self._grid.describe()}, max_norm={self.max_norm():.3g})"


FieldFunction = Callable[[np.ndarray], Union[np.ndarray, float]]


def sample(f: FieldFunction, grid: GridSpec) -> SampledField:
    """중점 격자 x_i = -R + (i+1/2)h 에서 f 를 평가

    f 는 점 배열 (M, m) 을 받아 (M, 2^m) 다중벡터 계수 또는 (M,) 스칼라 값을 돌려준다.
    """
    points = grid.points()
    raw = np.asarray(f(points), dtype=np.float64)
    size = 1 << grid.m
    if raw.ndim == 0:
        values = np.zeros((points.shape[0], size))
        values[:, 0] = float(raw)
    elif raw.ndim == 1:
        if raw.shape[0] != points.shape[0]:
            raise DimensionMismatchError(f"scalar field returned {raw.shape[0]} values")
        values = np.zeros((points.shape[0], size))
        values[:, 0] = raw
    else:
        if raw.shape != (points.shape[0], size):
            raise DimensionMismatchError(f"field returned shape {raw.shape}, expected {(points.shape[0], size)}")
        values = raw
    return SampledField(grid, values)


def zero_field(grid: GridSpec) -> SampledField:
    return SampledField(grid, np.zeros(grid.shape + (1 << grid.m,)))


def lp_norm(field: SampledField, p: Union[float, str]) -> float:
    """중점 구적 (Σ ||f||^p h^m)^{1/p}, p = inf 이면 격자점 최대값"""
    p = float(p)
    if np.isnan(p) or p < 1.0:
        raise InvalidParameterError(f"norm order must be >= 1, got {p}")
    norms = field.norms()
    if np.isinf(p):
        return float(np.max(norms))
    if not np.any(norms):
        return 0.0
    scale = float(np.max(norms))
    # 큰 p 에서의 넘침을 피하려고 최대값으로 정규화
    return scale * float(np.sum((norms / scale) ** p) * field.grid.weight) ** (1.0 / p)


def b_norm(field: SampledField) -> float:
    """∫ (1 + ||y||)^{(m-2)/2} ||f(y)|| dy"""
    grid = field.grid
    weight = (1.0 + np.sqrt(grid.radii_squared())) ** ((grid.m - 2) / 2.0)
    return float(np.sum(weight * field.norms()) * grid.weight)


def radial_profile(field: SampledField) -> Tuple[np.ndarray, np.ndarray]:
    """정확한 껍질별 (반경, 최대 노름), 반경 오름차순"""
    grid = field.grid
    keys = grid.shell_keys().reshape(-1)
    norms = field.norms().reshape(-1)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(sorted_keys)) + 1))
    shell_max = np.maximum.reduceat(norms[order], starts)
    radii = 0.5 * grid.h * np.sqrt(sorted_keys[starts].astype(np.float64))
    return radii, shell_max


def radial_deviation(field: SampledField) -> float:
    """껍질 안 값의 최대 편차 / 최대 노름"""
    scale = field.max_norm()
    if scale == 0.0:
        return 0.0
    keys = field.grid.shell_keys().reshape(-1)
    values = field.flat_values()
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(sorted_keys)) + 1))
    ordered = values[order]
    spread = np.maximum.reduceat(ordered, starts, axis=0) - np.minimum.reduceat(
        ordered, starts, axis=0
    )
    return float(np.max(spread) / scale)


def is_radial(field: SampledField, tolerance: float = RADIAL_TOLERANCE) -> bool:
    return radial_deviation(field) <= tolerance


def _half_cell_shift(values: np.ndarray, axis: int) -> np.ndarray:
    """축을 따라 f(x + h/2) 를 스펙트럼 보간 (2N 영채움)"""
    n = values.shape[axis]
    length = 2 * n
    spectrum = np.fft.rfft(values, n=length, axis=axis)
    shape = [1] * values.ndim
    shape[axis] = spectrum.shape[axis]
    phase = np.exp(1j * np.pi * np.arange(spectrum.shape[axis]) / length).reshape(shape)
    shifted = np.fft.irfft(spectrum * phase, n=length, axis=axis)
    return np.take(shifted, np.arange(n), axis=axis)


def _lattice_kernel(component: np.ndarray) -> np.ndarray:
    """중점 표본을 격자 차이 nh (|n| <= N-1) 위의 값으로 옮긴 (2N-1)^m 배열"""
    shifted = component
    for axis in range(component.ndim):
        shifted = _half_cell_shift(shifted, axis)
    n = component.shape[0]
    kernel = np.zeros((2 * n - 1,) * component.ndim)
    window = tuple(slice(n // 2, n // 2 + n) for _ in range(component.ndim))
    kernel[window] = shifted
    return kernel


def radial_convolve(f: SampledField, g: SampledField, normalized: bool = False) -> SampledField:
    """방사 f 와 g 의 합성곱 ∫ f(x-y) ⊗ g(y) dy

    f 가 방사적일 때 Clifford 합성곱은 고전 합성곱과 같다.
    normalized=True 이면 Clifford 합성곱의 (2π)^{-m/2} 인자를 곱한다.
    """
    f._check(g)
    deviation = radial_deviation(f)
    if deviation > RADIAL_TOLERANCE:
        raise NonRadialFieldError(
            f"left factor is not radial (shell deviation {deviation:.3e}); "
            "Clifford convolution differs from the classical one"
        )
    grid = f.grid
    target, sign = cayley_table(grid.m)
    out = np.zeros(g.values.shape)
    f_components = [i for i in range(1 << grid.m) if np.any(f.values[..., i])]
    g_components = [j for j in range(1 << grid.m) if np.any(g.values[..., j])]
    for i in f_components:
        kernel = _lattice_kernel(f.values[..., i])
        for j in g_components:
            out[..., target[i, j]] += sign[i, j] * fftconvolve(kernel, g.values[..., j], mode="valid")
    out *= grid.weight
    if normalized:
        out *= (2.0 * np.pi) ** (-grid.m / 2.0)
    logger.debug(
        f"Radial convolution on grid {grid.describe()}: {len(f_components)}x{len(g_components)} component pairs"
    )
    return SampledField(grid, out)


def save_field(field: SampledField, path: Union[str, Path], fmt: str = "csv") -> Path:
    """머리 (m, R, N) 다음 N^m 행의 2^m 계수"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    grid = field.grid
    if fmt == "csv":
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow([grid.m, repr(grid.R), grid.N])
            for row in field.flat_values():
                writer.writerow([repr(float(v)) for v in row])
    elif fmt == "binary":
        with path.open("wb") as handle:
            handle.write(_BINARY_HEADER.pack(grid.m, grid.R, grid.N))
            handle.write(field.flat_values().astype("<f8").tobytes())
    else:
        raise InvalidParameterError(f"unknown field format: {fmt}")
    logger.info(f"Saved field {grid.describe()} to {path} ({fmt})")
    return path


def load_field(path: Union[str, Path], fmt: str = "csv") -> SampledField:
    path = Path(path)
    if fmt == "csv":
        with path.open("r", newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            grid = GridSpec(m=int(header[0]), R=float(header[1]), N=int(header[2]))
            rows = [[float(v) for v in row] for row in reader]
        values = np.array(rows, dtype=np.float64)
    elif fmt == "binary":
        raw = path.read_bytes()
        m, R, N = _BINARY_HEADER.unpack_from(raw)
        grid = GridSpec(m=m, R=R, N=N)
        values = np.frombuffer(raw, dtype="<f8", offset=_BINARY_HEADER.size).astype(np.float64)
    else:
        raise InvalidParameterError(f"unknown field format: {fmt}")
    return SampledField(grid, values.reshape(grid.shape + (1 << grid.m,)))
