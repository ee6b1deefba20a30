"""Cl(0,m) 정확 연산: 블레이드, 기하곱, 등급 구조, 노름

블레이드는 비트마스크(BladeIndex)로 표현한다. 비트 i 가 켜져 있으면 생성원 e_{i+1} 포함.
"""

import logging
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from src.core.errors import DimensionMismatchError, GradeOutOfRangeError, NotAVectorError

logger = logging.getLogger(__name__)

BladeIndex = int
Scalar = Union[int, float, np.floating]


def popcount(values: np.ndarray, width: int) -> np.ndarray:
    """폭 width 비트 정수 배열의 켜진 비트 수"""
    values = np.asarray(values, dtype=np.int64)
    count = np.zeros_like(values)
    for i in range(width):
        count += (values >> i) & 1
    return count


def grade_of(mask: BladeIndex) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def blade_grades(m: int) -> np.ndarray:
    grades = popcount(np.arange(1 << m), m)
    grades.setflags(write=False)
    return grades


@lru_cache(maxsize=None)
def cayley_table(m: int) -> Tuple[np.ndarray, np.ndarray]:
    """모든 블레이드 쌍의 (결과 블레이드, 부호)

    e_A e_B = sign[A, B] e_{A xor B}. 부호는 정렬에 필요한 자리바꿈 수와
    공유 생성원 수축(e_i^2 = -1)의 합의 홀짝으로 정해진다.
    """
    size = 1 << m
    a = np.arange(size, dtype=np.int64)[:, None]
    b = np.arange(size, dtype=np.int64)[None, :]
    swaps = np.zeros((size, size), dtype=np.int64)
    for shift in range(1, m):
        swaps += popcount((a >> shift) & b, m)
    contractions = popcount(a & b, m)
    sign = np.where((swaps + contractions) % 2 == 0, 1.0, -1.0)
    target = np.broadcast_to(a ^ b, (size, size)).copy()
    sign.setflags(write=False)
    target.setflags(write=False)
    logger.debug(f"Built Cayley table for Cl(0,{m})")
    return target, sign


def blade_label(mask: BladeIndex) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def multiply_coefficients(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """계수 배열의 기하곱 (앞쪽 축은 브로드캐스트)

    a, b 의 마지막 축 길이는 2^m.
    """
    size = 1 << m
    if a.shape[-1] != size or b.shape[-1] != size:
        raise DimensionMismatchError(
            f"coefficient length mismatch: {a.shape[-1]}, {b.shape[-1]} for m={m}"
        )
    target, sign = cayley_table(m)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.result_type(a, b, np.float64))
    for i in range(size):
        ai = a[..., i]
        if not np.any(ai):
            continue
        # i 고정 시 j -> i xor j 는 순열
        out[..., target[i]] += sign[i] * (ai[..., None] * b)
    return out


def coefficient_norms(values: np.ndarray) -> np.ndarray:
    """마지막 축 계수의 유클리드 노름, 제곱 전에 점별 최대값으로 나눈다

    1e-154 아래 성분도 0 으로 떨어지지 않는다. 실수와 복소수 배열 모두 받는다.
    """
    magnitude = np.abs(values)
    scale = np.max(magnitude, axis=-1)
    safe = np.where((scale > 0) & np.isfinite(scale), scale, 1.0)
    with np.errstate(invalid="ignore", over="ignore"):
        norms = scale * np.sqrt(np.sum((magnitude / safe[..., None]) ** 2, axis=-1))
    return np.where(np.isfinite(scale), norms, scale)


class Multivector:
    """Cl(0,m) 의 원소, 2^m 개 블레이드 계수 (불변)"""

    __slots__ = ("_m", "_coeffs")

    def __init__(self, m: int, coeffs: Union[Sequence[float], np.ndarray]):
        if m < 1:
            raise DimensionMismatchError(f"dimension must be positive, got {m}")
        values = np.array(coeffs, dtype=np.float64).reshape(-1)
        if values.shape[0] != 1 << m:
            raise DimensionMismatchError(
                f"expected {1 << m} coefficients for m={m}, got {values.shape[0]}"
            )
        values.setflags(write=False)
        self._m = m
        self._coeffs = values

    @property
    def m(self) -> int:
        return self._m

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m, np.zeros(1 << m))

    def __getitem__(self, mask: BladeIndex) -> float:
        return float(self._coeffs[mask])

    def _check(self, other: "Multivector") -> None:
        if self._m != other._m:
            raise DimensionMismatchError(f"dimension mismatch: {self._m} vs {other._m}")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        return Multivector(self._m, self._coeffs + other._coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        return Multivector(self._m, self._coeffs - other._coeffs)

    def __neg__(self) -> "Multivector":
        return Multivector(self._m, -self._coeffs)

    def __mul__(self, other: Union["Multivector", Scalar]) -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self._m, self._coeffs * float(other))

    def __rmul__(self, other: Scalar) -> "Multivector":
        return Multivector(self._m, self._coeffs * float(other))

    def __truediv__(self, other: Scalar) -> "Multivector":
        return Multivector(self._m, self._coeffs / float(other))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._m == other._m and bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self) -> int:
        return hash((self._m, self._coeffs.tobytes()))

    def isclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self._coeffs - other._coeffs)) <= atol)

    def is_vector(self) -> bool:
        return not np.any(self._coeffs[blade_grades(self._m) != 1])

    def is_scalar(self) -> bool:
        return not np.any(self._coeffs[1:])

    def scalar_part(self) -> float:
        return float(self._coeffs[0])

    def vector_part(self) -> np.ndarray:
        """등급 1 계수 (x_1, ..., x_m)"""
        return np.array([self._coeffs[1 << i] for i in range(self._m)])

    def __repr__(self) -> str:
        terms = [
            f"{c:+.6g}{'' if mask == 0 else '*' + blade_label(mask)}"
            for mask, c in enumerate(self._coeffs)
            if c != 0.0
        ]
        return f"Multivector(m={self._m}, {' '.join(terms) or '0'})"


class ComplexMultivector:
    """(실수부, 허수부) 다중벡터 쌍, 곱은 쌍선형 확장"""

    __slots__ = ("re", "im")

    def __init__(self, re: Multivector, im: Multivector):
        re._check(im)
        self.re = re
        self.im = im

    @property
    def m(self) -> int:
        return self.re.m

    @classmethod
    def from_array(cls, m: int, coeffs: np.ndarray) -> "ComplexMultivector":
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        return cls(Multivector(m, coeffs.real), Multivector(m, coeffs.imag))

    def to_array(self) -> np.ndarray:
        return self.re.coeffs + 1j * self.im.coeffs

    def __add__(self, other: "ComplexMultivector") -> "ComplexMultivector":
        return ComplexMultivector(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexMultivector") -> "ComplexMultivector":
        return ComplexMultivector(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexMultivector") -> "ComplexMultivector":
        return ComplexMultivector(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def norm(self) -> float:
        return float(np.sqrt(clifford_norm(self.re) ** 2 + clifford_norm(self.im) ** 2))


def scalar(value: float, m: int) -> Multivector:
    coeffs = np.zeros(1 << m)
    coeffs[0] = value
    return Multivector(m, coeffs)


def blade(mask: BladeIndex, m: int, value: float = 1.0) -> Multivector:
    if not 0 <= mask < 1 << m:
        raise GradeOutOfRangeError(f"blade mask {mask} out of range for m={m}")
    coeffs = np.zeros(1 << m)
    coeffs[mask] = value
    return Multivector(m, coeffs)


def generator(i: int, m: int) -> Multivector:
    """e_i (1부터 시작)"""
    return blade(1 << (i - 1), m)


def vector(coords: Iterable[float]) -> Multivector:
    coords = list(coords)
    m = len(coords)
    coeffs = np.zeros(1 << m)
    for i, x in enumerate(coords):
        coeffs[1 << i] = x
    return Multivector(m, coeffs)


def vector_coefficients(points: np.ndarray) -> np.ndarray:
    """점 배열 (..., m) 을 벡터 다중벡터 계수 (..., 2^m) 로"""
    points = np.asarray(points)
    m = points.shape[-1]
    out = np.zeros(points.shape[:-1] + (1 << m,), dtype=points.dtype)
    for i in range(m):
        out[..., 1 << i] = points[..., i]
    return out


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    """a ⊗ b, 생성 규칙 e_i e_j = -e_j e_i, e_i^2 = -1 의 쌍선형 확장"""
    a._check(b)
    target, sign = cayley_table(a.m)
    contributions = sign * np.outer(a.coeffs, b.coeffs)
    coeffs = np.bincount(target.reshape(-1), weights=contributions.reshape(-1), minlength=1 << a.m)
    return Multivector(a.m, coeffs)


def left_multiplication_matrix(a: Multivector) -> np.ndarray:
    """L @ b.coeffs == (a ⊗ b).coeffs 인 행렬"""
    target, sign = cayley_table(a.m)
    size = 1 << a.m
    matrix = np.zeros((size, size))
    columns = np.arange(size)
    for i in range(size):
        if a.coeffs[i] != 0.0:
            matrix[target[i], columns] += sign[i] * a.coeffs[i]
    return matrix


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.m:
        raise GradeOutOfRangeError(f"grade {k} out of range [0, {a.m}]")
    return Multivector(a.m, np.where(blade_grades(a.m) == k, a.coeffs, 0.0))


def grade_norms(a: Multivector) -> dict:
    grades = blade_grades(a.m)
    return {
        str(k): float(coefficient_norms(a.coeffs[grades == k])) for k in range(a.m + 1)
    }


def clifford_norm(a: Multivector) -> float:
    return float(coefficient_norms(a.coeffs))


def _require_vectors(x: Multivector, y: Multivector) -> None:
    x._check(y)
    if not (x.is_vector() and y.is_vector()):
        raise NotAVectorError("inner and wedge products require pure grade-1 arguments")


def inner_product(x: Multivector, y: Multivector) -> Multivector:
    """<x, y> = Σ x_j y_j (스칼라 다중벡터)"""
    _require_vectors(x, y)
    return scalar(float(np.dot(x.vector_part(), y.vector_part())), x.m)


def inner_product_geometric(x: Multivector, y: Multivector) -> Multivector:
    """<x, y> = -1/2 (xy + yx)"""
    _require_vectors(x, y)
    return (geometric_product(x, y) + geometric_product(y, x)) * -0.5


def wedge_product(x: Multivector, y: Multivector) -> Multivector:
    """x ∧ y = Σ_{j<k} e_j e_k (x_j y_k - x_k y_j)"""
    _require_vectors(x, y)
    xv, yv = x.vector_part(), y.vector_part()
    coeffs = np.zeros(1 << x.m)
    for j in range(x.m):
        for k in range(j + 1, x.m):
            coeffs[(1 << j) | (1 << k)] = xv[j] * yv[k] - xv[k] * yv[j]
    return Multivector(x.m, coeffs)


def wedge_product_geometric(x: Multivector, y: Multivector) -> Multivector:
    """x ∧ y = 1/2 (xy - yx)"""
    _require_vectors(x, y)
    return (geometric_product(x, y) - geometric_product(y, x)) * 0.5
