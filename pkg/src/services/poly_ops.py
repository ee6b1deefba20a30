"""다중벡터 계수 다항식과 기호 연산자 ∂_x, Δ_x, Γ_x, 구면 모노제닉, 라게르 다항식"""

import itertools
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
from scipy.linalg import null_space
from scipy.special import binom, factorial

from src.core.errors import BasisIndexError, DimensionMismatchError, InvalidParameterError
from src.models.poly import LaguerreParams, Parity
from src.services.clifford_core import (
    Multivector,
    blade,
    generator,
    multiply_coefficients,
    vector_coefficients,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Coefficient = Union[Multivector, np.ndarray, float, int]

NULLSPACE_RCOND = 1e-10


def _as_coeffs(value: Coefficient, m: int) -> np.ndarray:
    if isinstance(value, Multivector):
        if value.m != m:
            raise DimensionMismatchError(f"coefficient dimension {value.m} != {m}")
        return np.array(value.coeffs)
    if np.isscalar(value):
        out = np.zeros(1 << m)
        out[0] = float(value)
        return out
    arr = np.array(value, dtype=np.float64).reshape(-1)
    if arr.shape[0] != 1 << m:
        raise DimensionMismatchError(f"expected {1 << m} coefficients, got {arr.shape[0]}")
    return arr


class PolyField:
    """다중벡터 계수를 갖는 m 변수 다항식

    항은 지수 다중지수 -> 계수 배열. 계수는 오른쪽에 놓인다: Σ x^α c_α.
    정확히 0 인 계수는 저장하지 않는다.
    """

    __slots__ = ("_m", "_terms")

    def __init__(self, m: int, terms: Optional[Mapping[Exponent, Coefficient]] = None):
        self._m = m
        cleaned: Dict[Exponent, np.ndarray] = {}
        for alpha, value in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != m or any(a < 0 for a in alpha):
                raise DimensionMismatchError(f"invalid exponent {alpha} for m={m}")
            coeffs = _as_coeffs(value, m)
            if alpha in cleaned:
                coeffs = cleaned[alpha] + coeffs
            cleaned[alpha] = coeffs
        self._terms = {}
        for alpha in sorted(cleaned, reverse=True):
            coeffs = cleaned[alpha]
            if np.any(coeffs != 0.0):
                coeffs.setflags(write=False)
                self._terms[alpha] = coeffs

    # 생성
    @classmethod
    def zero(cls, m: int) -> "PolyField":
        return cls(m)

    @classmethod
    def constant(cls, m: int, value: Coefficient) -> "PolyField":
        return cls(m, {(0,) * m: value})

    @classmethod
    def variable(cls, m: int, i: int) -> "PolyField":
        """x_i (1부터 시작)"""
        alpha = [0] * m
        alpha[i - 1] = 1
        return cls(m, {tuple(alpha): 1.0})

    @classmethod
    def monomial(cls, m: int, alpha: Exponent, value: Coefficient = 1.0) -> "PolyField":
        return cls(m, {tuple(alpha): value})

    @classmethod
    def radial_square(cls, m: int) -> "PolyField":
        """||x||^2 = x_1^2 + ... + x_m^2"""
        terms = {}
        for i in range(m):
            alpha = [0] * m
            alpha[i] = 2
            terms[tuple(alpha)] = 1.0
        return cls(m, terms)

    @property
    def m(self) -> int:
        return self._m

    @property
    def terms(self) -> Dict[Exponent, np.ndarray]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """최고 차수, 영 다항식은 -1"""
        return max((sum(a) for a in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def coefficient(self, alpha: Exponent) -> Multivector:
        coeffs = self._terms.get(tuple(alpha))
        return Multivector(self._m, coeffs if coeffs is not None else np.zeros(1 << self._m))

    def max_coefficient_norm(self) -> float:
        return max((float(np.linalg.norm(c)) for c in self._terms.values()), default=0.0)

    # 산술
    def _check(self, other: "PolyField") -> None:
        if self._m != other._m:
            raise DimensionMismatchError(f"dimension mismatch: {self._m} vs {other._m}")

    def __add__(self, other: "PolyField") -> "PolyField":
        self._check(other)
        terms: Dict[Exponent, np.ndarray] = {a: np.array(c) for a, c in self._terms.items()}
        for alpha, coeffs in other._terms.items():
            terms[alpha] = terms[alpha] + coeffs if alpha in terms else np.array(coeffs)
        return PolyField(self._m, terms)

    def __neg__(self) -> "PolyField":
        return PolyField(self._m, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "PolyField") -> "PolyField":
        return self + (-other)

    def __mul__(self, value: float) -> "PolyField":
        return PolyField(self._m, {a: c * float(value) for a, c in self._terms.items()})

    __rmul__ = __mul__

    def left_multiply(self, value: Multivector) -> "PolyField":
        """value ⊗ p"""
        return PolyField(
            self._m,
            {a: multiply_coefficients(value.coeffs, c, self._m) for a, c in self._terms.items()},
        )

    def right_multiply(self, value: Multivector) -> "PolyField":
        """p ⊗ value"""
        return PolyField(
            self._m,
            {a: multiply_coefficients(c, value.coeffs, self._m) for a, c in self._terms.items()},
        )

    def times_variable(self, i: int) -> "PolyField":
        """x_i p (0부터 시작하는 축)"""
        terms = {}
        for alpha, coeffs in self._terms.items():
            shifted = list(alpha)
            shifted[i] += 1
            terms[tuple(shifted)] = coeffs
        return PolyField(self._m, terms)

    def partial(self, i: int) -> "PolyField":
        """∂/∂x_i (0부터 시작하는 축)"""
        terms: Dict[Exponent, np.ndarray] = {}
        for alpha, coeffs in self._terms.items():
            if alpha[i] == 0:
                continue
            lowered = list(alpha)
            lowered[i] -= 1
            key = tuple(lowered)
            value = coeffs * alpha[i]
            terms[key] = terms[key] + value if key in terms else value
        return PolyField(self._m, terms)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """점 배열 (M, m) 에서의 값, shape (M, 2^m)"""
        points = np.atleast_2d(np.asarray(points))
        if points.shape[1] != self._m:
            raise DimensionMismatchError(f"points have dimension {points.shape[1]}, expected {self._m}")
        out = np.zeros((points.shape[0], 1 << self._m), dtype=np.result_type(points, np.float64))
        for alpha, coeffs in self._terms.items():
            monomial = np.prod(points ** np.array(alpha), axis=1)
            out += monomial[:, None] * coeffs
        return out

    def evaluate_at(self, x: Iterable[float]) -> Multivector:
        return Multivector(self._m, self.evaluate(np.array([list(x)], dtype=np.float64))[0])

    def isclose(self, other: "PolyField", atol: float = 1e-12) -> bool:
        diff = self - other
        return diff.max_coefficient_norm() <= atol

    def __repr__(self) -> str:
        return f"PolyField(m={self._m}, terms={len(self._terms)}, degree={self.degree})"


def dirac(p: PolyField) -> PolyField:
    """∂_x p = Σ e_i ∂_{x_i} p (왼쪽 곱)"""
    result = PolyField.zero(p.m)
    for i in range(p.m):
        result = result + p.partial(i).left_multiply(generator(i + 1, p.m))
    return result


def laplace(p: PolyField) -> PolyField:
    """Δ_x p = Σ ∂_{x_i}^2 p"""
    result = PolyField.zero(p.m)
    for i in range(p.m):
        result = result + p.partial(i).partial(i)
    return result


def gamma_op(p: PolyField) -> PolyField:
    """Γ_x p = -Σ_{j<k} e_j e_k (x_j ∂_{x_k} - x_k ∂_{x_j}) p"""
    result = PolyField.zero(p.m)
    for j in range(p.m):
        for k in range(j + 1, p.m):
            angular = p.partial(k).times_variable(j) - p.partial(j).times_variable(k)
            result = result - angular.left_multiply(blade((1 << j) | (1 << k), p.m))
    return result


def homogeneous_exponents(m: int, k: int) -> List[Exponent]:
    """차수 k 단항식 지수, x_1 이 큰 것부터 (사전식 내림차순)"""
    exponents = [
        tuple(np.bincount(combo, minlength=m).tolist())
        for combo in itertools.combinations_with_replacement(range(m), k)
    ]
    return sorted(set(exponents), reverse=True)


def exponents_up_to(m: int, degree: int) -> List[Exponent]:
    out: List[Exponent] = []
    for k in range(degree + 1):
        out.extend(homogeneous_exponents(m, k))
    return out


def _reduced_row_echelon(rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """앞쪽 열부터 피벗을 잡는 기약 행 사다리꼴"""
    matrix = np.array(rows, dtype=np.float64)
    n_rows, n_cols = matrix.shape
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row >= n_rows:
            break
        candidate = pivot_row + int(np.argmax(np.abs(matrix[pivot_row:, col])))
        if abs(matrix[candidate, col]) < tol:
            continue
        matrix[[pivot_row, candidate]] = matrix[[candidate, pivot_row]]
        matrix[pivot_row] /= matrix[pivot_row, col]
        for r in range(n_rows):
            if r != pivot_row and matrix[r, col] != 0.0:
                matrix[r] -= matrix[r, col] * matrix[pivot_row]
        pivot_row += 1
    matrix[np.abs(matrix) < 1e-12] = 0.0
    return matrix[:pivot_row]


def _coordinates_to_poly(m: int, exponents: List[Exponent], vector: np.ndarray) -> PolyField:
    size = 1 << m
    return PolyField(
        m, {alpha: vector[idx * size : (idx + 1) * size] for idx, alpha in enumerate(exponents)}
    )


def _poly_to_coordinates(p: PolyField, exponents: List[Exponent]) -> np.ndarray:
    size = 1 << p.m
    out = np.zeros(len(exponents) * size)
    index = {alpha: idx for idx, alpha in enumerate(exponents)}
    for alpha, coeffs in p.terms.items():
        out[index[alpha] * size : (index[alpha] + 1) * size] = coeffs
    return out


@lru_cache(maxsize=64)
def _monogenic_basis_cached(m: int, k: int) -> Tuple[PolyField, ...]:
    size = 1 << m
    source = homogeneous_exponents(m, k)
    if k == 0:
        return tuple(PolyField.constant(m, blade(mask, m)) for mask in range(size))

    target = homogeneous_exponents(m, k - 1)
    columns = []
    for alpha in source:
        for mask in range(size):
            image = dirac(PolyField.monomial(m, alpha, blade(mask, m)))
            columns.append(_poly_to_coordinates(image, target))
    operator = np.stack(columns, axis=1)
    kernel = null_space(operator, rcond=NULLSPACE_RCOND)
    canonical = _reduced_row_echelon(kernel.T)
    logger.debug(
        f"Monogenic basis m={m}, k={k}: operator {operator.shape}, kernel dim {canonical.shape[0]}"
    )
    return tuple(_coordinates_to_poly(m, source, row) for row in canonical)


def monogenic_basis(m: int, k: int) -> List[PolyField]:
    """M_k = ker ∂_x ∩ P_k 의 기저 (정규화하지 않음)"""
    if m < 1 or m % 2 != 0:
        raise InvalidParameterError(f"monogenic basis requires even m, got {m}")
    if k < 0:
        raise InvalidParameterError(f"degree must be nonnegative, got {k}")
    return list(_monogenic_basis_cached(m, k))


def laguerre_eval(params: LaguerreParams, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """일반화 라게르 L_j^α(t), 삼항 점화식

    (n+1) L_{n+1} = (2n+1+α-t) L_n - (n+α) L_{n-1}
    """
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0):
        raise InvalidParameterError("laguerre_eval requires t >= 0")
    alpha = params.alpha
    previous = np.ones_like(t_arr)
    if params.j == 0:
        return previous if t_arr.ndim else float(previous)
    current = 1.0 + alpha - t_arr
    for n in range(1, params.j):
        previous, current = current, ((2 * n + 1 + alpha - t_arr) * current - (n + alpha) * previous) / (n + 1)
    return current if t_arr.ndim else float(current)


def laguerre_sum(params: LaguerreParams, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """명시적 합 Σ_i binom(j+α, j-i) (-t)^i / i!"""
    t_arr = np.asarray(t, dtype=np.float64)
    total = np.zeros_like(t_arr)
    for i in range(params.j + 1):
        total = total + binom(params.j + params.alpha, params.j - i) * (-t_arr) ** i / factorial(i)
    return total if t_arr.ndim else float(total)


FieldFunction = Callable[[np.ndarray], np.ndarray]


def psi_basis_element(m: int, j: int, k: int, l: int, parity: Parity) -> FieldFunction:  # noqa: E741
    """ψ_{2j,k,l} (짝) 또는 ψ_{2j+1,k,l} (홀) 평가기, 점 (M, m) -> (M, 2^m)"""
    basis = monogenic_basis(m, k)
    if not 0 <= l < len(basis):
        raise BasisIndexError(f"l={l} out of range for dim M_{k} = {len(basis)}")
    monogenic = basis[l]
    parity = Parity(parity)
    alpha = m / 2 + k - 1 if parity is Parity.EVEN else m / 2 + k
    params = LaguerreParams(j=j, alpha=alpha)

    def evaluate(points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        r2 = np.sum(points**2, axis=1)
        values = monogenic.evaluate(points)
        if parity is Parity.ODD:
            values = multiply_coefficients(vector_coefficients(points), values, m)
        radial = laguerre_eval(params, r2) * np.exp(-r2 / 2.0)
        return values * np.asarray(radial)[:, None]

    evaluate.__name__ = f"psi_{2 * j + (parity is Parity.ODD)}_{k}_{l}"
    return evaluate


def random_poly(m: int, degree: int, rng: np.random.Generator, homogeneous: bool = False) -> PolyField:
    """무작위 다중벡터 계수 다항식 (검증 코퍼스용)"""
    exponents = homogeneous_exponents(m, degree) if homogeneous else exponents_up_to(m, degree)
    return PolyField(m, {alpha: rng.standard_normal(1 << m) for alpha in exponents})
