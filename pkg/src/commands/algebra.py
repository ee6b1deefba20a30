"""대수 항등식 검사 (생성 규칙, 벡터 제곱, 결합법칙, Δ = -∂^2, 모노제닉, 라게르)"""

import logging
from typing import List

import numpy as np

from src.commands.context import CommandContext, checked
from src.models.common import CheckRow
from src.models.poly import LaguerreParams
from src.services.clifford_core import (
    Multivector,
    blade,
    inner_product,
    inner_product_geometric,
    multiply_coefficients,
    vector_coefficients,
    wedge_product,
    wedge_product_geometric,
)
from src.services.poly_ops import (
    PolyField,
    dirac,
    gamma_op,
    laguerre_eval,
    laguerre_sum,
    laplace,
    monogenic_basis,
    random_poly,
)

logger = logging.getLogger(__name__)

ALGEBRA_DIMENSIONS = (2, 4)
CORPUS_SIZE = 1000
PAIR_SAMPLES = 100
EXACT_TOLERANCE = 1e-12


def _generator_relations(rng: np.random.Generator, m: int) -> float:
    """xy + yx = -2<x,y> 의 최대 상대 오차"""
    x = vector_coefficients(rng.standard_normal((CORPUS_SIZE, m)))
    y = vector_coefficients(rng.standard_normal((CORPUS_SIZE, m)))
    anti = multiply_coefficients(x, y, m) + multiply_coefficients(y, x, m)
    anti[:, 0] += 2.0 * np.sum(x * y, axis=1)
    scale = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
    return float(np.max(np.linalg.norm(anti, axis=1) / scale))


def _vector_square(rng: np.random.Generator, m: int) -> float:
    """x ⊗ x = -||x||^2 의 최대 상대 오차"""
    x = vector_coefficients(rng.standard_normal((CORPUS_SIZE, m)))
    square = multiply_coefficients(x, x, m)
    norm2 = np.sum(x * x, axis=1)
    square[:, 0] += norm2
    return float(np.max(np.linalg.norm(square, axis=1) / norm2))


def _associativity(rng: np.random.Generator, m: int) -> float:
    size = 1 << m
    a, b, c = (rng.standard_normal((CORPUS_SIZE, size)) for _ in range(3))
    left = multiply_coefficients(multiply_coefficients(a, b, m), c, m)
    right = multiply_coefficients(a, multiply_coefficients(b, c, m), m)
    scale = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1) * np.linalg.norm(c, axis=1)
    return float(np.max(np.linalg.norm(left - right, axis=1) / scale))


def _laplace_dirac(rng: np.random.Generator, m: int, cases: int) -> float:
    """Δp + ∂(∂p) 의 최대 계수 / max(||Δp|| 계수, 1)"""
    max_degree = 4 if m == 2 else 3
    worst = 0.0
    for _ in range(cases):
        p = random_poly(m, int(rng.integers(0, max_degree + 1)), rng)
        lap = laplace(p)
        diff = lap + dirac(dirac(p))
        worst = max(worst, diff.max_coefficient_norm() / max(lap.max_coefficient_norm(), 1.0))
    return worst


def _vector_products(rng: np.random.Generator, m: int) -> float:
    """내적, 쐐기곱 두 정의의 차이와 xy = -<x,y> + x∧y 재구성 오차"""
    worst = 0.0
    for _ in range(PAIR_SAMPLES):
        x = Multivector(m, vector_coefficients(rng.standard_normal(m)))
        y = Multivector(m, vector_coefficients(rng.standard_normal(m)))
        dot = inner_product(x, y)
        wedge = wedge_product(x, y)
        errors = (
            (dot - inner_product_geometric(x, y)).coeffs,
            (wedge - wedge_product_geometric(x, y)).coeffs,
            (x * y - (wedge - dot)).coeffs,
        )
        scale = float(np.linalg.norm(x.coeffs) * np.linalg.norm(y.coeffs))
        worst = max(worst, max(float(np.linalg.norm(e)) for e in errors) / scale)
    return worst


def _monogenic_residual(m: int, k: int) -> tuple:
    basis = monogenic_basis(m, k)
    residual = max((dirac(M).max_coefficient_norm() for M in basis), default=0.0)
    homogeneous = all(M.is_homogeneous() and M.degree == k for M in basis)
    passed = homogeneous and len(basis) > 0 and residual <= 1e-10
    return residual, passed, {"dimension": len(basis)}


def _gamma_eigenvalue() -> float:
    """Γ(x1 - e12 x2) = -(x1 - e12 x2)"""
    P = PolyField.variable(2, 1) - PolyField.variable(2, 2).right_multiply(blade(3, 2))
    return (gamma_op(P) + P).max_coefficient_norm()


def _laguerre_agreement() -> float:
    t = np.linspace(0.0, 20.0, 401)
    worst = 0.0
    for j in range(7):
        for alpha in (0.0, 0.5, 1.0, 2.0):
            params = LaguerreParams(j=j, alpha=alpha)
            recurrence = laguerre_eval(params, t)
            direct = laguerre_sum(params, t)
            # 항별 절댓값의 합 L_j^α(-t) 를 척도로
            scale = np.maximum(laguerre_sum(params, -t), 1.0)
            worst = max(worst, float(np.max(np.abs(recurrence - direct) / scale)))
    return worst


def algebra_rows(ctx: CommandContext) -> List[CheckRow]:
    rows: List[CheckRow] = []
    rng = ctx.rng
    for m in ALGEBRA_DIMENSIONS:
        params = {"m": m, "cases": CORPUS_SIZE}
        checked(rows, f"algebra.generator_relations.m{m}", EXACT_TOLERANCE, params, lambda: _generator_relations(rng, m))
        checked(rows, f"algebra.vector_square.m{m}", EXACT_TOLERANCE, params, lambda: _vector_square(rng, m))
        checked(rows, f"algebra.associativity.m{m}", EXACT_TOLERANCE, params, lambda: _associativity(rng, m))
        checked(
            rows,
            f"algebra.laplace_dirac.m{m}",
            EXACT_TOLERANCE,
            params,
            lambda: _laplace_dirac(rng, m, CORPUS_SIZE),
        )
        checked(
            rows,
            f"algebra.vector_products.m{m}",
            EXACT_TOLERANCE,
            {"m": m, "cases": PAIR_SAMPLES},
            lambda: _vector_products(rng, m),
        )
    for m, k in ((2, 1), (2, 2), (2, 3), (4, 1), (4, 2)):
        checked(rows, f"algebra.monogenic.m{m}.k{k}", 1e-10, {"m": m, "k": k}, lambda: _monogenic_residual(m, k))
    checked(rows, "algebra.gamma_eigenvalue.m2.k1", EXACT_TOLERANCE, {"m": 2, "k": 1}, _gamma_eigenvalue)
    checked(rows, "algebra.laguerre_recurrence", 1e-10, {"j_max": 6, "t_max": 20.0}, _laguerre_agreement)
    logger.info(f"Algebra checks: {sum(r.passed for r in rows)}/{len(rows)} passed")
    return rows
