import numpy as np
import pytest

from src.core.errors import BasisIndexError, DimensionMismatchError, InvalidParameterError
from src.models.poly import LaguerreParams, Parity
from src.services.clifford_core import Multivector, blade, generator
from src.services.poly_ops import (
    PolyField,
    dirac,
    exponents_up_to,
    gamma_op,
    homogeneous_exponents,
    laguerre_eval,
    laguerre_sum,
    laplace,
    monogenic_basis,
    psi_basis_element,
    random_poly,
)


class TestPolyField:
    """다중벡터 계수 다항식 테스트"""

    def test_zero_terms_are_dropped(self):
        """영 계수 제거 테스트"""
        p = PolyField(2, {(1, 0): 0.0, (0, 1): 2.0})

        assert list(p.terms) == [(0, 1)]
        assert p.degree == 1
        assert PolyField.zero(2).degree == -1
        assert PolyField.zero(2).is_zero()

    def test_evaluate(self):
        """점 평가 테스트"""
        # x1^2 e1 + 3 x2
        p = PolyField(2, {(2, 0): generator(1, 2), (0, 1): 3.0})
        values = p.evaluate(np.array([[2.0, 1.0], [0.0, -1.0]]))

        np.testing.assert_allclose(values, [[3.0, 4.0, 0.0, 0.0], [-3.0, 0.0, 0.0, 0.0]])
        assert p.evaluate_at([1.0, 1.0]) == Multivector(2, [3.0, 1.0, 0.0, 0.0])

    def test_partial_and_times_variable(self):
        """편미분과 변수 곱 테스트"""
        p = PolyField.monomial(2, (3, 1), 2.0)

        assert p.partial(0).isclose(PolyField.monomial(2, (2, 1), 6.0))
        assert p.partial(1).isclose(PolyField.monomial(2, (3, 0), 2.0))
        assert p.times_variable(1).isclose(PolyField.monomial(2, (3, 2), 2.0))

    def test_left_and_right_multiplication_differ(self):
        """왼쪽/오른쪽 곱 테스트"""
        p = PolyField.constant(2, generator(1, 2))
        e2 = generator(2, 2)

        assert p.left_multiply(e2).isclose(PolyField.constant(2, -blade(3, 2)))
        assert p.right_multiply(e2).isclose(PolyField.constant(2, blade(3, 2)))

    def test_invalid_exponent(self):
        """잘못된 지수 오류 테스트"""
        with pytest.raises(DimensionMismatchError):
            PolyField(2, {(1, 0, 0): 1.0})
        with pytest.raises(DimensionMismatchError):
            PolyField(2, {(1, 0): [1.0, 2.0]})

    def test_exponent_order(self):
        """단항식 순서 테스트"""
        assert homogeneous_exponents(2, 2) == [(2, 0), (1, 1), (0, 2)]
        assert len(exponents_up_to(2, 3)) == 10


class TestSymbolicOperators:
    """∂_x, Δ_x, Γ_x 테스트"""

    def test_laplace_of_radial_square(self):
        """Δ||x||^2 = 2m 테스트"""
        for m in (2, 3, 4):
            assert laplace(PolyField.radial_square(m)).isclose(PolyField.constant(m, 2.0 * m))

    @pytest.mark.parametrize("m", [2, 4])
    def test_dirac_squares_to_minus_laplace(self, rng, m):
        """∂_x^2 = -Δ_x 테스트"""
        for degree in range(4):
            p = random_poly(m, degree, rng)
            assert dirac(dirac(p)).isclose(-laplace(p), atol=1e-10)

    def test_dirac_of_vector_variable(self):
        """∂_x x = -m 테스트"""
        x = PolyField.zero(3)
        for i in range(1, 4):
            x = x + PolyField.variable(3, i).right_multiply(generator(i, 3))
        assert dirac(x).isclose(PolyField.constant(3, -3.0))

    def test_monogenic_factor(self):
        """x1 - e12 x2 는 모노제닉, x1 은 아님 테스트"""
        factor = PolyField.variable(2, 1) - PolyField.variable(2, 2).right_multiply(blade(3, 2))

        assert dirac(factor).is_zero()
        assert not dirac(PolyField.variable(2, 1)).is_zero()

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_gamma_eigenvalue_on_monogenics(self, k):
        """Γ M_k = -k M_k 테스트"""
        for M in monogenic_basis(2, k):
            assert gamma_op(M).isclose(M * (-float(k)), atol=1e-9)


class TestMonogenicBasis:
    """구면 모노제닉 기저 테스트"""

    @pytest.mark.parametrize("m,k,dimension", [(2, 0, 4), (2, 1, 4), (2, 2, 4), (2, 3, 4), (4, 1, 48)])
    def test_dimension(self, m, k, dimension):
        """dim M_k = 2^m binom(k+m-2, m-2) 테스트"""
        assert len(monogenic_basis(m, k)) == dimension

    @pytest.mark.parametrize("m,k", [(2, 1), (2, 2), (2, 3), (4, 1), (4, 2)])
    def test_basis_is_monogenic_and_homogeneous(self, m, k):
        """기저 원소의 ∂_x 잔차와 동차성 테스트"""
        for M in monogenic_basis(m, k):
            assert M.is_homogeneous()
            assert M.degree == k
            assert dirac(M).max_coefficient_norm() <= 1e-10

    def test_basis_is_deterministic(self):
        """기저 순서 결정성 테스트"""
        first = monogenic_basis(2, 2)
        second = monogenic_basis(2, 2)
        assert all(a.isclose(b, atol=0.0) for a, b in zip(first, second))

    def test_invalid_arguments(self):
        """홀수 차원과 음수 차수 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            monogenic_basis(3, 1)
        with pytest.raises(InvalidParameterError):
            monogenic_basis(2, -1)


class TestLaguerre:
    """일반화 라게르 다항식 테스트"""

    def test_closed_forms(self):
        """저차 닫힌 형식 테스트"""
        t = np.linspace(0.0, 5.0, 11)

        np.testing.assert_allclose(laguerre_eval(LaguerreParams(j=0, alpha=1.5), t), 1.0)
        np.testing.assert_allclose(laguerre_eval(LaguerreParams(j=1, alpha=1.5), t), 2.5 - t)
        np.testing.assert_allclose(laguerre_eval(LaguerreParams(j=2, alpha=0.0), t), 1.0 - 2.0 * t + t * t / 2.0)

    @pytest.mark.parametrize("j", range(7))
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
    def test_recurrence_matches_explicit_sum(self, j, alpha):
        """점화식과 명시적 합 일치 테스트"""
        params = LaguerreParams(j=j, alpha=alpha)
        t = np.linspace(0.0, 20.0, 81)
        scale = np.maximum(laguerre_sum(params, -t), 1.0)

        assert np.max(np.abs(laguerre_eval(params, t) - laguerre_sum(params, t)) / scale) <= 1e-10

    def test_scalar_input(self):
        """스칼라 입력 테스트"""
        assert isinstance(laguerre_eval(LaguerreParams(j=3, alpha=1.0), 0.5), float)

    def test_negative_argument(self):
        """음수 인자 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            laguerre_eval(LaguerreParams(j=2, alpha=0.0), -1.0)


class TestPsiBasis:
    """ψ 기저 함수 테스트"""

    def test_ground_state_is_gaussian(self):
        """ψ_{0,0,0} = e^{-||x||^2/2} 테스트"""
        points = np.array([[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]])
        values = psi_basis_element(2, 0, 0, 0, Parity.EVEN)(points)

        np.testing.assert_allclose(values[:, 0], np.exp(-0.5 * np.sum(points**2, axis=1)))
        np.testing.assert_array_equal(values[:, 1:], 0.0)

    def test_odd_element_multiplies_by_x(self):
        """홀 원소는 x 를 왼쪽에 곱함 테스트"""
        point = np.array([[1.0, 0.0]])
        odd = psi_basis_element(2, 0, 0, 0, Parity.ODD)(point)

        # x = e1, 값은 e1 e^{-1/2}
        np.testing.assert_allclose(odd[0], [0.0, np.exp(-0.5), 0.0, 0.0])

    def test_basis_index_out_of_range(self):
        """범위 밖 l 오류 테스트"""
        with pytest.raises(BasisIndexError):
            psi_basis_element(2, 0, 1, 4, Parity.EVEN)
