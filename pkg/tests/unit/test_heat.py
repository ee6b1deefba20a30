import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import GridResolutionError, UnsupportedDimensionError
from src.models.grid import GridSpec
from src.models.heat import HeatKernelParams
from src.services.cft import transform_fft
from src.services.heat import (
    heat_closed_form_residual,
    heat_dirac,
    heat_double_transform_check,
    heat_inverse_representation_check,
    heat_kernel,
    heat_kernel_values,
    heat_laplacian,
    heat_mass,
    heat_origin_laplacian_error,
    heat_pde_residual,
    heat_positivity,
    heat_radiality,
    heat_scaling_error,
    heat_semigroup_check,
    heat_time_derivative,
    heat_transform_check,
    unit_sphere_area,
)


class TestHeatKernelParams:
    """열 핵 매개변수 테스트"""

    def test_valid(self):
        """유효한 매개변수 테스트"""
        params = HeatKernelParams(m=4, s=0.5)
        assert params.m == 4
        assert params.s == 0.5

    def test_invalid(self):
        """홀수 차원과 비양수 시간 오류 테스트"""
        with pytest.raises(ValidationError):
            HeatKernelParams(m=3, s=1.0)
        with pytest.raises(ValidationError):
            HeatKernelParams(m=2, s=0.0)


class TestClosedForms:
    """닫힌 형식 값과 미분 테스트"""

    def test_origin_value(self):
        """N_c(0, 1/2) = 1/2π 테스트"""
        value = heat_kernel(HeatKernelParams(m=2, s=0.5), [0.0, 0.0])

        assert value.is_scalar()
        assert abs(value.scalar_part() - 1.0 / (2.0 * math.pi)) <= 1e-14

    def test_point_dimension_mismatch(self):
        """점 차원 불일치 오류 테스트"""
        with pytest.raises(UnsupportedDimensionError):
            heat_kernel(HeatKernelParams(m=2, s=1.0), [0.0, 0.0, 0.0])

    def test_dirac_is_vector_valued(self):
        """∂_x N_c = -x N_c / 2s 테스트"""
        params = HeatKernelParams(m=2, s=1.0)
        values = heat_dirac(params, np.array([[1.0, 0.0]]))

        np.testing.assert_allclose(values[0], [0.0, -heat_kernel_values(2, 1.0, 1.0) / 2.0, 0.0, 0.0])

    def test_dirac_matches_finite_difference(self, rng):
        """∂_x N_c 와 중심 차분 기울기 비교 테스트"""
        params = HeatKernelParams(m=2, s=0.8)
        points = rng.normal(size=(40, 2))
        step = 1e-5
        gradient = np.zeros((40, 4))
        for i, mask in enumerate((1, 2)):
            shift = np.zeros(2)
            shift[i] = step
            forward = heat_kernel_values(2, params.s, np.sum((points + shift) ** 2, axis=1))
            backward = heat_kernel_values(2, params.s, np.sum((points - shift) ** 2, axis=1))
            gradient[:, mask] = (forward - backward) / (2.0 * step)

        np.testing.assert_allclose(heat_dirac(params, points), gradient, rtol=1e-6, atol=1e-10)

    def test_time_derivative_equals_laplacian(self, rng):
        """닫힌 형식 ∂_s N_c 의 차분 일치와 Δ_x N_c 와의 일치 테스트"""
        params = HeatKernelParams(m=4, s=0.7)
        points = rng.normal(size=(50, 4))
        tau = 1e-5
        fd = (
            heat_kernel_values(4, params.s + tau, np.sum(points**2, axis=1))
            - heat_kernel_values(4, params.s - tau, np.sum(points**2, axis=1))
        ) / (2.0 * tau)

        np.testing.assert_allclose(heat_time_derivative(params, points), fd, rtol=1e-6, atol=1e-12)
        np.testing.assert_allclose(
            heat_time_derivative(params, points), heat_laplacian(params, points), rtol=1e-10, atol=1e-15
        )

    def test_origin_laplacian(self):
        """원점 라플라시안 차분 테스트"""
        assert heat_origin_laplacian_error(HeatKernelParams(m=2, s=1.0), 1e-3) <= 1e-5

    def test_scaling(self, rng):
        """N_c(λ^{1/2}x, λs) = λ^{-m/2} N_c(x, s) 테스트"""
        for m in (2, 4):
            points = rng.normal(scale=2.0, size=(1000, m))
            s = rng.uniform(0.1, 4.0, size=1000)
            lam = rng.uniform(0.1, 10.0, size=1000)
            assert heat_scaling_error(m, points, s, lam) <= 1e-12

    def test_unit_sphere_area(self):
        """단위구면 넓이 테스트"""
        assert unit_sphere_area(2) == pytest.approx(2.0 * math.pi)
        assert unit_sphere_area(3) == pytest.approx(4.0 * math.pi)
        assert unit_sphere_area(4) == pytest.approx(2.0 * math.pi**2)


class TestHeatEquation:
    """열 방정식 차분 검사 테스트"""

    def test_pde_residual(self, small_grid):
        """잘게 나눈 차분 잔차 테스트"""
        params = HeatKernelParams(m=2, s=1.0)
        assert heat_pde_residual(params, small_grid, refinement=16) <= 1e-4

    def test_second_order_convergence(self, small_grid):
        """보폭 절반에서 잔차 1/4 테스트"""
        params = HeatKernelParams(m=2, s=1.0)
        coarse = heat_pde_residual(params, small_grid, refinement=4)
        fine = heat_pde_residual(params, small_grid, refinement=8)

        assert abs(coarse / fine - 4.0) <= 0.5

    def test_closed_forms_match_differences(self, small_grid):
        """닫힌 형식 ∂_s, Δ_x, ∂_x 와 차분의 일치 테스트"""
        params = HeatKernelParams(m=2, s=1.0)
        assert heat_closed_form_residual(params, small_grid, refinement=16) <= 1e-4

    def test_unresolved_grid(self, small_grid):
        """핵 폭을 해상하지 못하는 격자 오류 테스트"""
        with pytest.raises(GridResolutionError):
            heat_pde_residual(HeatKernelParams(m=2, s=0.25), small_grid)


class TestHeatTransform:
    """열 핵 변환 항등식 테스트"""

    @pytest.mark.parametrize("s", [0.5, 1.0])
    def test_transform_identity(self, small_grid, s):
        """F(N_c(., s)) = (2π)^{-1} e^{-s||y||^2} 테스트"""
        assert heat_transform_check(HeatKernelParams(m=2, s=s), small_grid, transform_fft) <= 1e-6

    def test_inverse_representation(self, small_grid):
        """F_+((2π)^{-1} e^{-s||.||^2}) = N_c 테스트"""
        assert heat_inverse_representation_check(HeatKernelParams(m=2, s=1.0), small_grid, transform_fft) <= 1e-5

    def test_double_transform(self, small_grid):
        """F(F(N_c)) = N_c 테스트"""
        assert heat_double_transform_check(HeatKernelParams(m=2, s=1.0), small_grid, transform_fft) <= 1e-5

    def test_requires_m2(self, small_grid):
        """m=4 변환 검사 오류 테스트"""
        with pytest.raises(UnsupportedDimensionError):
            heat_transform_check(HeatKernelParams(m=4, s=1.0), small_grid, transform_fft)


class TestMassAndSemigroup:
    """질량 보존과 반군 성질 테스트"""

    def test_mass_m2(self, small_grid):
        """격자 구적 질량 테스트"""
        assert abs(heat_mass(HeatKernelParams(m=2, s=1.0), small_grid) - 1.0) <= 1e-6

    def test_mass_m4(self):
        """방사 구적 질량 테스트"""
        grid = GridSpec(m=2, R=10.0, N=16)
        assert abs(heat_mass(HeatKernelParams(m=4, s=1.0), grid) - 1.0) <= 1e-8

    def test_mass_needs_wide_grid(self, small_grid):
        """반폭 부족 오류 테스트"""
        with pytest.raises(GridResolutionError):
            heat_mass(HeatKernelParams(m=2, s=4.0), small_grid)

    @pytest.mark.parametrize("s,t", [(0.5, 0.5), (0.25, 0.75)])
    def test_semigroup_m2(self, small_grid, s, t):
        """N_c(t) *_Cl N_c(s) = (2π)^{-1} N_c(s+t) 테스트"""
        assert heat_semigroup_check(s, t, small_grid) <= 1e-8

    @pytest.mark.slow
    def test_semigroup_m4(self, small_grid):
        """m=4 방사 구적 반군 테스트"""
        assert heat_semigroup_check(0.5, 0.5, small_grid, m=4, radii=(0.0, 1.0, 2.0)) <= 1e-5


class TestShape:
    """양수성과 방사 대칭 테스트"""

    def test_positivity(self, small_grid):
        """모든 격자점 양수 테스트"""
        minimum, positive = heat_positivity(HeatKernelParams(m=2, s=1.0), small_grid)

        assert positive
        assert minimum > 0.0

    def test_radiality(self, small_grid):
        """방사 대칭 테스트"""
        assert heat_radiality(HeatKernelParams(m=2, s=1.0), small_grid) <= 1e-8
