import math

import numpy as np
import pytest

from src.core.errors import (
    FitError,
    InvalidParameterError,
    TrustRegionError,
    UnsupportedDimensionError,
    ZeroFieldError,
)
from src.models.grid import GridSpec
from src.models.transform import KernelSign
from src.models.uncertainty import HardyRegime, MiyachiConclusion
from src.services.cft import transform_fft
from src.services.clifford_core import blade
from src.services.grid_transform import sample, zero_field
from src.services.heat import heat_kernel_values
from src.services.poly_ops import PolyField
from src.services.uncertainty import (
    classify_regime,
    corollary_64_check,
    critical_constant_bound,
    fit_amplitude,
    fit_gaussian_decay,
    hardy_verify,
    miyachi_functional,
    miyachi_verify,
    polynomial_gaussian_image,
    transform_noise_floor,
    two_gaussian_witness,
)


def gaussian(rate, scale=1.0):
    return lambda pts: scale * np.exp(-rate * np.sum(pts**2, axis=1))


def heat(s, scale=1.0):
    return lambda pts: scale * heat_kernel_values(2, s, np.sum(pts**2, axis=1))


def monogenic_heat(s):
    """(x1 - e12 x2) N_c(x, s)"""
    P = PolyField.variable(2, 1) - PolyField.variable(2, 2).right_multiply(blade(3, 2))
    return lambda pts: P.evaluate(pts) * heat_kernel_values(2, s, np.sum(pts**2, axis=1))[:, None]


class TestDecayFit:
    """가우시안 감쇠율 적합 테스트"""

    def test_recovers_rate_and_prefactor(self, small_grid):
        """C e^{-p||x||^2} 적합 테스트"""
        fit = fit_gaussian_decay(sample(gaussian(0.7, 3.0), small_grid))

        assert fit.p == pytest.approx(0.7, rel=1e-10)
        assert fit.C == pytest.approx(3.0, rel=1e-8)
        assert fit.residual <= 1e-10
        assert fit.nodes >= 100

    def test_zero_field(self, small_grid):
        """영 필드 적합 오류 테스트"""
        with pytest.raises(ZeroFieldError):
            fit_gaussian_decay(zero_field(small_grid))

    def test_too_few_nodes(self, small_grid):
        """적합 점 부족 오류 테스트"""
        with pytest.raises(FitError):
            fit_gaussian_decay(sample(gaussian(0.5), small_grid), min_nodes=10**6)

    def test_noise_floor(self, small_grid):
        """경계 절단 기반 잡음 바닥 테스트"""
        assert transform_noise_floor(sample(gaussian(0.5), small_grid)) >= 1e-12
        assert transform_noise_floor(sample(gaussian(0.01), small_grid)) > 1e-3

    def test_amplitude(self, small_grid):
        """다중벡터 진폭 적합 테스트"""
        profile = np.exp(-0.5 * small_grid.radii_squared())
        field = sample(gaussian(0.5), small_grid).left_multiply(blade(3, 2) * 2.0)
        constant, residual = fit_amplitude(field, profile)

        assert constant.isclose(blade(3, 2) * 2.0, atol=1e-12)
        assert residual <= 1e-12


class TestHardy:
    """Hardy 판정 테스트"""

    def test_classify_regime(self):
        """1/4 대비 영역 분류 테스트"""
        assert classify_regime(0.25) is HardyRegime.CRITICAL
        assert classify_regime(0.2501) is HardyRegime.CRITICAL
        assert classify_regime(0.3) is HardyRegime.SUPERCRITICAL
        assert classify_regime(0.1) is HardyRegime.SUBCRITICAL

    @pytest.mark.parametrize("p", [0.5, 1.0])
    def test_gaussian_is_critical(self, small_grid, p):
        """가우시안의 pq = 1/4 와 재구성 테스트"""
        verdict = hardy_verify(sample(gaussian(p), small_grid), transform_fft, KernelSign.MINUS)

        assert verdict.regime is HardyRegime.CRITICAL
        assert abs(verdict.product - 0.25) / 0.25 <= 1e-3
        assert verdict.q == pytest.approx(1.0 / (4.0 * p), rel=1e-3)
        assert verdict.gaussian_residual <= 1e-5
        assert verdict.grade_content["0"] == pytest.approx(1.0, rel=1e-6)
        assert verdict.grade_content["2"] == pytest.approx(0.0, abs=1e-12)

    def test_two_gaussian_witness_is_subcritical(self, small_grid):
        """두 가우시안 합의 아임계 테스트"""
        verdict = hardy_verify(sample(two_gaussian_witness(), small_grid), transform_fft, KernelSign.MINUS)

        assert verdict.regime is HardyRegime.SUBCRITICAL
        assert verdict.product < 0.25
        assert verdict.gaussian_residual is None

    def test_requires_m2(self):
        """m != 2 오류 테스트"""
        field = zero_field(GridSpec(m=4, R=2.0, N=8))
        with pytest.raises(UnsupportedDimensionError):
            hardy_verify(field, transform_fft, KernelSign.MINUS)


class TestPolynomialImage:
    """다항식-가우시안 상 테스트"""

    @pytest.mark.parametrize(
        "P",
        [PolyField.constant(2, 1.0), PolyField.variable(2, 1), PolyField.radial_square(2)],
        ids=["one", "x1", "radial_square"],
    )
    def test_degree_is_preserved(self, small_grid, P):
        """deg Q = deg P 테스트"""
        report = polynomial_gaussian_image(P, 0.5, small_grid, transform_fft, KernelSign.MINUS)

        assert report.degree_match
        assert report.degree_q == P.degree
        assert report.residual <= 1e-5
        assert report.q_fit.degree == P.degree

    def test_constant_image_coefficient(self, small_grid):
        """F(e^{-δ||x||^2}) = (2δ)^{-1} e^{-||y||^2/4δ} 테스트"""
        report = polynomial_gaussian_image(PolyField.constant(2, 1.0), 0.5, small_grid, transform_fft)

        assert report.q_coefficients["0,0"][0] == pytest.approx(1.0, rel=1e-8)

    def test_invalid_arguments(self, small_grid):
        """잘못된 P 와 δ 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            polynomial_gaussian_image(PolyField.zero(2), 0.5, small_grid, transform_fft)
        with pytest.raises(InvalidParameterError):
            polynomial_gaussian_image(PolyField.monomial(2, (5, 0)), 0.5, small_grid, transform_fft)
        with pytest.raises(InvalidParameterError):
            polynomial_gaussian_image(PolyField.variable(2, 1), 4.0, small_grid, transform_fft)

    def test_trust_region_too_small(self, tiny_grid):
        """신뢰 영역 점 부족 오류 테스트"""
        with pytest.raises(TrustRegionError):
            polynomial_gaussian_image(PolyField.monomial(2, (3, 0)), 0.125, tiny_grid, transform_fft)


class TestMiyachiFunctional:
    """log⁺ 범함수 테스트"""

    def test_exact_zero(self, small_grid):
        """g = λ e^{-b||y||^2} 에서 범함수 0 테스트"""
        b, lam = 0.25, 0.05
        estimate = miyachi_functional(sample(gaussian(b, lam), small_grid), b, lam)

        assert estimate.total <= 1e-9
        assert estimate.finite

    def test_monotone_in_lambda(self, small_grid):
        """λ 증가에 따른 감소 테스트"""
        g = sample(gaussian(0.5), small_grid)
        totals = [miyachi_functional(g, 0.25, lam).total for lam in (0.05, 0.1, 0.2)]

        assert totals[0] > totals[1] > totals[2] > 0.0

    def test_radius_sweep(self, small_grid):
        """반폭 스윕 테스트"""
        estimate = miyachi_functional(sample(gaussian(0.5), small_grid), 0.25, 0.05, radii=[6.0, 8.0])

        assert list(estimate.sweep) == ["6", "8"]
        assert estimate.sweep["8"] == pytest.approx(estimate.value)

    def test_invalid_parameters(self, small_grid):
        """비양수 b, λ 오류 테스트"""
        g = sample(gaussian(0.5), small_grid)
        with pytest.raises(InvalidParameterError):
            miyachi_functional(g, 0.0, 0.05)
        with pytest.raises(InvalidParameterError):
            miyachi_functional(g, 0.25, -1.0)

    def test_critical_constant_bound(self):
        """|C| 상한 (2π)^{m/2} λ 테스트"""
        assert critical_constant_bound(0.05) == pytest.approx(2.0 * math.pi * 0.05)
        assert critical_constant_bound(1.0, m=4) == pytest.approx(4.0 * math.pi**2)


class TestMiyachiVerify:
    """Miyachi 영역별 결론 테스트"""

    def test_critical_gaussian_multiple(self, small_grid):
        """임계선 f = 2πλ N_c(., b) 테스트"""
        b, lam = 0.25, 0.05
        f = sample(heat(b, 2.0 * math.pi * lam), small_grid)
        report = miyachi_verify(f, 1.0 / (4.0 * b), b, lam, transform_fft, KernelSign.MINUS)

        assert report.regime is HardyRegime.CRITICAL
        assert report.conclusion is MiyachiConclusion.GAUSSIAN_MULTIPLE
        assert report.integral <= 1e-6
        assert report.constant_norm == pytest.approx(critical_constant_bound(lam), rel=1e-9)
        assert report.passed

    def test_supercritical_divergence(self, small_grid):
        """초임계 적분 발산 테스트"""
        b, lam = 0.25, 0.05
        f = sample(heat(b / 2.0), small_grid)
        report = miyachi_verify(f, 1.0 / (2.0 * b), b, lam, transform_fft, KernelSign.MINUS)

        assert report.regime is HardyRegime.SUPERCRITICAL
        assert report.conclusion is MiyachiConclusion.ZERO
        assert report.divergence_ratio >= 2.0
        assert math.isinf(report.tail)
        assert report.passed

    def test_subcritical_family(self, small_grid):
        """아임계 P N_c(., δ) 유한성 테스트"""
        f = sample(monogenic_heat(0.375), small_grid)
        report = miyachi_verify(f, 0.5, 0.25, 0.05, transform_fft, KernelSign.MINUS)

        assert report.regime is HardyRegime.SUBCRITICAL
        assert report.conclusion is MiyachiConclusion.COUNTEREXAMPLE_FAMILY
        assert report.hypothesis_linf or report.hypothesis_l1
        assert report.integral > 0.0
        assert report.finite_flag
        assert report.passed
        assert report.reason is None

    def test_subcritical_without_finite_functional(self, small_grid):
        """아임계에서 범함수 발산 시 결론 없음 테스트"""
        b, lam = 0.25, 0.05
        f = sample(heat(b / 2.0), small_grid)
        report = miyachi_verify(f, 0.5, b, lam, transform_fft, KernelSign.MINUS)

        assert report.regime is HardyRegime.SUBCRITICAL
        assert report.hypothesis_linf
        assert not report.finite_flag
        assert report.conclusion is MiyachiConclusion.NO_CONCLUSION
        assert "outside the subcritical family" in report.reason
        assert report.passed

    def test_zero_field(self, small_grid):
        """영 필드 테스트"""
        report = miyachi_verify(zero_field(small_grid), 1.0, 0.25, 0.05, transform_fft, KernelSign.MINUS)

        assert report.conclusion is MiyachiConclusion.ZERO
        assert report.integral == 0.0
        assert report.passed


class TestCorollary:
    """r 거듭제곱 적분 따름정리 테스트"""

    def test_zero_field(self, small_grid):
        """영 필드 테스트"""
        report = corollary_64_check(zero_field(small_grid), 0.5, 0.25, 2.0, transform_fft, KernelSign.MINUS)

        assert report.expected == report.observed == "zero"
        assert report.integral == 0.0
        assert report.passed

    def test_subcritical_is_finite(self, small_grid):
        """아임계 적분 유한 테스트"""
        f = sample(monogenic_heat(0.375), small_grid)
        report = corollary_64_check(f, 0.5, 0.25, 2.0, transform_fft, KernelSign.MINUS)

        assert report.expected == "finite"
        assert report.observed == "finite"
        assert report.passed

    def test_critical_line(self, small_grid):
        """임계선 r=1 발산, r=inf 유계 테스트"""
        b = 0.25
        f = sample(heat(b), small_grid)
        integral = corollary_64_check(f, 1.0 / (4.0 * b), b, 1.0, transform_fft, KernelSign.MINUS)
        bounded = corollary_64_check(f, 1.0 / (4.0 * b), b, math.inf, transform_fft, KernelSign.MINUS)

        assert integral.expected == integral.observed == "divergent"
        assert bounded.expected == "bounded"
        assert bounded.observed == "finite"
        assert bounded.integral == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-6)
        assert integral.passed and bounded.passed

    def test_supercritical_diverges(self, small_grid):
        """초임계 발산 테스트"""
        b = 0.25
        f = sample(heat(b / 2.0), small_grid)
        report = corollary_64_check(f, 1.0 / (2.0 * b), b, 2.0, transform_fft, KernelSign.MINUS)

        assert report.observed == "divergent"
        assert report.passed

    def test_invalid_exponent(self, small_grid):
        """비양수 r 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            corollary_64_check(zero_field(small_grid), 0.5, 0.25, 0.0, transform_fft, KernelSign.MINUS)
