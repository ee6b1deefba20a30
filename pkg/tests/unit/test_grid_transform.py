import numpy as np
import pytest

from src.core.errors import DimensionMismatchError, InvalidParameterError, NonRadialFieldError
from src.models.grid import GridSpec
from src.services.clifford_core import generator
from src.services.grid_transform import (
    SampledField,
    b_norm,
    is_radial,
    load_field,
    lp_norm,
    radial_convolve,
    radial_deviation,
    radial_profile,
    sample,
    save_field,
    zero_field,
)
from src.services.heat import heat_kernel_values


def gaussian(rate):
    return lambda pts: np.exp(-rate * np.sum(pts**2, axis=1))


class TestSampling:
    """격자 표본화 테스트"""

    def test_scalar_function_fills_scalar_component(self, tiny_grid):
        """스칼라 함수 표본화 테스트"""
        field = sample(gaussian(0.5), tiny_grid)

        assert field.values.shape == (16, 16, 4)
        np.testing.assert_array_equal(field.values[..., 1:], 0.0)

    def test_constant_and_multivector_functions(self, tiny_grid):
        """상수와 다중벡터 값 함수 표본화 테스트"""
        constant = sample(lambda pts: 2.0, tiny_grid)
        assert np.all(constant.component(0) == 2.0)

        def vector_valued(pts):
            values = np.zeros((pts.shape[0], 4))
            values[:, 1] = pts[:, 0]
            values[:, 2] = pts[:, 1]
            return values

        field = sample(vector_valued, tiny_grid)
        np.testing.assert_allclose(field.component(1)[:, 0], tiny_grid.axis_nodes())

    def test_wrong_output_shape(self, tiny_grid):
        """잘못된 출력 모양 오류 테스트"""
        with pytest.raises(DimensionMismatchError):
            sample(lambda pts: np.zeros((pts.shape[0], 3)), tiny_grid)
        with pytest.raises(DimensionMismatchError):
            SampledField(tiny_grid, np.zeros((15, 16, 4)))

    def test_grid_mismatch(self, tiny_grid, small_grid):
        """격자 불일치 오류 테스트"""
        with pytest.raises(DimensionMismatchError):
            zero_field(tiny_grid) + zero_field(small_grid)

    def test_left_multiply(self, tiny_grid):
        """왼쪽 다중벡터 곱 테스트"""
        field = sample(gaussian(0.5), tiny_grid).left_multiply(generator(1, 2))

        np.testing.assert_array_equal(field.component(0), 0.0)
        assert field.max_norm() == pytest.approx(np.exp(-0.5 * 2 * (tiny_grid.h / 2) ** 2))

    def test_field_is_immutable(self, tiny_grid):
        """표본장 불변성 테스트"""
        field = zero_field(tiny_grid)
        with pytest.raises(ValueError):
            field.values[0, 0, 0] = 1.0


class TestNorms:
    """격자 노름 테스트"""

    def test_gaussian_norms(self, small_grid):
        """가우시안 L1, L2, L∞ 노름 테스트"""
        field = sample(gaussian(0.5), small_grid)

        assert lp_norm(field, 1) == pytest.approx(2.0 * np.pi, rel=1e-10)
        assert lp_norm(field, 2) == pytest.approx(np.sqrt(np.pi), rel=1e-10)
        assert lp_norm(field, float("inf")) == pytest.approx(np.exp(-small_grid.h**2 / 4.0))
        assert lp_norm(field, "inf") == lp_norm(field, float("inf"))

    def test_b_norm_equals_l1_for_m2(self, small_grid):
        """m=2 에서 B 노름 = L1 노름 테스트"""
        field = sample(gaussian(1.0), small_grid)
        assert b_norm(field) == pytest.approx(lp_norm(field, 1), rel=1e-14)

    def test_zero_field(self, small_grid):
        """영 필드 노름 테스트"""
        field = zero_field(small_grid)

        assert lp_norm(field, 2) == 0.0
        assert field.is_zero()

    def test_invalid_order(self, small_grid):
        """p < 1 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            lp_norm(zero_field(small_grid), 0.5)

    def test_large_order_does_not_overflow(self, small_grid):
        """큰 p 에서의 넘침 방지 테스트"""
        field = sample(gaussian(0.5), small_grid) * 1e150
        assert np.isfinite(lp_norm(field, 4))

    def test_tiny_components_keep_norm(self):
        """1e-154 아래 성분의 노름 보존 테스트"""
        grid = GridSpec(m=2, R=10.0, N=256)
        field = sample(lambda pts: heat_kernel_values(2, 0.125, np.sum(pts**2, axis=1)), grid)
        norms = field.norms()
        nonzero = np.any(field.values != 0.0, axis=-1)

        assert np.all(norms[nonzero] > 0.0)
        corner = field.values[0, 0]
        assert norms[0, 0] == pytest.approx(abs(corner[0]), rel=1e-14)


class TestRadialStructure:
    """방사 대칭 판정과 방사 윤곽 테스트"""

    def test_gaussian_is_radial(self, small_grid):
        """가우시안 방사 대칭 테스트"""
        assert is_radial(sample(gaussian(0.5), small_grid))

    def test_coordinate_field_is_not_radial(self, small_grid):
        """x1 e^{-||x||^2} 비방사 테스트"""
        field = sample(lambda pts: pts[:, 0] * np.exp(-np.sum(pts**2, axis=1)), small_grid)
        assert radial_deviation(field) > 0.1
        assert not is_radial(field)

    def test_radial_profile(self, small_grid):
        """껍질별 윤곽 테스트"""
        radii, norms = radial_profile(sample(gaussian(0.5), small_grid))

        assert np.all(np.diff(radii) > 0)
        assert radii[0] == pytest.approx(small_grid.h / np.sqrt(2.0))
        np.testing.assert_allclose(norms, np.exp(-0.5 * radii**2), rtol=1e-12)


class TestRadialConvolution:
    """방사 합성곱 테스트"""

    def test_gaussian_convolution(self, small_grid):
        """e^{-r^2/2} * e^{-r^2/2} = π e^{-r^2/4} 테스트"""
        f = sample(gaussian(0.5), small_grid)
        result = radial_convolve(f, f)
        expected = sample(lambda pts: np.pi * np.exp(-0.25 * np.sum(pts**2, axis=1)), small_grid)

        assert (result - expected).max_norm() <= 1e-8

    def test_normalized_convolution(self, small_grid):
        """(2π)^{-m/2} 정규화 인자 테스트"""
        f = sample(gaussian(0.5), small_grid)
        plain = radial_convolve(f, f)
        normalized = radial_convolve(f, f, normalized=True)

        assert (normalized - plain * (1.0 / (2.0 * np.pi))).max_norm() <= 1e-14

    def test_multivector_right_factor(self, small_grid):
        """오른쪽 인자의 다중벡터 성분 보존 테스트"""
        f = sample(gaussian(0.5), small_grid)
        g = f.left_multiply(generator(2, 2))
        result = radial_convolve(f, g)

        np.testing.assert_allclose(result.component(2), radial_convolve(f, f).component(0), atol=1e-14)
        np.testing.assert_array_equal(result.component(0), 0.0)

    def test_non_radial_left_factor(self, small_grid):
        """비방사 왼쪽 인자 오류 테스트"""
        f = sample(lambda pts: pts[:, 0] * np.exp(-np.sum(pts**2, axis=1)), small_grid)
        with pytest.raises(NonRadialFieldError):
            radial_convolve(f, f)


class TestSerialization:
    """필드 저장/불러오기 테스트"""

    @pytest.mark.parametrize("fmt", ["csv", "binary"])
    def test_save_and_load(self, tmp_path, tiny_grid, fmt):
        """저장 후 동일 필드 복원 테스트"""
        field = sample(lambda pts: np.exp(-np.sum(pts**2, axis=1)) / 3.0, tiny_grid).left_multiply(
            generator(1, 2)
        )
        path = save_field(field, tmp_path / f"field.{fmt}", fmt)
        loaded = load_field(path, fmt)

        assert loaded.grid == tiny_grid
        np.testing.assert_array_equal(loaded.values, field.values)

    def test_csv_header(self, tmp_path, tiny_grid):
        """CSV 머리 행 테스트"""
        path = save_field(zero_field(tiny_grid), tmp_path / "zero.csv")
        lines = path.read_text(encoding="utf-8").splitlines()

        assert lines[0] == "2,4.0,16"
        assert len(lines) == 1 + 16 * 16

    def test_unknown_format(self, tmp_path, tiny_grid):
        """알 수 없는 형식 오류 테스트"""
        with pytest.raises(InvalidParameterError):
            save_field(zero_field(tiny_grid), tmp_path / "field.npy", "npy")


class TestGridSpec:
    """격자 명세 테스트"""

    def test_geometry(self):
        """보폭, 가중치, 격자점 테스트"""
        grid = GridSpec(m=2, R=4.0, N=16)

        assert grid.h == 0.5
        assert grid.weight == 0.25
        assert grid.points().shape == (256, 2)
        assert grid.axis_nodes()[0] == -3.75

    def test_shell_keys_match_radii(self, tiny_grid):
        """정확한 껍질 키 테스트"""
        np.testing.assert_allclose(
            tiny_grid.radii_squared(), (tiny_grid.h / 2.0) ** 2 * tiny_grid.shell_keys(), rtol=1e-14
        )

    def test_odd_points_rejected(self):
        """홀수 N 오류 테스트"""
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            GridSpec(m=2, R=4.0, N=15)
