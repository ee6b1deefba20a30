import csv
import json

import numpy as np

from src.models.common import CheckRow, RunSummary
from src.models.transform import BenchmarkRecord, TransformMethod
from src.models.uncertainty import DecayFit
from src.services.grid_transform import load_field, sample, zero_field
from src.services.report_service import CSV_HEADER, ReportService


def _gaussian(grid):
    return sample(lambda pts: np.exp(-0.5 * np.sum(pts**2, axis=1)), grid)


class TestRowReport:
    """CSV 검증표 테스트"""

    def test_csv_layout(self, output_dir):
        """헤더, 정렬된 params, repr 숫자, true/false 테스트"""
        rows = [
            CheckRow.create("heat.mass.m2", 1.5e-9, 1e-6, {"s": 1.0, "m": 2}),
            CheckRow.create("heat.positivity", 2.0, 1.0),
        ]
        path = ReportService(output_dir).write_rows("heat", rows)

        assert path.name == "heat.csv"
        with path.open(newline="", encoding="utf-8") as handle:
            table = list(csv.reader(handle))

        assert table[0] == CSV_HEADER
        assert table[1] == ["heat.mass.m2", '{"m": 2, "s": 1.0}', "1.5e-09", "1e-06", "true"]
        assert table[2] == ["heat.positivity", "{}", "2.0", "1.0", "false"]
        assert b"\r\n" not in path.read_bytes()

    def test_same_rows_same_bytes(self, tmp_path):
        """같은 입력 같은 바이트 테스트"""
        rows = [CheckRow.create("a", 0.1 + 0.2, 1.0, {"z": 1, "a": [1, 2]})]
        first = ReportService(tmp_path / "one").write_rows("x", rows)
        second = ReportService(tmp_path / "two").write_rows("x", rows)

        assert first.read_bytes() == second.read_bytes()


class TestSummaryReport:
    """JSON 요약 테스트"""

    def test_summary(self, output_dir):
        """요약 파일과 종료 코드 테스트"""
        rows = [CheckRow.create("ok", 0.0, 1.0), CheckRow.create("bad", 3.0, 1.0)]
        summary = RunSummary.from_rows("hardy", rows, 0, {"m": 2, "R": 8.0, "N": 64})
        path = ReportService(output_dir).write_summary(summary)

        payload = json.loads(path.read_text(encoding="utf-8"))
        assert path.name == "hardy_summary.json"
        assert payload["exit_code"] == 2
        assert payload["failed_ids"] == ["bad"]
        assert payload["grid"] == {"N": 64, "R": 8.0, "m": 2}

    def test_bench(self, output_dir):
        """시간 표 파일 테스트"""
        records = [BenchmarkRecord(method=TransformMethod.FFT, N=64, seconds=0.01, max_error=1e-12)]
        path = ReportService(output_dir).write_bench(records)

        payload = json.loads(path.read_text(encoding="utf-8"))
        assert path.name == "bench_timings.json"
        assert payload[0]["method"] == "fft"
        assert payload[0]["N"] == 64


class TestPlotData:
    """플롯용 열 파일 테스트"""

    def test_zero_field_has_header_only(self, tiny_grid, output_dir):
        """영 필드는 헤더만 테스트"""
        paths = ReportService(output_dir).emit_plotdata("zero", zero_field(tiny_grid))

        assert len(paths) == 1
        assert paths[0].read_text(encoding="utf-8") == "# r norm\n"

    def test_gaussian_profile(self, tiny_grid, output_dir):
        """가우스 프로파일 단조 감소 테스트"""
        (path,) = ReportService(output_dir).emit_plotdata("gauss", _gaussian(tiny_grid))

        data = np.loadtxt(path)
        assert path.name == "gauss_profile.dat"
        assert np.all(np.diff(data[:, 0]) > 0)
        assert np.all(np.diff(data[:, 1]) < 0)

    def test_decay_file(self, tiny_grid, output_dir):
        """적합 직선 파일 테스트"""
        fit = DecayFit(C=1.0, p=0.5, residual=0.0, nodes=100)
        paths = ReportService(output_dir).emit_plotdata("gauss", _gaussian(tiny_grid), fit)

        assert [p.name for p in paths] == ["gauss_profile.dat", "gauss_decay.dat"]
        data = np.loadtxt(paths[1])
        np.testing.assert_allclose(data[:, 1], data[:, 2], atol=1e-12)

    def test_field_file_loads_back(self, tiny_grid, output_dir):
        """격자 샘플 파일 재적재 테스트"""
        field = _gaussian(tiny_grid)
        path = ReportService(output_dir).write_field("gauss", field)

        assert path == output_dir / "gauss_field.csv"
        loaded = load_field(path)
        assert loaded.grid == tiny_grid
        np.testing.assert_array_equal(loaded.values, field.values)
