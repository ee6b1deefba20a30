import csv
import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from src.models.common import CheckRow, RunSummary
from src.models.transform import BenchmarkRecord
from src.models.uncertainty import DecayFit
from src.services.grid_transform import SampledField, radial_profile, save_field

logger = logging.getLogger(__name__)

CSV_HEADER = ["id", "params", "value", "tolerance", "pass"]


def _number(value: float) -> str:
    return repr(float(value))


class ReportService:
    """CSV 검증표, JSON 요약, 플롯용 열 파일 작성

    같은 입력이면 바이트 단위로 같은 파일을 쓴다 (키 정렬, repr 숫자, 고정 줄끝).
    """

    def __init__(self, output_dir: Union[str, Path]):
        self.output_dir = Path(output_dir)

    def _path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_rows(self, command: str, rows: List[CheckRow]) -> Path:
        path = self._path(f"{command}.csv")
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in rows:
                writer.writerow(
                    [
                        row.id,
                        json.dumps(row.params, sort_keys=True),
                        _number(row.value),
                        _number(row.tolerance),
                        "true" if row.passed else "false",
                    ]
                )
        logger.info(f"Wrote {len(rows)} rows to {path}")
        return path

    def write_summary(self, summary: RunSummary) -> Path:
        path = self._path(f"{summary.command}_summary.json")
        path.write_text(json.dumps(summary.model_dump(mode="json"), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        return path

    def write_bench(self, records: List[BenchmarkRecord]) -> Path:
        """시간 표 (실행마다 달라지므로 결정성 대상이 아님)"""
        path = self._path("bench_timings.json")
        payload = [r.model_dump(mode="json") for r in records]
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        return path

    def emit_plotdata(self, name: str, field: SampledField, fit: Optional[DecayFit] = None) -> List[Path]:
        """<name>_profile.dat (r, ||f||) 와 적합이 있으면 <name>_decay.dat (r, log||f||, log C - p r^2)"""
        radii, norms = radial_profile(field)
        keep = norms > 0
        radii, norms = radii[keep], norms[keep]

        profile = self._path(f"{name}_profile.dat")
        lines = ["# r norm"] + [f"{r:.17g} {n:.17g}" for r, n in zip(radii, norms)]
        profile.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths = [profile]

        if fit is not None:
            decay = self._path(f"{name}_decay.dat")
            fitted = fit.log_model(radii**2)
            lines = ["# r log_norm fit_line"] + [
                f"{r:.17g} {ln:.17g} {fl:.17g}" for r, ln, fl in zip(radii, np.log(norms), fitted)
            ]
            decay.write_text("\n".join(lines) + "\n", encoding="utf-8")
            paths.append(decay)
        logger.debug(f"Plot data for {name}: {[str(p) for p in paths]}")
        return paths

    def write_field(self, name: str, field: SampledField) -> Path:
        """<name>_field.csv, load_field 로 다시 읽을 수 있는 격자 샘플 전체"""
        return save_field(field, self._path(f"{name}_field.csv"))
