import logging
import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.core.config import get_settings
from src.core.errors import CliffordToolkitError, ConfigError
from src.models.common import CheckRow
from src.models.config import RunConfig
from src.models.grid import GridSpec
from src.models.transform import BenchmarkRecord
from src.models.uncertainty import DecayFit
from src.services.grid_transform import SampledField
from src.services.transform_engine import QuadratureEngine, TransformEngineWrapper, create_transform_engine

logger = logging.getLogger(__name__)

PlotEntry = Tuple[str, SampledField, Optional[DecayFit]]


class CommandContext:
    """명령 하나가 공유하는 격자, 엔진, 난수, 플롯 데이터"""

    def __init__(self, config: RunConfig):
        settings = get_settings()
        self.config = config
        self.grid: GridSpec = config.grid
        self.oracle_grid = GridSpec(m=2, R=settings.ORACLE_GRID_R, N=settings.ORACLE_GRID_N)
        self.engine: TransformEngineWrapper = create_transform_engine(config.method, config.workers)
        self.oracle = QuadratureEngine(workers=config.workers)
        self.sign = config.sign
        self.rng = np.random.default_rng(config.seed)
        self.plots: List[PlotEntry] = []
        self.bench_records: List[BenchmarkRecord] = []

    def require_m2(self) -> None:
        if self.grid.m != 2:
            raise ConfigError(f"command '{self.config.command.value}' needs m=2, got m={self.grid.m}")

    def add_plot(self, name: str, field: SampledField, fit: Optional[DecayFit] = None) -> None:
        if self.config.plotdata:
            self.plots.append((name, field, fit))


def checked(
    rows: List[CheckRow],
    id: str,
    tolerance: float,
    params: Dict[str, Any],
    evaluate: Callable[[], Any],
    gating: bool = True,
) -> None:
    """검사 하나를 실행해 행을 추가, 수치 오류는 실패 행으로 남긴다

    evaluate 는 값 하나 또는 (값, 통과 여부[, 추가 매개변수]) 를 돌려준다.
    """
    try:
        outcome = evaluate()
    except CliffordToolkitError as e:
        failed_row(rows, id, tolerance, params, e, gating)
        return

    passed = None
    extra: Dict[str, Any] = {}
    if isinstance(outcome, tuple):
        value, passed = outcome[0], outcome[1]
        if len(outcome) > 2:
            extra = outcome[2]
    else:
        value = outcome
    rows.append(CheckRow.create(id, value, tolerance, dict(params, **extra), passed=passed, gating=gating))


def failed_row(
    rows: List[CheckRow],
    id: str,
    tolerance: float,
    params: Dict[str, Any],
    error: CliffordToolkitError,
    gating: bool = True,
) -> None:
    logger.error(f"Check {id} raised {type(error).__name__}: {error}")
    failed = dict(params, error=type(error).__name__)
    rows.append(CheckRow.create(id, math.nan, tolerance, failed, passed=False, gating=gating))
