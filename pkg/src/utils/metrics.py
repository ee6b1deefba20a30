import logging
from pathlib import Path
from typing import Iterable

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

logger = logging.getLogger(__name__)


class ToolkitMetrics:
    """실행 지표 (보고서와 분리, 선택적으로 textfile 로 기록)"""

    def __init__(self) -> None:
        self.registry = CollectorRegistry()
        self.transform_seconds = Histogram(
            "clifford_transform_seconds",
            "Wall time of one Clifford-Fourier transform",
            ["method"],
            registry=self.registry,
        )
        self.command_seconds = Histogram(
            "clifford_command_seconds",
            "Wall time of one CLI command",
            ["command"],
            registry=self.registry,
        )
        self.checks_total = Counter(
            "clifford_checks_total",
            "Checks evaluated",
            ["command", "outcome"],
            registry=self.registry,
        )
        self.engine_fallbacks = Counter(
            "clifford_engine_fallbacks_total",
            "Transforms served by the fallback engine",
            ["primary"],
            registry=self.registry,
        )

    def observe_transform(self, method: str, seconds: float) -> None:
        self.transform_seconds.labels(method=method).observe(seconds)

    def observe_command(self, command: str, seconds: float) -> None:
        self.command_seconds.labels(command=command).observe(seconds)

    def count_checks(self, command: str, outcomes: Iterable[bool]) -> None:
        for passed in outcomes:
            self.checks_total.labels(command=command, outcome="pass" if passed else "fail").inc()

    def count_fallback(self, primary: str) -> None:
        self.engine_fallbacks.labels(primary=primary).inc()

    def write(self, path: str) -> None:
        if not path:
            return
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(path, self.registry)
        logger.info(f"Metrics written to {path}")


metrics = ToolkitMetrics()
