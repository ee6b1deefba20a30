import argparse
import logging
import sys
import time
from typing import Any, Dict, Optional, Sequence

from decouple import RepositoryEnv
from pydantic import ValidationError

from src.commands import COMMANDS
from src.commands.context import CommandContext
from src.core.config import get_settings, safe_split
from src.core.errors import ConfigError
from src.middleware.logging import LoggingMiddleware
from src.models.common import RunSummary
from src.models.config import Command, RunConfig
from src.services.report_service import ReportService
from src.utils.logger import setup_logger
from src.utils.metrics import metrics

logger = logging.getLogger(__name__)

EXIT_CONFIG = 1

# 플래그 이름 -> RunConfig 필드
FLAG_FIELDS = (
    "m", "R", "N", "sign", "method", "p", "a", "b", "lam", "delta",
    "r", "s", "t", "j", "k", "l", "output", "seed", "workers", "plotdata",
)


class ToolkitArgumentParser(argparse.ArgumentParser):
    """인자 오류를 종료 코드 1 의 ConfigError 로"""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = ToolkitArgumentParser(
        prog="clifford-toolkit",
        description="Clifford-Fourier transform and uncertainty-principle verification suite",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("command", choices=[c.value for c in Command], help="experiment to run")
    parser.add_argument("--config", help="key=value run configuration file")
    parser.add_argument("--m", type=int, help="dimension (even)")
    parser.add_argument("--R", type=float, help="grid half-width")
    parser.add_argument("--N", type=str, help="points per axis, comma list for bench")
    parser.add_argument("--sign", choices=["plus", "minus"], help="kernel sign")
    parser.add_argument("--method", choices=["fft", "quadrature"], help="transform path")
    parser.add_argument("--p", type=float, help="Gaussian decay rate")
    parser.add_argument("--a", type=float)
    parser.add_argument("--b", type=float)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--r", type=float, help="corollary exponent (inf allowed)")
    parser.add_argument("--s", type=float, help="heat time")
    parser.add_argument("--t", type=float, help="second heat time")
    parser.add_argument("--j", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--output", help="report directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--workers", type=int, help="worker threads (overrides CLIFFORD_WORKERS)")
    parser.add_argument("--plotdata", action="store_true", help="emit columnar profile files")
    parser.add_argument("--log-level", dest="log_level", help="override LOG_LEVEL")
    return parser


def _defaults() -> Dict[str, Any]:
    settings = get_settings()
    return {
        "m": settings.GRID_M,
        "R": settings.GRID_R,
        "N": settings.GRID_N,
        "bench_sizes": settings.bench_grid_sizes(),
        "sign": settings.KERNEL_SIGN,
        "method": settings.TRANSFORM_METHOD,
        "output": settings.OUTPUT_DIR,
        "seed": settings.SEED,
        "workers": settings.CLIFFORD_WORKERS,
    }


def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        data = dict(RepositoryEnv(path).data)
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    known = set(RunConfig.model_fields) | {"lambda"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(unknown)}")
    if "lambda" in data:
        data["lam"] = data.pop("lambda")
    logger.debug(f"Config file {path}: {sorted(data)}")
    return data


def _apply_sizes(values: Dict[str, Any], command: Command) -> None:
    """N 이 쉼표 목록이면 bench 격자 크기, 값 하나면 기본 격자와 bench 둘 다"""
    raw = values.get("N")
    if raw is None or isinstance(raw, int):
        return
    try:
        sizes = [int(n) for n in safe_split(str(raw), [])]
    except ValueError as e:
        raise ConfigError(f"N must be an integer or a comma list of integers, got {raw!r}") from e
    if not sizes:
        raise ConfigError("N is empty")
    if len(sizes) > 1 and command is not Command.BENCH:
        raise ConfigError(f"a list of grid sizes is only accepted by bench, got N={raw}")
    values["N"] = sizes[-1]
    values["bench_sizes"] = sizes


def load_config(args: argparse.Namespace) -> RunConfig:
    """설정 기본값 < 설정 파일 < 명령행 플래그"""
    command = Command(args.command)
    values = _defaults()
    if getattr(args, "config", None):
        values.update(_read_config_file(args.config))
    values.update({name: getattr(args, name) for name in FLAG_FIELDS if hasattr(args, name)})
    _apply_sizes(values, command)
    values["command"] = command
    return RunConfig(**values)


def run(config: RunConfig) -> int:
    """명령 실행, 보고서 작성, 종료 코드 반환"""
    start = time.time()
    ctx = CommandContext(config)
    command = COMMANDS[config.command]
    handler = LoggingMiddleware(lambda _: command(ctx))
    rows = handler(config)

    reports = ReportService(config.output)
    reports.write_rows(config.command.value, rows)
    summary = RunSummary.from_rows(config.command.value, rows, config.seed, config.grid.describe())
    reports.write_summary(summary)
    if ctx.bench_records:
        reports.write_bench(ctx.bench_records)
    for name, field, fit in ctx.plots:
        reports.emit_plotdata(name, field, fit)
        reports.write_field(name, field)
    metrics.write(get_settings().METRICS_FILE)

    logger.info(
        f"{config.command.value}: {summary.passed} passed, {summary.failed} failed, "
        f"{summary.informational} informational in {time.time() - start:.1f}s"
    )
    return summary.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigError as e:
        setup_logger()
        logger.error(f"Invalid arguments: {e}")
        return EXIT_CONFIG

    setup_logger(getattr(args, "log_level", None))
    try:
        config = load_config(args)
        return run(config)
    except (ConfigError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.error(f"Unhandled exception: {str(e)}", exc_info=True)
        return EXIT_CONFIG


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
