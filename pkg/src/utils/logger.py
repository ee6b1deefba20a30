import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from src.core.config import get_settings

CONSOLE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"


def setup_logger(level: Optional[str] = None) -> None:
    """루트 로거 설정 (콘솔은 stderr, LOG_FILE 이 비어 있으면 파일 로그 생략)"""
    settings = get_settings()
    level_name = (level or settings.LOG_LEVEL).upper()

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level_name, logging.INFO))

    # 기존 핸들러 제거 (같은 프로세스에서 여러 번 실행)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()

    # 보고서와 섞이지 않도록 stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root_logger.addHandler(console_handler)

    if settings.LOG_FILE:
        log_path = Path(settings.LOG_FILE)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_path,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        root_logger.addHandler(file_handler)

    # 수치 라이브러리 로그는 경고 이상만
    for name in ("numpy", "scipy", "matplotlib", "prometheus_client"):
        logging.getLogger(name).setLevel(logging.WARNING)
