import json
import logging
import time
from typing import Callable, List

from src.models.common import CheckRow
from src.models.config import RunConfig
from src.utils.metrics import metrics

logger = logging.getLogger(__name__)

CommandHandler = Callable[[RunConfig], List[CheckRow]]


class LoggingMiddleware:
    """명령 실행 로깅 미들웨어"""

    def __init__(self, handler: CommandHandler):
        self.handler = handler

    def __call__(self, config: RunConfig) -> List[CheckRow]:
        return self.dispatch(config)

    def dispatch(self, config: RunConfig) -> List[CheckRow]:
        start_time = time.time()
        command = config.command.value

        # 실행 정보 로깅
        request_info = {
            "command": command,
            "params": config.parameters(),
            "workers": config.workers,
        }
        logger.info(f"Command: {json.dumps(request_info, sort_keys=True)}")

        try:
            rows = self.handler(config)
        except Exception as e:
            processing_time = time.time() - start_time
            logger.error(f"Command failed: {command} - Error: {str(e)} - Time: {processing_time:.3f}s")
            raise

        processing_time = time.time() - start_time
        failed = [r.id for r in rows if r.gating and not r.passed]
        for row in rows:
            if row.gating and not row.passed:
                logger.error(f"Check failed: {row.id} value={row.value:.6g} tolerance={row.tolerance:.3g}")

        response_info = {
            "command": command,
            "rows": len(rows),
            "failed": len(failed),
            "processing_time": round(processing_time, 3),
        }
        logger.info(f"Result: {json.dumps(response_info)}")

        metrics.observe_command(command, processing_time)
        metrics.count_checks(command, (r.passed for r in rows if r.gating))
        return rows
