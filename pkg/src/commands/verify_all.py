import logging
from typing import List

from src.commands.context import CommandContext
from src.commands.corollary import corollary_rows
from src.commands.hardy import hardy_rows
from src.commands.heat import heat_rows
from src.commands.miyachi import miyachi_rows
from src.commands.transform import transform_rows
from src.models.common import CheckRow

logger = logging.getLogger(__name__)

# bench 는 시간 측정이라 결정적 보고서에서 제외
SUITE = (transform_rows, heat_rows, hardy_rows, miyachi_rows, corollary_rows)


def verify_all_rows(ctx: CommandContext) -> List[CheckRow]:
    """수용 검사 전체를 정해진 순서로 실행"""
    ctx.require_m2()
    rows: List[CheckRow] = []
    for command in SUITE:
        rows.extend(command(ctx))
    logger.info(f"Acceptance suite: {sum(r.passed for r in rows if r.gating)}/{len(rows)} passed")
    return rows
