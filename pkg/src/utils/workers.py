import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from src.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = get_settings().CLIFFORD_WORKERS
    return max(1, int(workers))


def map_blocks(func: Callable[[T], R], blocks: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """블록 단위 작업을 입력 순서대로 실행

    블록 경계는 호출자가 정하므로 스레드 수와 무관하게 같은 결과를 낸다.
    """
    workers = resolve_workers(workers)
    if workers == 1 or len(blocks) <= 1:
        return [func(block) for block in blocks]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, blocks))


def block_ranges(total: int, block_size: int) -> List[range]:
    block_size = max(1, int(block_size))
    return [range(start, min(start + block_size, total)) for start in range(0, total, block_size)]
