"""Bounded worker pools for CPU-bound simulation work."""

import asyncio
import atexit
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

from config.log_setup import get_logger
from config.settings import ExecutorKind, get_config

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_POOLS: dict[int, ProcessPoolExecutor] = {}


def process_pool(workers: int) -> ProcessPoolExecutor:
    """Shared pool of `workers` spawned processes, created on first use."""
    pool = _POOLS.get(workers)
    if pool is None:
        logger.debug("Starting a pool of %d worker processes", workers)
        pool = ProcessPoolExecutor(
            max_workers=workers, mp_context=multiprocessing.get_context("spawn")
        )
        _POOLS[workers] = pool
    return pool


@atexit.register
def shutdown_pools() -> None:
    for pool in _POOLS.values():
        pool.shutdown(cancel_futures=True)
    _POOLS.clear()


async def map_ordered(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: Optional[int] = None,
    executor: Optional[ExecutorKind] = None,
) -> list[R]:
    """Apply `func` to every item; results keep input order.

    The process executor runs items in a spawned pool, so `func` and the items must
    pickle. A single worker, a single item or the thread executor run on threads.
    """
    cfg = get_config()
    limit = max(1, workers or cfg.worker_count)
    kind = executor or cfg.executor
    items = list(items)

    if kind == "process" and limit > 1 and len(items) > 1:
        loop = asyncio.get_running_loop()
        pool = process_pool(limit)
        return list(await asyncio.gather(*(loop.run_in_executor(pool, func, i) for i in items)))

    semaphore = asyncio.Semaphore(limit)

    async def run(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(func, item)

    return list(await asyncio.gather(*(run(item) for item in items)))


def chunked(count: int, size: int) -> list[range]:
    """Contiguous index blocks covering range(count)."""
    return [range(start, min(start + size, count)) for start in range(0, count, size)]
