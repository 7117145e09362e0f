"""Shared helpers: subset bitmasks, bounded concurrency, JSON and logging."""

import asyncio
import json
import logging
import time
from contextlib import contextmanager
from itertools import combinations
from typing import Any, Awaitable, Callable, Iterable, Iterator, Sequence, TypeVar

from pydantic import BaseModel

T = TypeVar("T")
R = TypeVar("R")


##########################
# Vertex subsets as bitmasks
##########################
def mask_of(vertices: Iterable[int]) -> int:
    """Encode a set of 1-based vertex labels as a bitmask."""
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Decode a bitmask into its ascending 1-based vertex labels."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks_of_size(universe: int, size: int) -> Iterator[int]:
    """Yield every submask of ``universe`` with ``size`` bits, in lexicographic label order."""
    for combo in combinations(members(universe), size):
        yield mask_of(combo)


def full_mask(m: int) -> int:
    return (1 << m) - 1


def inversions_between(first: int, second: int) -> int:
    """Count pairs (a, b) with a in ``first``, b in ``second`` and a > b."""
    count = 0
    for a in members(first):
        count += popcount(second & ((1 << (a - 1)) - 1))
    return count


##########################
# Concurrency
##########################
async def gather_with_concurrency(limit: int, *calls: Callable[[], Awaitable[R]]) -> list[R]:
    """Await the given coroutine factories with at most ``limit`` in flight."""
    semaphore = asyncio.Semaphore(max(1, limit))

    async def run(call: Callable[[], Awaitable[R]]) -> R:
        async with semaphore:
            return await call()

    return list(await asyncio.gather(*(run(call) for call in calls)))


def parallel_map(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """Map ``fn`` over ``items`` preserving order, using worker threads when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    def factory(item: T) -> Callable[[], Awaitable[R]]:
        return lambda: asyncio.to_thread(fn, item)

    return asyncio.run(gather_with_concurrency(jobs, *(factory(item) for item in items)))


##########################
# Output
##########################
def _to_plain(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json", by_alias=True)
    if isinstance(obj, dict):
        return {str(key): _to_plain(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_plain(item) for item in obj]
    return obj


def canonical_json(obj: Any) -> str:
    """Serialize models and plain data with stable key order."""
    return json.dumps(_to_plain(obj), sort_keys=True, indent=2, ensure_ascii=False)


def configure_logging(level: str = "WARNING") -> None:
    """Install a rich log handler on the root logger."""
    from rich.logging import RichHandler

    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
        force=True,
    )


@contextmanager
def timed(label: str) -> Iterator[dict[str, float]]:
    """Measure a block; the yielded dict receives ``seconds`` on exit."""
    record: dict[str, float] = {}
    start = time.perf_counter()
    try:
        yield record
    finally:
        record["seconds"] = time.perf_counter() - start
        logging.debug(f"{label} took {record['seconds']:.3f}s")
