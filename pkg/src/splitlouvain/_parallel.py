"""Fan a nogil kernel out over a fixed number of worker threads."""

import os
import threading
from concurrent.futures import ThreadPoolExecutor

_pools: dict[int, ThreadPoolExecutor] = {}
_lock = threading.Lock()


def default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # not available on every platform
        return os.cpu_count() or 1


def _pool(workers: int) -> ThreadPoolExecutor:
    with _lock:
        pool = _pools.get(workers)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="louvain")
            _pools[workers] = pool
        return pool


def run_workers(kernel, workers: int, *args) -> None:
    """Call ``kernel(t, workers, *args)`` for every ``t`` and wait for all of them.

    Kernels must be compiled with ``nogil=True`` to actually overlap.  With a
    single worker the kernel runs inline on the calling thread.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1:
        kernel(0, 1, *args)
        return
    pool = _pool(workers)
    futures = [pool.submit(kernel, t, workers, *args) for t in range(workers)]
    for f in futures:
        f.result()
