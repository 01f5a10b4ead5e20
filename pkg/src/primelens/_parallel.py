"""Thread-count policy and a deterministic parallel map over disjoint work items.

PRIMELENS_THREADS caps worker threads (default: machine cores). Work items must
write to disjoint output slices; results are then independent of scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("PRIMELENS_THREADS", "")
    if raw.strip():
        try:
            n = int(raw)
        except ValueError:
            n = 1
        return max(1, n)
    return max(1, os.cpu_count() or 1)


def run_segments(fn, items) -> None:
    """Apply fn to every item, possibly concurrently. fn must only touch
    per-item state (disjoint array slices), so execution order cannot matter."""
    items = list(items)
    workers = min(thread_count(), len(items)) or 1
    if workers == 1 or len(items) <= 1:
        for it in items:
            fn(it)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # list() propagates the first worker exception
        list(pool.map(fn, items))
