"""Shared small utilities."""

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, jobs=1):
    """Order-preserving map over independent jobs.

    Threads suffice here: the heavy kernels are numpy loops that release the
    GIL.  Results are collected in input order, so output is deterministic
    regardless of the pool size.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
