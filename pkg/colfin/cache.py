"""
Memo of evaluated columns.

Composite expressions (sums, products, brackets, lazily solved matrices)
recompute the columns of their children over and over during window
evaluation. Columns are therefore remembered per ``(expression, column)``.
Expressions are immutable and hash structurally, so equal expressions built
independently share entries. All access goes through one lock, so the memo is
safe to use from several threads.
"""
import logging
import threading
import time
from typing import Callable, Dict, Tuple

LOG = logging.getLogger(__name__)

CACHE_SIZE_TRIGGER = 200000
"""
This setting limits the number of remembered columns. It's basically a way to
start garbage collection.
"""

_CACHED_MINIMUM_SURVIVAL = 10
"""
Columns used within this many seconds survive a garbage collection.
"""


class _ColumnCacheItem:
    __slots__ = ('column', 'last_used')

    def __init__(self, column, last_used=None):
        self.column = column
        if last_used is None:
            last_used = time.time()
        self.last_used = last_used


column_cache: Dict[Tuple[object, int], _ColumnCacheItem] = {}
_lock = threading.RLock()


def cached_column(node, j: int, compute: Callable[[int], dict]) -> dict:
    """
    Returns the column ``j`` of ``node``, computing it with ``compute`` on a
    miss. The returned dict is shared and must not be mutated.
    """
    key = (node, j)
    with _lock:
        item = column_cache.get(key)
        if item is not None:
            item.last_used = time.time()
            return item.column

    column = compute(j)
    with _lock:
        if len(column_cache) >= CACHE_SIZE_TRIGGER:
            _collect_garbage()
        column_cache[key] = _ColumnCacheItem(column)
    return column


def _collect_garbage():
    cutoff_time = time.time() - _CACHED_MINIMUM_SURVIVAL
    survivors = {
        key: item
        for key, item in column_cache.items()
        if item.last_used > cutoff_time
    }
    if len(survivors) >= CACHE_SIZE_TRIGGER // 2:
        survivors = {}
    LOG.debug('column cache: %s of %s entries kept', len(survivors), len(column_cache))
    column_cache.clear()
    column_cache.update(survivors)


def clear_cache():
    with _lock:
        column_cache.clear()
