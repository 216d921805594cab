"""
LRU cache for operator exponentials.

Entries are keyed by a SHA-256 digest of the generator's bytes and the
parameters of the exponential, so equal inputs hit regardless of where the
arrays came from.
"""

import hashlib
import threading
import time
from collections import OrderedDict
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np


@dataclass
class CacheEntry:
    value: np.ndarray
    timestamp: float
    access_count: int
    compute_ms: float


class DensityCache:
    """
    Thread-safe LRU cache of computed matrices with hit/miss statistics.
    """

    def __init__(self, max_size: int = 256) -> None:
        self._cache: OrderedDict[str, CacheEntry] = OrderedDict()
        self._max_size = max_size
        self._lock = threading.Lock()

        self._hits = 0
        self._misses = 0
        self._evictions = 0

    @staticmethod
    def make_key(*parts: Any) -> str:
        """Digest of arrays (shape, dtype and bytes) and scalar parameters."""
        digest = hashlib.sha256()
        for part in parts:
            if isinstance(part, np.ndarray):
                array = np.ascontiguousarray(part)
                digest.update(f"{array.shape}|{array.dtype}|".encode())
                digest.update(array.tobytes())
            else:
                digest.update(repr(part).encode("utf-8"))
            digest.update(b"\x00")
        return digest.hexdigest()

    def get(self, key: str) -> np.ndarray | None:
        with self._lock:
            entry = self._cache.get(key)
            if entry is None:
                self._misses += 1
                return None
            entry.access_count += 1
            self._cache.move_to_end(key)
            self._hits += 1
            return entry.value

    def put(self, key: str, value: np.ndarray, compute_ms: float = 0.0) -> np.ndarray:
        frozen = np.array(value)
        frozen.setflags(write=False)
        with self._lock:
            self._cache[key] = CacheEntry(frozen, time.time(), 1, compute_ms)
            self._cache.move_to_end(key)
            while len(self._cache) > self._max_size:
                self._cache.popitem(last=False)
                self._evictions += 1
        return frozen

    def get_or_compute(self, key: str, compute: Callable[[], np.ndarray]) -> np.ndarray:
        cached = self.get(key)
        if cached is not None:
            return cached
        started = time.perf_counter()
        value = compute()
        return self.put(key, value, (time.perf_counter() - started) * 1000)

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def resize(self, new_max_size: int) -> None:
        with self._lock:
            self._max_size = new_max_size
            while len(self._cache) > new_max_size:
                self._cache.popitem(last=False)
                self._evictions += 1

    def __len__(self) -> int:
        return len(self._cache)

    def get_stats(self) -> dict[str, Any]:
        with self._lock:
            total = self._hits + self._misses
            compute_times = [e.compute_ms for e in self._cache.values()]
            return {
                "cache_size": len(self._cache),
                "max_cache_size": self._max_size,
                "hit_ratio": self._hits / total if total else 0.0,
                "hits": self._hits,
                "misses": self._misses,
                "evictions": self._evictions,
                "avg_compute_ms": sum(compute_times) / len(compute_times) if compute_times else 0.0,
            }


_default_cache = DensityCache()


def get_density_cache() -> DensityCache:
    return _default_cache
