"""
Tests for the exponential cache.
"""

import numpy as np

from spinpath.components.paths import DensityCache


class TestDensityCache:
    """Test LRU behaviour and statistics."""

    def setup_method(self):
        self.cache = DensityCache(max_size=2)

    def test_keys_include_shape(self):
        assert DensityCache.make_key(np.zeros((2, 2))) != DensityCache.make_key(np.zeros(4))
        assert DensityCache.make_key(np.eye(2), 0.5) == DensityCache.make_key(np.eye(2), 0.5)
        assert DensityCache.make_key(np.eye(2), 0.5) != DensityCache.make_key(np.eye(2), 0.5j)

    def test_lru_eviction(self):
        self.cache.put("a", np.eye(2))
        self.cache.put("b", np.eye(2))
        self.cache.get("a")
        self.cache.put("c", np.eye(2))

        assert len(self.cache) == 2
        assert self.cache.get("b") is None
        assert self.cache.get("a") is not None
        assert self.cache.get_stats()["evictions"] == 1

    def test_values_are_read_only(self):
        stored = self.cache.put("a", np.eye(2))
        assert not stored.flags.writeable

    def test_get_or_compute(self):
        calls = []

        def compute():
            calls.append(1)
            return np.ones(3)

        self.cache.get_or_compute("k", compute)
        self.cache.get_or_compute("k", compute)

        assert len(calls) == 1
        stats = self.cache.get_stats()
        assert stats["hits"] == 1 and stats["misses"] == 1
        assert stats["hit_ratio"] == 0.5

    def test_resize_and_clear(self):
        self.cache.put("a", np.eye(2))
        self.cache.put("b", np.eye(2))
        self.cache.resize(1)
        assert len(self.cache) == 1
        self.cache.clear()
        assert len(self.cache) == 0
