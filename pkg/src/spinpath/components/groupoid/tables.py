"""
Index tables for the groupoid of n sites with q values per site.

Configurations and flips are both indexed by their Z_q digits, first site most
significant. ``action_table[s, g]`` is the index of ι_g σ_s, and
``difference_table[x, y]`` the index of x − y in the flip group. For q = 2
both reduce to bitwise XOR of the indices.
"""

from functools import lru_cache

import numpy as np


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@lru_cache(maxsize=64)
def digit_table(n: int, q: int) -> np.ndarray:
    """(q^n, n) array of the Z_q digits of every index."""
    indices = np.arange(q**n)
    powers = q ** np.arange(n - 1, -1, -1)
    return _frozen((indices[:, None] // powers[None, :]) % q)


@lru_cache(maxsize=64)
def place_values(n: int, q: int) -> np.ndarray:
    return _frozen(q ** np.arange(n - 1, -1, -1))


@lru_cache(maxsize=16)
def action_table(n: int, q: int) -> np.ndarray:
    size = q**n
    if q == 2:
        indices = np.arange(size, dtype=np.int32)
        return _frozen(np.bitwise_xor.outer(indices, indices))
    digits = digit_table(n, q)
    summed = (digits[:, None, :] + digits[None, :, :]) % q
    return _frozen((summed @ place_values(n, q)).astype(np.int32))


@lru_cache(maxsize=16)
def negation_table(n: int, q: int) -> np.ndarray:
    """Index of the group inverse −g for every flip index g."""
    if q == 2:
        return _frozen(np.arange(q**n))
    return _frozen(((-digit_table(n, q)) % q) @ place_values(n, q))


@lru_cache(maxsize=16)
def difference_table(n: int, q: int) -> np.ndarray:
    if q == 2:
        return action_table(n, q)
    return _frozen(action_table(n, q)[:, negation_table(n, q)])


def project_indices(digits: np.ndarray, positions: tuple[int, ...], q: int) -> np.ndarray:
    """Indices of the sub-configurations read at ``positions`` of each row."""
    if not positions:
        return np.zeros(digits.shape[0], dtype=np.int64)
    sub = digits[:, list(positions)]
    return sub @ place_values(len(positions), q)
