"""
Pauli strings on q = 2 regions.

``pauli_string(region, A, B)`` is σ^(3)_A σ^(1)_B with the σ^(3) factor on
the left. As a groupoid function it vanishes except on arrows with flip B,
where its value at σ is Π_{x∈A} (ι_B σ)_x.
"""

import itertools
from collections.abc import Iterable, Iterator
from typing import Any

import numpy as np

from ...core.errors import RegionError, UnsupportedSpinError
from .lattice import FlipSet, Region
from .operator import LocalOperator, check_region_size
from .tables import digit_table


def _as_region(sites: Region | Iterable[Any]) -> Region:
    return sites if isinstance(sites, Region) else Region(tuple(sites))


def pauli_column(
    region: Region, sign_sites: Region | Iterable[Any], flip_sites: Region | Iterable[Any]
) -> tuple[int, np.ndarray]:
    """
    Flip index of B and the values Π_{x∈A} (ι_B σ)_x for every σ.

    Raises:
        RegionError: If A or B is not contained in ``region``
    """
    a, b = _as_region(sign_sites), _as_region(flip_sites)
    if not (a.issubset(region) and b.issubset(region)):
        raise RegionError(f"Pauli support {a} / {b} not contained in {region}")
    flip = FlipSet.from_sites(region, b.sites)
    digits = digit_table(len(region), 2)
    flipped = digits ^ np.array(flip.values, dtype=digits.dtype)
    signs = 1 - 2 * flipped[:, list(region.positions(a))]
    return flip.index(), signs.prod(axis=1).astype(float)


def pauli_string(
    region: Region,
    sign_sites: Region | Iterable[Any] = (),
    flip_sites: Region | Iterable[Any] = (),
    q: int = 2,
) -> LocalOperator:
    """
    σ^(3)_A σ^(1)_B on ``region``.

    Raises:
        UnsupportedSpinError: If q ≠ 2
        RegionError: If A or B is not contained in ``region``
    """
    if q != 2:
        raise UnsupportedSpinError(f"Pauli strings need q = 2, got q = {q}")
    check_region_size(region)
    column, values = pauli_column(region, sign_sites, flip_sites)
    dimension = 2 ** len(region)
    coefficients = np.zeros((dimension, dimension), dtype=complex)
    coefficients[:, column] = values
    return LocalOperator(region, coefficients)


def pauli_x(region: Region, site: Any) -> LocalOperator:
    return pauli_string(region, (), (site,))


def pauli_z(region: Region, site: Any) -> LocalOperator:
    return pauli_string(region, (site,), ())


def pauli_y(region: Region, site: Any) -> LocalOperator:
    # σzσx = iσy
    return pauli_string(region, (site,), (site,)) * -1j


def pauli_basis(region: Region) -> Iterator[tuple[str, LocalOperator]]:
    """
    All 4^|Λ| Pauli strings as (label, operator), label letters in site order.
    """
    for letters in itertools.product("IXYZ", repeat=len(region)):
        sign = [s for s, c in zip(region.sites, letters, strict=True) if c in "YZ"]
        flip = [s for s, c in zip(region.sites, letters, strict=True) if c in "XY"]
        phase = (-1j) ** letters.count("Y")
        yield "".join(letters), pauli_string(region, sign, flip) * phase
