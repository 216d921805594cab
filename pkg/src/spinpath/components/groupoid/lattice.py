"""
Lattice regions and the finite transformation groupoid.

Sites are integer d-tuples, kept sorted lexicographically inside a Region.
Configurations and flips are tuples of values in Z_q aligned with that order.
For q = 2 the value 0 is the spin +1 and the value 1 is the spin -1. A flip
acts sitewise by addition modulo q; an arrow (σ, X) of the groupoid goes from
its source σ to its range ι_X σ.

Configuration and flip indices treat the first site as the most significant
digit, which matches the ``numpy.kron`` ordering of tensor factors.
"""

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from ...core.errors import RegionError, RegionMismatchError, UnsupportedSpinError

Site = tuple[int, ...]


def as_site(site: Any) -> Site:
    """Normalize an int (1-D lattice) or a coordinate sequence to a site tuple."""
    if isinstance(site, tuple) and all(type(c) is int for c in site):
        return site
    if isinstance(site, Sequence) and not isinstance(site, str):
        return tuple(int(c) for c in site)
    return (int(site),)


@dataclass(frozen=True)
class SpinModel:
    """
    Spin alphabet size q on the lattice Z^d.
    """

    q: int = 2
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"q must be at least 2, got {self.q}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {self.dimension}")

    def require_qubits(self) -> None:
        if self.q != 2:
            raise UnsupportedSpinError(f"Pauli generators need q = 2, model has q = {self.q}")


@dataclass(frozen=True)
class Region:
    """
    Finite, deduplicated, lexicographically sorted set of lattice sites.

    ``Region.of(0, 1, 2)`` builds a 1-D region, ``Region.of((0, 0), (0, 1))``
    a 2-D one. The empty region is allowed and carries no dimension.
    """

    sites: tuple[Site, ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple(sorted({as_site(s) for s in self.sites}))
        dimensions = {len(s) for s in normalized}
        if len(dimensions) > 1:
            raise RegionError(f"Sites of mixed dimension: {sorted(dimensions)}")
        object.__setattr__(self, "sites", normalized)

    @classmethod
    def of(cls, *sites: Any) -> "Region":
        return cls(tuple(sites))

    @classmethod
    def box(cls, lower: int | Sequence[int], upper: int | Sequence[int]) -> "Region":
        """Inclusive box [lower, upper] in Z^d; ints give a 1-D interval."""
        lo, hi = as_site(lower), as_site(upper)
        if len(lo) != len(hi):
            raise RegionError("Box corners differ in dimension")
        ranges = [range(a, b + 1) for a, b in zip(lo, hi, strict=True)]
        return cls(tuple(itertools.product(*ranges)))

    @property
    def dimension(self) -> int | None:
        return len(self.sites[0]) if self.sites else None

    def __len__(self) -> int:
        return len(self.sites)

    def __iter__(self) -> Iterator[Site]:
        return iter(self.sites)

    def __contains__(self, site: Any) -> bool:
        return as_site(site) in self._site_set

    @property
    def _site_set(self) -> frozenset[Site]:
        return frozenset(self.sites)

    def __str__(self) -> str:
        if self.dimension == 1:
            return "{" + ",".join(str(s[0]) for s in self.sites) + "}"
        return "{" + ",".join(str(s) for s in self.sites) + "}"

    def index(self, site: Any) -> int:
        """Position of ``site`` in the sorted order."""
        key = as_site(site)
        try:
            return self.sites.index(key)
        except ValueError:
            raise RegionError(f"Site {key} not in region {self}") from None

    def positions(self, sub: "Region") -> tuple[int, ...]:
        """Positions of the sites of ``sub`` inside this region."""
        if not sub.issubset(self):
            raise RegionError(f"{sub} is not contained in {self}")
        lookup = {s: i for i, s in enumerate(self.sites)}
        return tuple(lookup[s] for s in sub.sites)

    def union(self, other: "Region") -> "Region":
        return Region(self.sites + other.sites)

    def intersection(self, other: "Region") -> "Region":
        keep = other._site_set
        return Region(tuple(s for s in self.sites if s in keep))

    def difference(self, other: "Region") -> "Region":
        drop = other._site_set
        return Region(tuple(s for s in self.sites if s not in drop))

    def issubset(self, other: "Region") -> bool:
        return self._site_set <= other._site_set

    def isdisjoint(self, other: "Region") -> bool:
        return self._site_set.isdisjoint(other._site_set)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def diameter(self) -> int:
        """Largest sup-norm distance between two sites (0 for fewer than two)."""
        if len(self.sites) < 2:
            return 0
        return max(
            max(abs(a - b) for a, b in zip(x, y, strict=True))
            for x, y in itertools.combinations(self.sites, 2)
        )

    def neighborhood(self, radius: float) -> "Region":
        """All lattice points within sup-norm distance ``radius`` of the region."""
        if radius < 0:
            raise ValueError(f"Negative radius {radius}")
        r = int(radius)
        if r == 0 or not self.sites:
            return self
        offsets = list(itertools.product(range(-r, r + 1), repeat=len(self.sites[0])))
        return Region(
            tuple(
                tuple(c + o for c, o in zip(site, offset, strict=True))
                for site in self.sites
                for offset in offsets
            )
        )


def _check_values(values: tuple[int, ...], region: Region, q: int, kind: str) -> None:
    if len(values) != len(region):
        raise RegionMismatchError(
            f"{kind} has {len(values)} values for a region of {len(region)} sites"
        )
    for v in values:
        if not 0 <= v < q:
            raise ValueError(f"{kind} value {v} outside Z_{q}")


def _to_index(values: tuple[int, ...], q: int) -> int:
    index = 0
    for v in values:
        index = index * q + v
    return index


def _from_index(index: int, n: int, q: int) -> tuple[int, ...]:
    if not 0 <= index < q**n:
        raise ValueError(f"Index {index} outside [0, {q**n})")
    values = []
    for _ in range(n):
        index, v = divmod(index, q)
        values.append(v)
    return tuple(reversed(values))


@dataclass(frozen=True)
class SpinConfiguration:
    """A point of Ω_Λ: one value in {0, …, q−1} per site of ``region``."""

    region: Region
    values: tuple[int, ...]
    q: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        _check_values(self.values, self.region, self.q, "Configuration")

    @classmethod
    def from_index(cls, region: Region, index: int, q: int = 2) -> "SpinConfiguration":
        return cls(region, _from_index(index, len(region), q), q)

    @classmethod
    def from_spins(
        cls, region: Region, spins: Sequence[int] | Mapping[Any, int]
    ) -> "SpinConfiguration":
        """Build a q = 2 configuration from ±1 spins (sequence or site map)."""
        if isinstance(spins, Mapping):
            by_site = {as_site(k): v for k, v in spins.items()}
            ordered = [by_site[s] for s in region.sites]
        else:
            ordered = list(spins)
        if any(s not in (1, -1) for s in ordered):
            raise ValueError("Spins must be +1 or -1")
        return cls(region, tuple(0 if s == 1 else 1 for s in ordered), 2)

    @classmethod
    def uniform(cls, region: Region, value: int = 0, q: int = 2) -> "SpinConfiguration":
        return cls(region, (value,) * len(region), q)

    @classmethod
    def all(cls, region: Region, q: int = 2) -> Iterator["SpinConfiguration"]:
        """Every configuration of ``region`` in index order."""
        for index in range(q ** len(region)):
            yield cls.from_index(region, index, q)

    def index(self) -> int:
        return _to_index(self.values, self.q)

    def value(self, site: Any) -> int:
        return self.values[self.region.index(site)]

    def spin(self, site: Any) -> int:
        """Multiplicative spin ±1 (q = 2 only)."""
        if self.q != 2:
            raise UnsupportedSpinError("Multiplicative spins are defined for q = 2")
        return 1 - 2 * self.value(site)

    def spins(self) -> tuple[int, ...]:
        if self.q != 2:
            raise UnsupportedSpinError("Multiplicative spins are defined for q = 2")
        return tuple(1 - 2 * v for v in self.values)

    def restrict(self, sub: Region) -> "SpinConfiguration":
        pos = self.region.positions(sub)
        return SpinConfiguration(sub, tuple(self.values[i] for i in pos), self.q)

    def combine(self, other: "SpinConfiguration") -> "SpinConfiguration":
        """Join configurations on disjoint regions."""
        if not self.region.isdisjoint(other.region):
            raise RegionError("Cannot combine configurations on overlapping regions")
        if self.q != other.q:
            raise RegionMismatchError("Configurations use different q")
        merged = dict(zip(self.region.sites, self.values, strict=True))
        merged.update(zip(other.region.sites, other.values, strict=True))
        region = self.region | other.region
        return SpinConfiguration(region, tuple(merged[s] for s in region.sites), self.q)


@dataclass(frozen=True)
class FlipSet:
    """An element of G_Λ = Z_q^Λ; for q = 2 a subset of the region."""

    region: Region
    values: tuple[int, ...]
    q: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) % self.q for v in self.values))
        _check_values(self.values, self.region, self.q, "Flip")

    @classmethod
    def identity(cls, region: Region, q: int = 2) -> "FlipSet":
        return cls(region, (0,) * len(region), q)

    @classmethod
    def from_sites(cls, region: Region, sites: Iterable[Any]) -> "FlipSet":
        """q = 2 flip of exactly the given sites."""
        chosen = {as_site(s) for s in sites}
        if not chosen <= set(region.sites):
            raise RegionError(f"Flip sites {sorted(chosen)} not contained in {region}")
        return cls(region, tuple(1 if s in chosen else 0 for s in region.sites), 2)

    @classmethod
    def from_index(cls, region: Region, index: int, q: int = 2) -> "FlipSet":
        return cls(region, _from_index(index, len(region), q), q)

    def index(self) -> int:
        return _to_index(self.values, self.q)

    @property
    def is_identity(self) -> bool:
        return not any(self.values)

    def support(self) -> Region:
        return Region(tuple(s for s, v in zip(self.region.sites, self.values, strict=True) if v))

    def inverse(self) -> "FlipSet":
        return FlipSet(self.region, tuple(-v for v in self.values), self.q)

    def compose(self, other: "FlipSet") -> "FlipSet":
        if self.region != other.region or self.q != other.q:
            raise RegionMismatchError("Flips live on different regions")
        return FlipSet(
            self.region,
            tuple(a + b for a, b in zip(self.values, other.values, strict=True)),
            self.q,
        )

    __add__ = compose

    def restrict(self, sub: Region) -> "FlipSet":
        pos = self.region.positions(sub)
        return FlipSet(sub, tuple(self.values[i] for i in pos), self.q)

    def extend(self, larger: Region) -> "FlipSet":
        """The same flip seen on a larger region (identity on the new sites)."""
        own = dict(zip(self.region.sites, self.values, strict=True))
        if not self.region.issubset(larger):
            raise RegionError(f"{larger} does not contain {self.region}")
        return FlipSet(larger, tuple(own.get(s, 0) for s in larger.sites), self.q)


def flip_apply(config: SpinConfiguration, flip: FlipSet) -> SpinConfiguration:
    """ι_X σ: sitewise action of the flip on the configuration."""
    if config.region != flip.region:
        raise RegionMismatchError(
            f"Configuration on {config.region} and flip on {flip.region}"
        )
    if config.q != flip.q:
        raise RegionMismatchError("Configuration and flip use different q")
    return SpinConfiguration(
        config.region,
        tuple((a + b) % config.q for a, b in zip(config.values, flip.values, strict=True)),
        config.q,
    )


@dataclass(frozen=True)
class GroupoidArrow:
    """Arrow (σ, X) from σ to ι_X σ."""

    config: SpinConfiguration
    flip: FlipSet

    def __post_init__(self) -> None:
        if self.config.region != self.flip.region or self.config.q != self.flip.q:
            raise RegionMismatchError("Arrow configuration and flip live on different regions")

    @property
    def region(self) -> Region:
        return self.config.region

    @property
    def source(self) -> SpinConfiguration:
        return self.config

    @property
    def range(self) -> SpinConfiguration:
        return flip_apply(self.config, self.flip)

    @property
    def is_unit(self) -> bool:
        return self.flip.is_identity

    def inverse(self) -> "GroupoidArrow":
        return GroupoidArrow(self.range, self.flip.inverse())

    def compose(self, other: "GroupoidArrow") -> "GroupoidArrow":
        """``self ∘ other``: first ``other``, then ``self``."""
        if other.range != self.source:
            raise RegionMismatchError("Arrows are not composable")
        return GroupoidArrow(other.config, self.flip.compose(other.flip))
