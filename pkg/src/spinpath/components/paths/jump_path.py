"""
Jump paths: piecewise-constant configuration trajectories on [0, 1].

A path starts at t = 0 in the range configuration ι_X σ and ends at t = 1 in
the source σ of the arrow (σ, X) it contributes to. Each jump at time t flips
the sites B and carries the sign sites A of its Pauli string; the jump's
stored configuration is the one right after it.
"""

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from ...core.errors import EndpointMismatchError, IncoherentPathError, RegionError
from ..groupoid import FlipSet, GroupoidArrow, Region, SpinConfiguration, flip_apply
from ..interaction import HamiltonianBundle, Interaction, phase_factor
from ..point_process import PointPattern, time_order


@dataclass(frozen=True)
class Jump:
    time: float
    sign_sites: Region
    flip_sites: Region
    config: SpinConfiguration


def spin_product(config: SpinConfiguration, sites: Region) -> int:
    sign = 1
    for site in sites:
        sign *= config.spin(site)
    return sign


@dataclass(frozen=True)
class JumpPath:
    """
    Coherent path: consecutive configurations differ exactly by the jump's flip.

    Raises:
        IncoherentPathError: On times outside [0, 1], decreasing times, flips
            outside the region or a configuration that does not follow from
            the previous one
    """

    start: SpinConfiguration
    jumps: tuple[Jump, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "jumps", tuple(self.jumps))
        previous_time = 0.0
        current = self.start
        for k, jump in enumerate(self.jumps):
            if not 0.0 <= jump.time <= 1.0:
                raise IncoherentPathError(f"Jump {k} at time {jump.time} outside [0, 1]")
            if jump.time < previous_time:
                raise IncoherentPathError(f"Jump {k} at time {jump.time} is out of order")
            if not jump.flip_sites or not jump.flip_sites.issubset(self.region):
                raise IncoherentPathError(
                    f"Jump {k} flips {jump.flip_sites}, which is empty or leaves {self.region}"
                )
            expected = flip_apply(current, FlipSet.from_sites(self.region, jump.flip_sites))
            if jump.config != expected:
                raise IncoherentPathError(
                    f"Jump {k} lands in {jump.config.values}, expected {expected.values}"
                )
            previous_time = jump.time
            current = jump.config

    @classmethod
    def from_jumps(
        cls,
        start: SpinConfiguration,
        jumps: Iterable[tuple[float, Any, Any]],
    ) -> "JumpPath":
        """Build from (time, sign sites, flip sites) triples, deriving configurations."""
        built = []
        current = start
        for time, sign_sites, flip_sites in jumps:
            a = sign_sites if isinstance(sign_sites, Region) else Region(tuple(sign_sites))
            b = flip_sites if isinstance(flip_sites, Region) else Region(tuple(flip_sites))
            if not b.issubset(start.region):
                raise IncoherentPathError(f"Flip sites {b} leave {start.region}")
            current = flip_apply(current, FlipSet.from_sites(start.region, b))
            built.append(Jump(float(time), a, b, current))
        return cls(start, tuple(built))

    @classmethod
    def from_pattern(
        cls,
        pattern: PointPattern,
        bundle: HamiltonianBundle,
        end: SpinConfiguration,
    ) -> "JumpPath":
        """
        Path from a pattern labelled by jump labels of ``bundle``, ending in ``end``.

        Configurations are forced backwards from the end configuration.
        """
        if end.region != bundle.enlarged:
            raise RegionError(f"End configuration on {end.region}, expected {bundle.enlarged}")
        points = time_order(pattern)
        labelled = [(p.time, bundle.jumps[int(p.label)]) for p in points]  # type: ignore[call-overload]
        start = end
        for _, jump in labelled:
            start = flip_apply(start, FlipSet.from_sites(end.region, jump.flip_sites))
        return cls.from_jumps(start, [(t, j.sign_sites, j.flip_sites) for t, j in labelled])

    @property
    def region(self) -> Region:
        return self.start.region

    @property
    def end(self) -> SpinConfiguration:
        return self.jumps[-1].config if self.jumps else self.start

    def __len__(self) -> int:
        return len(self.jumps)

    def net_flip(self) -> FlipSet:
        flip = FlipSet.identity(self.region)
        for jump in self.jumps:
            flip = flip.compose(FlipSet.from_sites(self.region, jump.flip_sites))
        return flip

    def arrow(self) -> GroupoidArrow:
        """The arrow (end, X) whose range is the start configuration."""
        return GroupoidArrow(self.end, self.net_flip())

    def times(self) -> np.ndarray:
        return np.array([j.time for j in self.jumps], dtype=float)

    def segments(self) -> list[tuple[float, SpinConfiguration]]:
        """(duration, configuration) for each constant piece, in time order."""
        pieces = []
        time, config = 0.0, self.start
        for jump in self.jumps:
            pieces.append((jump.time - time, config))
            time, config = jump.time, jump.config
        pieces.append((1.0 - time, config))
        return pieces

    def configurations(self) -> list[SpinConfiguration]:
        return [self.start] + [j.config for j in self.jumps]

    def isclose(self, other: "JumpPath", atol: float = 1e-12) -> bool:
        if self.start != other.start or len(self) != len(other):
            return False
        return all(
            abs(a.time - b.time) <= atol
            and a.sign_sites == b.sign_sites
            and a.flip_sites == b.flip_sites
            and a.config == b.config
            for a, b in zip(self.jumps, other.jumps, strict=True)
        )

    def dump(self) -> str:
        """One line per jump: time, A, B and the spins that changed."""
        lines = [f"start {list(self.start.spins())} on {self.region}"]
        previous = self.start
        for jump in self.jumps:
            delta = {
                site: jump.config.spin(site)
                for site in self.region
                if jump.config.value(site) != previous.value(site)
            }
            lines.append(
                f"t={jump.time:.6f} A={list(jump.sign_sites.sites)} "
                f"B={list(jump.flip_sites.sites)} delta={delta}"
            )
            previous = jump.config
        return "\n".join(lines)

    def reverse(self) -> "JumpPath":
        return reverse(self)


@dataclass(frozen=True)
class PathWeight:
    """
    Energy integral, phase, rate product and jump count of one path.

    The path's density on the ordered time simplex is
    β^n · rate_product · phase · e^{−β·energy}.
    """

    energy: float
    phase: complex
    rate_product: float
    jump_count: int

    def density(self, beta: complex) -> complex:
        return complex(
            beta**self.jump_count * self.rate_product * self.phase * np.exp(-beta * self.energy)
        )


def path_weight(path: JumpPath, bundle: HamiltonianBundle) -> PathWeight:
    """
    Weight of a coherent path on the bundle's enlarged region.

    Each jump contributes −e^{iπθ} times the σ^(3) signs of its A sites read
    in the configuration just before the jump.

    Raises:
        RegionError: If the path lives elsewhere
        IncoherentPathError: If a jump is not a jump term of the bundle
    """
    if path.region != bundle.enlarged:
        raise RegionError(f"Path on {path.region}, bundle on {bundle.enlarged}")
    energies = bundle.energies()
    energy = sum(duration * energies[config.index()] for duration, config in path.segments())

    phase = 1.0 + 0.0j
    rates = 1.0
    before = path.start
    for jump in path.jumps:
        term = bundle.jump_lookup.get((jump.sign_sites, jump.flip_sites))
        if term is None:
            raise IncoherentPathError(
                f"No jump term with A = {jump.sign_sites}, B = {jump.flip_sites}"
            )
        phase *= -phase_factor(term.theta) * spin_product(before, jump.sign_sites)
        rates *= term.rate
        before = jump.config
    return PathWeight(float(energy), phase, rates, len(path))


def split_path(path: JumpPath, inside: Region) -> tuple[JumpPath, JumpPath]:
    """
    Separate the jumps flipping inside sites from those flipping outside sites.

    Returns:
        (inside path on Λ, boundary path on region ∖ Λ); sign sites are kept whole

    Raises:
        IncoherentPathError: If a jump flips sites on both sides
        RegionError: If Λ is not part of the path's region
    """
    if not inside.issubset(path.region):
        raise RegionError(f"{inside} is not contained in {path.region}")
    outside = path.region - inside
    inner, outer = [], []
    for jump in path.jumps:
        if jump.flip_sites.issubset(inside):
            inner.append((jump.time, jump.sign_sites, jump.flip_sites))
        elif jump.flip_sites.issubset(outside):
            outer.append((jump.time, jump.sign_sites, jump.flip_sites))
        else:
            raise IncoherentPathError(
                f"Jump at t={jump.time} flips {jump.flip_sites} across the boundary of {inside}"
            )
    return (
        JumpPath.from_jumps(path.start.restrict(inside), inner),
        JumpPath.from_jumps(path.start.restrict(outside), outer),
    )


def merge_paths(inside: JumpPath, boundary: JumpPath) -> JumpPath:
    """Recombine a split; simultaneous jumps keep the inside jump first."""
    start = inside.start.combine(boundary.start)
    tagged = [(j.time, 0, k, j) for k, j in enumerate(inside.jumps)]
    tagged += [(j.time, 1, k, j) for k, j in enumerate(boundary.jumps)]
    tagged.sort(key=lambda item: item[:3])
    return JumpPath.from_jumps(
        start, [(j.time, j.sign_sites, j.flip_sites) for *_, j in tagged]
    )


@dataclass(frozen=True)
class EnergySplit:
    total: float
    inside: float
    boundary: float

    @property
    def defect(self) -> float:
        return abs(self.total - self.inside - self.boundary)


def classical_energy(
    phi: Interaction, region: Region, touching: Region | None = None
) -> Callable[[SpinConfiguration], float]:
    terms = [t for t in phi.terms_within(region) if t.is_diagonal]
    if touching is not None:
        terms = [t for t in terms if not t.support.isdisjoint(touching)]

    def energy(config: SpinConfiguration) -> float:
        return sum(t.coefficient.real * spin_product(config, t.sign_sites) for t in terms)

    return energy


def split_energy(path: JumpPath, phi: Interaction, inside: Region) -> EnergySplit:
    """
    The three energies of the additivity identity for a split path.

    ``total`` integrates the classical energy of every term in the path's
    region along the path. ``inside`` integrates the terms touching Λ along
    the recombined inside and boundary paths, and ``boundary`` the terms of
    region ∖ Λ along the boundary path alone.
    """
    inner, outer = split_path(path, inside)
    total_energy = classical_energy(phi, path.region)
    inside_energy = classical_energy(phi, path.region, touching=inside)
    outside_energy = classical_energy(phi, outer.region)
    return EnergySplit(
        total=sum(d * total_energy(c) for d, c in path.segments()),
        inside=sum(d * inside_energy(c) for d, c in merge_paths(inner, outer).segments()),
        boundary=sum(d * outside_energy(c) for d, c in outer.segments()),
    )


def concatenate(first: JumpPath, second: JumpPath, ratio: float = 0.5) -> JumpPath:
    """
    Glue two paths: the first runs on [0, ratio], the second on [ratio, 1].

    Raises:
        EndpointMismatchError: If the first path does not end where the second starts
        ValueError: If ratio is not inside (0, 1)
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"Gluing ratio must lie in (0, 1), got {ratio}")
    if first.end != second.start:
        raise EndpointMismatchError(
            f"First path ends in {first.end.values}, second starts in {second.start.values}"
        )
    jumps: Sequence[tuple[float, Region, Region]] = [
        (ratio * j.time, j.sign_sites, j.flip_sites) for j in first.jumps
    ] + [(ratio + (1.0 - ratio) * j.time, j.sign_sites, j.flip_sites) for j in second.jumps]
    return JumpPath.from_jumps(first.start, jumps)


def reverse(path: JumpPath) -> JumpPath:
    """Run the path backwards: t → 1 − t, starting from its end."""
    return JumpPath.from_jumps(
        path.end,
        [(1.0 - j.time, j.sign_sites, j.flip_sites) for j in reversed(path.jumps)],
    )
