"""
Pauli-string interactions.

An interaction assigns to finite site sets X = A ∪ B the operator
Σ c_{A,B} σ^(3)_A σ^(1)_B. Terms are keyed by the pair (A, B); duplicate pairs
are summed. A coefficient is admissible when the term is self-adjoint,
conj(c) = (−1)^{|A∩B|} c, and its polar angle is a multiple of π/2, so that
c = r·e^{iπθ} with θ ∈ {0, 1, ±1/2}.
"""

import cmath
import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any

from ..groupoid import Region, SpinModel

logger = logging.getLogger(__name__)

COEFFICIENT_RTOL = 1e-12

TermKey = tuple[Region, Region]


@dataclass(frozen=True)
class PauliTerm:
    """c · σ^(3)_A σ^(1)_B."""

    sign_sites: Region
    flip_sites: Region
    coefficient: complex

    @property
    def key(self) -> TermKey:
        return (self.sign_sites, self.flip_sites)

    @property
    def support(self) -> Region:
        return self.sign_sites | self.flip_sites

    @property
    def overlap(self) -> int:
        return len(self.sign_sites & self.flip_sites)

    @property
    def is_diagonal(self) -> bool:
        return len(self.flip_sites) == 0

    def __str__(self) -> str:
        c = self.coefficient
        return f"({c.real:+g}{c.imag:+g}j)·Z{self.sign_sites}X{self.flip_sites}"


@dataclass(frozen=True)
class Violation:
    """One failed admissibility constraint."""

    kind: str  # "spin", "dimension", "support", "range", "self-adjoint", "phase"
    message: str
    term: PauliTerm | None = None
    line_number: int = 0

    def __str__(self) -> str:
        prefix = f"line {self.line_number}: " if self.line_number else ""
        return f"{prefix}{self.kind}: {self.message}"


def polar_form(coefficient: complex, rtol: float = COEFFICIENT_RTOL) -> tuple[float, float]:
    """
    (r, θ) with coefficient = r·e^{iπθ}, θ snapped to {0, 1, ±1/2} when admissible.
    """
    r = abs(coefficient)
    if r == 0:
        return 0.0, 0.0
    re, im = coefficient.real, coefficient.imag
    if abs(im) <= rtol * r:
        return r, 0.0 if re > 0 else 1.0
    if abs(re) <= rtol * r:
        return r, 0.5 if im > 0 else -0.5
    return r, cmath.phase(coefficient) / cmath.pi


class Interaction:
    """
    Finite-range interaction in Pauli-string form.

    Args:
        terms: PauliTerms, or a mapping (A, B) → coefficient
        range: Radius R; no term may have sup-norm diameter above it
        model: Spin alphabet and lattice dimension
    """

    def __init__(
        self,
        terms: Iterable[PauliTerm] | Mapping[TermKey, complex] = (),
        range: float = 1.0,
        model: SpinModel | None = None,
    ):
        if range < 0:
            raise ValueError(f"Interaction range must be non-negative, got {range}")
        self.model = model or SpinModel()
        self.range = float(range)

        items: Iterable[tuple[TermKey, complex]]
        if isinstance(terms, Mapping):
            items = ((tuple(k), complex(v)) for k, v in terms.items())  # type: ignore[misc]
        else:
            items = ((t.key, complex(t.coefficient)) for t in terms)

        merged: dict[TermKey, complex] = {}
        for (a, b), c in items:
            key = (_region(a), _region(b))
            merged[key] = merged.get(key, 0j) + c

        self._terms = tuple(
            PauliTerm(a, b, c)
            for (a, b), c in sorted(
                merged.items(),
                key=lambda item: (
                    (item[0][0] | item[0][1]).sites,
                    item[0][0].sites,
                    item[0][1].sites,
                ),
            )
        )

    @property
    def terms(self) -> tuple[PauliTerm, ...]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self._terms)

    def __repr__(self) -> str:
        return f"Interaction(terms={len(self._terms)}, range={self.range}, model={self.model})"

    def coefficient(self, sign_sites: Any, flip_sites: Any) -> complex:
        key = (_region(sign_sites), _region(flip_sites))
        for term in self._terms:
            if term.key == key:
                return term.coefficient
        return 0j

    def by_support(self) -> dict[Region, dict[TermKey, complex]]:
        """Coefficient tables grouped by X = A ∪ B."""
        grouped: dict[Region, dict[TermKey, complex]] = {}
        for term in self._terms:
            grouped.setdefault(term.support, {})[term.key] = term.coefficient
        return grouped

    def sites(self) -> Region:
        region = Region()
        for term in self._terms:
            region = region | term.support
        return region

    def terms_within(self, region: Region) -> list[PauliTerm]:
        return [t for t in self._terms if t.support.issubset(region)]

    def is_classical(self) -> bool:
        return all(t.is_diagonal for t in self._terms)

    def scaled(self, factor: float) -> "Interaction":
        return Interaction(
            [PauliTerm(t.sign_sites, t.flip_sites, t.coefficient * factor) for t in self._terms],
            self.range,
            self.model,
        )


def _region(sites: Any) -> Region:
    return sites if isinstance(sites, Region) else Region(tuple(sites))


def validate(phi: Interaction) -> list[Violation]:
    """
    Every admissibility violation of ``phi``; empty iff it is a valid interaction.
    """
    violations: list[Violation] = []
    if phi.model.q != 2:
        violations.append(
            Violation("spin", f"Pauli-string interactions need q = 2, got q = {phi.model.q}")
        )

    for term in phi.terms:
        support = term.support
        if len(support) == 0:
            violations.append(Violation("support", "term has empty support", term))
            continue
        if support.dimension != phi.model.dimension:
            violations.append(
                Violation(
                    "dimension",
                    f"sites of dimension {support.dimension} in a d = {phi.model.dimension} model",
                    term,
                )
            )
            continue
        diameter = support.diameter()
        if diameter > phi.range:
            violations.append(
                Violation("range", f"diameter {diameter} exceeds range {phi.range}", term)
            )

        c = term.coefficient
        scale = max(1.0, abs(c))
        expected = c if term.overlap % 2 == 0 else -c
        if abs(c.conjugate() - expected) > COEFFICIENT_RTOL * scale:
            violations.append(
                Violation(
                    "self-adjoint",
                    f"conj(c) != (-1)^{term.overlap} c for c = {c}",
                    term,
                )
            )

        r = abs(c)
        if r > 0 and min(abs(c.real), abs(c.imag)) > COEFFICIENT_RTOL * r:
            _, theta = polar_form(c)
            violations.append(
                Violation("phase", f"phase θ = {theta:.6g} not in {{0, 1, ±1/2}}", term)
            )

    if violations:
        logger.debug(f"Interaction has {len(violations)} violations")
    return violations


def is_classical(phi: Interaction) -> bool:
    return phi.is_classical()


def enlarged_region(region: Region, phi: Interaction, within: Region | None = None) -> Region:
    """
    Λ_R: sites within sup-norm distance R of Λ, optionally cut to ``within``.
    """
    enlarged = region.neighborhood(phi.range)
    return enlarged & within if within is not None else enlarged
