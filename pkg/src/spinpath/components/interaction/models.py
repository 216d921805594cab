"""
Standard interactions and a random generator of admissible ones.
"""

import numpy as np

from ..groupoid import Region, SpinModel
from .interaction import Interaction, PauliTerm


def _neighbours(sites: Region) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pairs at sup-norm distance 1."""
    pairs = []
    for i, x in enumerate(sites.sites):
        for y in sites.sites[i + 1 :]:
            if max(abs(a - b) for a, b in zip(x, y, strict=True)) == 1:
                pairs.append((x, y))
    return pairs


def ising_chain(
    sites: Region, coupling: float = 1.0, field: float = 0.0
) -> Interaction:
    """Classical −J Σ σ_xσ_y − h Σ σ_x over nearest-neighbour pairs of ``sites``."""
    terms = [
        PauliTerm(Region.of(x, y), Region(), complex(-coupling)) for x, y in _neighbours(sites)
    ]
    if field:
        terms += [PauliTerm(Region.of(x), Region(), complex(-field)) for x in sites]
    return Interaction(terms, range=1, model=SpinModel(2, sites.dimension or 1))


def transverse_field_ising(
    sites: Region, coupling: float = 1.0, transverse: float = 1.0, field: float = 0.0
) -> Interaction:
    """Ising couplings plus −Γ Σ σ^(1)_x."""
    base = ising_chain(sites, coupling, field)
    flips = [PauliTerm(Region(), Region.of(x), complex(-transverse)) for x in sites]
    return Interaction(list(base.terms) + flips, range=1, model=base.model)


def random_interaction(
    sites: Region,
    rng: np.random.Generator,
    scale: float = 0.5,
    classical: bool = False,
) -> Interaction:
    """
    Random admissible nearest-neighbour interaction.

    Single sites get σ^(3), σ^(1) and σ^(2) fields, the last written as
    i·σ^(3)σ^(1) with a purely imaginary coefficient. Neighbouring pairs get
    σ^(3)σ^(3), σ^(1)σ^(1) and σ^(3)_x σ^(1)_y couplings. Magnitudes are uniform
    in [0, scale] with random signs. ``classical`` keeps only diagonal terms.
    """

    def draw() -> float:
        return float(rng.choice([-1.0, 1.0]) * rng.uniform(0.0, scale))

    terms = []
    for x in sites:
        terms.append(PauliTerm(Region.of(x), Region(), complex(draw())))
        if not classical:
            terms.append(PauliTerm(Region(), Region.of(x), complex(draw())))
            terms.append(PauliTerm(Region.of(x), Region.of(x), complex(0.0, draw())))
    for x, y in _neighbours(sites):
        terms.append(PauliTerm(Region.of(x, y), Region(), complex(draw())))
        if not classical:
            terms.append(PauliTerm(Region(), Region.of(x, y), complex(draw())))
            terms.append(PauliTerm(Region.of(x), Region.of(y), complex(draw())))
    return Interaction(terms, range=1, model=SpinModel(2, sites.dimension or 1))
