"""
Jump-path representation of e^{−β(H+W)} and boundary-conditioned densities.
"""

from .cache import DensityCache, get_density_cache
from .density import BoundaryExpansion, boundary_expansion, boundary_weight, density_product
from .evaluators import (
    SeriesResult,
    boundary_density,
    exp_mc,
    exp_oracle,
    exp_series,
    exponentiate,
)
from .jump_path import (
    EnergySplit,
    Jump,
    JumpPath,
    PathWeight,
    classical_energy,
    concatenate,
    merge_paths,
    path_weight,
    reverse,
    split_energy,
    split_path,
)
from .simplex import ordered_weight, series_tail_bound, simplex_series

__all__ = [
    "BoundaryExpansion",
    "DensityCache",
    "EnergySplit",
    "Jump",
    "JumpPath",
    "PathWeight",
    "SeriesResult",
    "boundary_density",
    "boundary_expansion",
    "boundary_weight",
    "classical_energy",
    "concatenate",
    "density_product",
    "exp_mc",
    "exp_oracle",
    "exp_series",
    "exponentiate",
    "get_density_cache",
    "merge_paths",
    "ordered_weight",
    "path_weight",
    "reverse",
    "series_tail_bound",
    "simplex_series",
    "split_energy",
    "split_path",
]
