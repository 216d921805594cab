"""
Finite-volume Gibbs functionals, specification axioms and the DLR equation.
"""

from .convergence import ConvergenceDiagnostic, convergence_diagnostic
from .functional import (
    BoundaryMap,
    GibbsFunctional,
    boundary_functional,
    boundary_map,
    fixed_jump_functional,
    free_gibbs,
    path_functional,
    universe_exponential,
)
from .parameters import GibbsParameters, lift
from .specification import (
    PositivitySurvey,
    consistency_check,
    dlr_check,
    positivity_survey,
    specification_check,
    validate_density,
)

__all__ = [
    "BoundaryMap",
    "ConvergenceDiagnostic",
    "GibbsFunctional",
    "GibbsParameters",
    "PositivitySurvey",
    "boundary_functional",
    "boundary_map",
    "consistency_check",
    "convergence_diagnostic",
    "dlr_check",
    "fixed_jump_functional",
    "free_gibbs",
    "lift",
    "path_functional",
    "positivity_survey",
    "specification_check",
    "universe_exponential",
    "validate_density",
]
