"""
Check suites, their registry and the report format used by the CLI.
"""

from .diagnostics import bernoulli_convergence, pmf_diagnostics
from .registry import CheckRegistry
from .report import (
    RunManifest,
    build_report,
    check_report,
    encode_complex,
    encode_float,
    encode_matrix,
    model_digest,
    render_report,
    strip_timing,
    to_jsonable,
    write_report,
)
from .suites import (
    DlrSuite,
    KmsSuite,
    LemmaSuite,
    SpecificationSuite,
    SuiteContext,
    corrupt_density,
    default_registry,
    random_boundary_path,
)

__all__ = [
    "CheckRegistry",
    "DlrSuite",
    "KmsSuite",
    "LemmaSuite",
    "RunManifest",
    "SpecificationSuite",
    "SuiteContext",
    "bernoulli_convergence",
    "build_report",
    "check_report",
    "corrupt_density",
    "default_registry",
    "encode_complex",
    "encode_float",
    "encode_matrix",
    "model_digest",
    "pmf_diagnostics",
    "random_boundary_path",
    "render_report",
    "strip_timing",
    "to_jsonable",
    "write_report",
]
