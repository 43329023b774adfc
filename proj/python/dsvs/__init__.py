"""Separated solutions of the Davey-Stewartson system with gain.

Thin bindings over the C++ library: catalog cases, field sampling,
residual checks, analytics and the command line.
"""

from ._core import (
    CatalogEntry,
    SingularInputError,
    SolutionSpec,
    UsageError,
    Window,
    bilinear_residuals,
    build_case,
    catalog_names,
    decay_profile,
    estimate_period,
    parse_spec,
    render_bytes,
    run_cli,
    sample,
)

__all__ = [
    "CatalogEntry",
    "SingularInputError",
    "SolutionSpec",
    "UsageError",
    "Window",
    "bilinear_residuals",
    "build_case",
    "catalog_names",
    "decay_profile",
    "estimate_period",
    "parse_spec",
    "render_bytes",
    "run_cli",
    "sample",
]
