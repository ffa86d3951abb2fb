"""Buckling loads, Korn constants and scaling studies for thin cylindrical shells."""

from ._core import (
    ConfigError,
    DomainError,
    Material,
    ShellbuckleError,
    ShellGeometry,
    SolverError,
    ansatz_limits,
    classical_load,
    component_bound,
    compressiveness,
    derive_material,
    fit_exponent,
    fixedbc_limit,
    koiter_circle_n,
    korn_constant,
    lambda_star,
    make_geometry,
    max_wavenumber,
    min_rayleigh,
    minimize_load,
    rect_korn,
    run_cli,
    trivial_branch,
)

__version__ = "0.1.0"
