"""Closed-walk series of tight-binding partition functions, three ways.

The package computes Taylor coefficients of single-electron partition
functions on seven lattice configurations via exact combinatorial
formulas, validates them against an independent walk-enumeration oracle,
and reproduces them a third time from dispersion moments over the
reciprocal primitive cell.
"""

from .lattices import (
    BUILTIN_NAMES,
    DispersionTerm,
    LatticeSpec,
    StepVector,
    builtin,
    dispersion_value,
)
from .oracle import ORACLE_BOUNDS, WalkTally, enumerate_walks, finite_chain_trace, oracle_bound
from .quadrature import (
    MomentResult,
    QuadratureGrid,
    auto_grid_size,
    complex_chain_z,
    complex_fourier_a,
    finite_chain_ksum,
    finite_chain_momenta,
    fourier_a_series,
    moment,
    phi_half_identity_check,
    two_band_even_moment,
)
from .series import (
    Series,
    bcc,
    chain_finite,
    chain_infinite,
    chain_nnn,
    diamond,
    expand,
    honeycomb,
    merge_labels,
    triangular,
)
from .verify import (
    CoefficientRecord,
    RecurrenceReport,
    SquareTestRecord,
    Tolerances,
    VerificationReport,
    appendix_b_report,
    check_square_conjecture,
    verify_identity,
    verify_recurrence,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "CoefficientRecord",
    "DispersionTerm",
    "LatticeSpec",
    "MomentResult",
    "ORACLE_BOUNDS",
    "QuadratureGrid",
    "RecurrenceReport",
    "Series",
    "SquareTestRecord",
    "StepVector",
    "Tolerances",
    "VerificationReport",
    "WalkTally",
    "appendix_b_report",
    "auto_grid_size",
    "bcc",
    "builtin",
    "chain_finite",
    "chain_infinite",
    "chain_nnn",
    "check_square_conjecture",
    "complex_chain_z",
    "complex_fourier_a",
    "diamond",
    "dispersion_value",
    "enumerate_walks",
    "expand",
    "finite_chain_ksum",
    "finite_chain_momenta",
    "finite_chain_trace",
    "fourier_a_series",
    "honeycomb",
    "merge_labels",
    "moment",
    "oracle_bound",
    "phi_half_identity_check",
    "triangular",
    "two_band_even_moment",
    "verify_identity",
    "verify_recurrence",
]
