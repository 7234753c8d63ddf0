"""Symbolic calculus for the vector-bundle dictionary of particle physics.

The package normalizes bundle expressions, catalogs particle species with
their bundle assignments, decides bound-state questions, rewrites
expressions under formal and spontaneous symmetry breaking, and analyzes
the two-parameter family of invariant metrics behind coupling constants
and the electroweak mixing angle.
"""

from .expr import (
    Atom,
    BundleError,
    BundleExpr,
    Conj,
    Ext,
    ExtDomainError,
    GaugeKind,
    GenKind,
    Generator,
    Monomial,
    NormalForm,
    RankInfo,
    Sum,
    Tensor,
    ZERO,
    ZeroBundle,
    conj,
    equal_normal,
    fibre_dim,
    normalize,
    rank_info,
)
from .grammar import ExprSyntaxError, format_expr, format_normal, parse

__all__ = [
    "Atom",
    "BundleError",
    "BundleExpr",
    "Conj",
    "Ext",
    "ExtDomainError",
    "ExprSyntaxError",
    "GaugeKind",
    "GenKind",
    "Generator",
    "Monomial",
    "NormalForm",
    "RankInfo",
    "Sum",
    "Tensor",
    "ZERO",
    "ZeroBundle",
    "conj",
    "equal_normal",
    "fibre_dim",
    "format_expr",
    "format_normal",
    "normalize",
    "parse",
    "rank_info",
]

__version__ = "0.1.0"
