"""Uniform dominated convergence of proper bivariate hypergeometric series.

The package decides, in exact rational arithmetic, whether a family of
series indexed by a second integer parameter admits a summable dominating
sequence (and therefore converges uniformly with an interchangeable limit),
classifies and evaluates the limit, and cross-checks everything with a
floating-point oracle.
"""

from .core_arith import AlgebraicReal, GaussianRational, PolyQ
from .decision import LimitDescription, Verdict, decide, limit_series
from .invariants import StructuralConstants, structural_constants
from .oracle import empirical_verdict, limit_value_numeric
from .term_model import (
    BivarPoly,
    PfqSpec,
    PochhammerFactor,
    ProperTerm,
    from_pfq,
    normalize,
    validate,
)

__all__ = [
    "AlgebraicReal",
    "BivarPoly",
    "GaussianRational",
    "LimitDescription",
    "PfqSpec",
    "PochhammerFactor",
    "PolyQ",
    "ProperTerm",
    "StructuralConstants",
    "Verdict",
    "decide",
    "empirical_verdict",
    "from_pfq",
    "limit_series",
    "limit_value_numeric",
    "normalize",
    "structural_constants",
    "validate",
]

__version__ = "0.1.0"
