"""Exact tools for free divisors assembled from members of a pencil of plane curves."""

__version__ = "0.1.0"

from .errors import NotReducedError, IdentityViolated, ValidationError
from .ideal import Budget, BudgetExceeded, GroebnerBasis, Ideal, SchemeNotFinite, TermOrder, groebner_basis
from .logtangent import FreenessReport, freeness, syzygy_min_gens, tjurina_total
from .pencil import MemberLabel, Pencil, Selection, discriminant, theorem_report, validate_pencil
from .poly import Poly, PolyVector3, gradient, parse_polynomial, wedge

__all__ = [
    "Budget", "BudgetExceeded", "FreenessReport", "GroebnerBasis", "Ideal", "MemberLabel",
    "NotReducedError", "IdentityViolated", "Pencil", "Poly", "PolyVector3", "SchemeNotFinite",
    "Selection", "TermOrder", "ValidationError", "discriminant", "freeness", "gradient",
    "groebner_basis", "parse_polynomial", "syzygy_min_gens", "theorem_report", "tjurina_total",
    "validate_pencil", "wedge",
]
