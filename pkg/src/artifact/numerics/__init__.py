"""Exact rationals, polynomial root isolation and banded eigenvalues."""

from .banded import (
    DimensionMismatch,
    banded_min_eigenvalue,
    negative_inertia,
    quadratic_form,
    to_dense,
)
from .polynomial import (
    X,
    BracketError,
    Polynomial,
    RootInterval,
    descartes_bound,
    isolate_positive_roots,
    isolate_real_roots,
    refine_root,
)
from .rational import Rational, rational_sqrt, round_to_dyadic, sqrt_upper, to_rational

__all__ = [
    "BracketError",
    "DimensionMismatch",
    "Polynomial",
    "Rational",
    "RootInterval",
    "X",
    "banded_min_eigenvalue",
    "descartes_bound",
    "isolate_positive_roots",
    "isolate_real_roots",
    "negative_inertia",
    "quadratic_form",
    "rational_sqrt",
    "refine_root",
    "round_to_dyadic",
    "sqrt_upper",
    "to_dense",
    "to_rational",
]
