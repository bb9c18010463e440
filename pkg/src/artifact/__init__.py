"""Hyponormality of two-term Bergman-space Toeplitz operators and the
self-commutator of ``T_{z^m zbar^n}``."""

from .commutator import (
    Classification,
    CommutatorReport,
    MonotonicityReport,
    RegionScan,
    boundary_slope,
    classify_monotonicity,
    commutator_norm,
    cubic_P,
    scan_region,
    verify_half_bound,
)
from .hypotest import (
    HypoVerdict,
    QuadraticFormBand,
    Status,
    TestVector,
    WindowSearchConfig,
    assemble_form,
    basis_vector_bound,
    boundary_sweep,
    certify_hyponormal,
    decide,
    kl_ratio_bound,
    lambda_ratio,
    refute,
    refute_truncated,
    refute_window,
)
from .sequences import (
    SequencePoint,
    SymbolParams,
    asymptotic_leading,
    delta,
    lambda_eig,
    omega,
    sigma,
)

__version__ = "0.1.0"
