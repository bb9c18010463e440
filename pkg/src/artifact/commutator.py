"""Self-commutator of ``T_{z^m zbar^n}`` (``m > n``): norm, shape, region map.

The eigenvalues ``lambda_k`` are explicit (see
:func:`artifact.sequences.lambda_eig`).  On the tail ``k >= m - n``
they sample ``F(x) = (x+1)((x+m-n+1)/(x+m+1)^2 - (x+n-m+1)/(x+n+1)^2)``;
the numerator of ``F'(x + m - n)`` is a cubic ``P`` whose only sign-variable
coefficient is the constant term ``d``, so ``F`` is decreasing on
``[m-n, inf)`` iff ``d < 0`` and otherwise has exactly one interior
maximum.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .numerics import (
    Polynomial,
    RootInterval,
    X,
    isolate_positive_roots,
    isolate_real_roots,
    refine_root,
)
from .sequences import lambda_eig


class Classification(str, enum.Enum):
    MONOTONE_DECREASING = "MonotoneDecreasing"
    UNIQUE_INTERIOR_MAX = "UniqueInteriorMax"
    DEGENERATE = "Degenerate"


class CoefficientSignFailure(AssertionError):
    pass


def _check_order(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)):
        raise TypeError("m and n must be integers")
    if n < 1 or m <= n:
        raise ValueError(f"need m > n >= 1, got m={m}, n={n}")


# -- the cubic P ------------------------------------------------------------


def cubic_coefficients(m: int, n: int) -> tuple[int, int, int, int]:
    """``(a, b, c, d)`` of ``P(x) = a x^3 + b x^2 + c x + d``; valid for any ints."""
    a = 2 * (n * n - m * m)
    b = 3 * (n - m) * (3 * m * m - n * n + 2 * m + 2 * n)
    c = (n - m) * (13 * m**3 + 18 * m * m + 6 * m - 13 * m * m * n + 6 * n - m * n * n - 6 * n * n + n**3)
    d = d_coefficient(m, n)
    return a, b, c, d


def d_coefficient(m: int, n: int) -> int:
    """Constant term of ``P``; ``d < 0`` iff the tail eigenvalues decrease."""
    return (1 + m) ** 3 * (m + n - m * n + 2 * m * m - n * n) - (2 * m + 1 - n) ** 3 * (
        m + n - m * n + m * m
    )


def cubic_P(m: int, n: int) -> Polynomial:
    """Numerator of ``F'(x + m - n)`` over the positive denominator
    ``(x + 2m - n + 1)^3 (x + m + 1)^3``."""
    _check_order(m, n)
    a, b, c, d = cubic_coefficients(m, n)
    if not (a < 0 and b < 0 and c < 0):
        raise CoefficientSignFailure(f"P coefficients a={a}, b={b}, c={c} not all negative")
    return Polynomial([d, c, b, a])


def derivative_numerator(m: int, n: int) -> Polynomial:
    """``(x+n+1)^3((m+n)(x+m+1) - 2mn) - (x+m+1)^3((m+n)(x+n+1) - 2mn)``, unshifted."""
    return (X + n + 1) ** 3 * ((m + n) * (X + m + 1) - 2 * m * n) - (X + m + 1) ** 3 * (
        (m + n) * (X + n + 1) - 2 * m * n
    )


# -- monotonicity -----------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    m: int
    n: int
    d: int
    classification: Classification
    critical_point: Optional[RootInterval] = None  # location of x* + (m - n)

    @property
    def monotone(self) -> bool:
        return self.classification is Classification.MONOTONE_DECREASING


def classify_monotonicity(m: int, n: int, tol=Fraction(1, 4)) -> MonotonicityReport:
    """Exact classification of ``F`` on ``[m-n, inf)`` by the sign of ``d``."""
    P = cubic_P(m, n)
    d = int(P.coeffs[0]) if P.coeffs else 0
    if d < 0:
        return MonotonicityReport(m, n, d, Classification.MONOTONE_DECREASING)
    if d == 0:
        return MonotonicityReport(m, n, d, Classification.DEGENERATE)
    roots = isolate_positive_roots(P)
    # a, b, c < 0 < d: one sign variation, so exactly one positive root,
    # and P(0) > 0 with P -> -inf makes it a maximum of F
    if len(roots) != 1:
        raise CoefficientSignFailure(f"expected one positive root of P, found {len(roots)}")
    iv = refine_root(P, roots[0], tol)
    q = m - n
    return MonotonicityReport(
        m, n, d, Classification.UNIQUE_INTERIOR_MAX, RootInterval(iv.lo + q, iv.hi + q)
    )


# -- the norm ---------------------------------------------------------------


@dataclass(frozen=True)
class CommutatorReport:
    m: int
    n: int
    norm: Fraction
    argmax_k: int
    head_max: Optional[tuple[int, Fraction]]  # None when m - n = 0
    tail_max: tuple[int, Fraction]
    monotonicity: MonotonicityReport


def _head_max(m: int, n: int) -> Optional[tuple[int, Fraction]]:
    q = m - n
    if q == 0:
        return None
    best_k = 0
    # compare (k+1)(k+q+1)/(k+m+1)^2 by cross-multiplication in integers
    bn, bd = q + 1, (m + 1) ** 2
    for k in range(1, q):
        num, den = (k + 1) * (k + q + 1), (k + m + 1) ** 2
        if num * bd > bn * den:
            best_k, bn, bd = k, num, den
    return best_k, Fraction(bn, bd)


def commutator_norm(m: int, n: int) -> CommutatorReport:
    """``max_k lambda_k`` with its (smallest) maximizing index, exactly."""
    report = classify_monotonicity(m, n)
    q = m - n
    head = _head_max(m, n)
    if report.classification is Classification.UNIQUE_INTERIOR_MAX:
        iv = report.critical_point
        # the max over integers sits at floor or ceil of x*; the interval may
        # straddle an integer, so take every integer neighbour it touches
        lo = max(q, math.floor(iv.lo))
        hi = max(q, math.ceil(iv.hi))
        cands = range(lo, hi + 1)
        tk = max(cands, key=lambda k: (lambda_eig(m, n, k), -k))
        tail = (tk, lambda_eig(m, n, tk))
    else:
        # d <= 0: P < 0 on (0, inf), so F decreases from x = m - n
        tail = (q, lambda_eig(m, n, q))
    if head is not None and head[1] >= tail[1]:
        norm, argmax = head[1], head[0]
    else:
        norm, argmax = tail[1], tail[0]
    return CommutatorReport(m, n, norm, argmax, head, tail, report)


def brute_force_norm(m: int, n: int, k_max: int) -> tuple[int, Fraction]:
    """``(argmax, max)`` of ``lambda_k`` over ``0 <= k <= k_max`` (exact)."""
    best_k, best = 0, lambda_eig(m, n, 0)
    for k in range(1, k_max + 1):
        v = lambda_eig(m, n, k)
        if v > best:
            best_k, best = k, v
    return best_k, best


# -- the 1/2 bound ----------------------------------------------------------


@dataclass(frozen=True)
class QuarticR:
    """``R(x + m - n) = x^4 + alpha x^3 + beta x^2 + gamma x + delta``."""

    m: int
    n: int
    alpha: int
    beta: int
    gamma: int
    delta: int


def quartic_R_polynomial(m: int, n: int) -> Polynomial:
    """``R(x) = (x+m+1)^2(x+n+1)^2 - 2(x+1)((x+m-n+1)(x+n+1)^2 - (x+n-m+1)(x+m+1)^2)``.

    ``R(k) > 0`` is ``lambda_k < 1/2`` after clearing denominators.
    """
    return (X + m + 1) ** 2 * (X + n + 1) ** 2 - 2 * (X + 1) * (
        (X + m - n + 1) * (X + n + 1) ** 2 - (X + n - m + 1) * (X + m + 1) ** 2
    )


def quartic_coefficients(m: int, n: int) -> QuarticR:
    """Closed-form coefficients of the shifted quartic.

    ``delta`` is the value ``R(m - n)``; it equals
    ``(m+1)^2 (2m-n+1)^2 - 2 (m-n)(m-n+1)(2m^2+m+n)``.
    """
    alpha = 4 + 6 * m - 2 * n
    beta = 6 * (2 * m + 1) + (8 * m + 6) * (m - n) + 3 * (m * m + n * n)
    gamma = 2 * (2 * m**3 + 3 * (m * m + n * n) + 6 * m + 2 + (m - n) * (m * m - m * n + n * n + 8 * m + 3))
    delta = (m + 1) ** 2 * (2 * m - n + 1) ** 2 - 2 * (m - n) * (m - n + 1) * (2 * m * m + m + n)
    return QuarticR(m, n, alpha, beta, gamma, delta)


@dataclass(frozen=True)
class HalfBoundRecord:
    quartic: QuarticR
    coefficients_positive: bool
    head_max: Optional[Fraction]
    norm: Fraction
    holds: bool


def verify_half_bound(m: int, n: int, check_expansion: bool = False) -> HalfBoundRecord:
    """Prove ``lambda_k < 1/2`` for every ``k``.

    Tail: all coefficients of ``R(x + m - n)`` positive, so ``R > 0`` on
    ``[m-n, inf)``.  Head: direct exact evaluation over ``0 <= k < m-n``.
    """
    _check_order(m, n)
    Rq = quartic_coefficients(m, n)
    if check_expansion:
        shifted = quartic_R_polynomial(m, n).shift(m - n)
        if shifted.coeffs != tuple(Fraction(c) for c in (Rq.delta, Rq.gamma, Rq.beta, Rq.alpha, 1)):
            raise CoefficientSignFailure("closed-form quartic coefficients disagree with expansion")
    positive = Rq.alpha > 0 and Rq.beta > 0 and Rq.gamma > 0 and Rq.delta > 0
    if not positive:
        raise CoefficientSignFailure(f"quartic coefficients not all positive: {Rq}")
    head = _head_max(m, n)
    head_val = head[1] if head else None
    if head_val is not None and not head_val < Fraction(1, 2):
        raise CoefficientSignFailure(f"head eigenvalue {head_val} >= 1/2")
    norm = commutator_norm(m, n).norm
    return HalfBoundRecord(Rq, positive, head_val, norm, norm < Fraction(1, 2))


# -- boundary slope ---------------------------------------------------------


def slope_cubic() -> Polynomial:
    """``6a^3 - 13a^2 + 6a - 1 = -(a^2(2a+1) - (2a-1)^3)``."""
    return Polynomial.from_descending([6, -13, 6, -1])


def boundary_slope(tol=Fraction(1, 10**12)) -> RootInterval:
    """The unique real root above 1 of the slope cubic, to width ``tol``."""
    p = slope_cubic()
    roots = [iv for iv in isolate_real_roots(p) if iv.hi > 1]
    if len(roots) != 1 or p(Fraction(1)) >= 0:
        raise AssertionError(f"expected a single root above 1, found {len(roots)}")
    iv = roots[0]
    if iv.lo < 1:
        iv = RootInterval(Fraction(1), iv.hi)
    return refine_root(p, iv, tol)


# -- region scan ------------------------------------------------------------

# rows with m below this fit the d computation in int64 without overflow
_INT64_SAFE_M = 3000


def _d_row(m: int) -> np.ndarray:
    """``d(m, n)`` for ``n = 1 .. m-1``."""
    if m < _INT64_SAFE_M:
        n = np.arange(1, m, dtype=np.int64)
    else:
        n = np.array([int(v) for v in range(1, m)], dtype=object)
    return (1 + m) ** 3 * (m + n - m * n + 2 * m * m - n * n) - (2 * m + 1 - n) ** 3 * (
        m + n - m * n + m * m
    )


@dataclass
class RegionScan:
    """Cells ``(m, n)``, ``1 <= n < m <= m_max``; a set bit marks ``d > 0``."""

    m_max: int
    n_max: int
    rows: dict  # m -> bool array over n = 1 .. m-1 (truncated at n_max)
    zero_cells: list = field(default_factory=list)
    boundary_samples: list = field(default_factory=list)  # (m, least shaded n)

    def shaded(self, m: int, n: int) -> bool:
        if not (1 <= n < m <= self.m_max) or n > self.n_max:
            return False
        return bool(self.rows[m][n - 1])

    def shaded_pairs(self) -> list[tuple[int, int]]:
        out = []
        for m in range(2, self.m_max + 1):
            for n in np.nonzero(self.rows[m])[0]:
                out.append((m, int(n) + 1))
        return out

    def bitmap(self) -> np.ndarray:
        """``B[n-1, m-1]``: row index is n ascending, column index is m ascending."""
        B = np.zeros((self.n_max, self.m_max), dtype=np.uint8)
        for m in range(2, self.m_max + 1):
            row = self.rows[m]
            B[: len(row), m - 1] = row
        return B

    def contiguity_violations(self) -> list[int]:
        """Rows ``m`` whose shaded ``n`` do not form one interval ending at ``m-1``."""
        bad = []
        for m in range(2, self.m_max + 1):
            idx = np.nonzero(self.rows[m])[0]
            if len(idx) == 0:
                continue
            if idx[-1] != m - 2 or len(idx) != idx[-1] - idx[0] + 1:
                bad.append(m)
        return bad

    def slope_at(self, m: int) -> Optional[float]:
        """``m / n_low(m)`` for the least shaded ``n`` in row ``m``."""
        idx = np.nonzero(self.rows[m])[0]
        return None if len(idx) == 0 else m / (int(idx[0]) + 1)

    def fitted_slope(self, fraction: float = 0.5) -> float:
        """Least-squares slope ``m ~ alpha n`` through the lower-boundary
        samples with ``m`` in the top ``fraction`` of the grid."""
        pts = [(m, n) for m, n in self.boundary_samples if m >= (1 - fraction) * self.m_max]
        mm = np.array([p[0] for p in pts], float)
        nn = np.array([p[1] for p in pts], float)
        return float(mm @ nn / (nn @ nn))


def default_threads() -> int:
    env = os.environ.get("BERGMAN_HYPO_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def scan_region(m_max: int, n_max: Optional[int] = None, threads: Optional[int] = None) -> RegionScan:
    """Sign of ``d(m, n)`` over the grid, rows in parallel, assembled in order."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    n_max = m_max - 1 if n_max is None else min(n_max, m_max - 1)
    threads = threads or default_threads()
    ms = list(range(2, m_max + 1))

    def work(m: int):
        d = _d_row(m)[:n_max]
        return m, (d > 0).astype(bool), [int(i) + 1 for i in np.nonzero(d == 0)[0]]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(work, ms))
    else:
        results = [work(m) for m in ms]
    rows, zeros, samples = {}, [], []
    for m, row, z in results:  # ex.map preserves input order
        rows[m] = row
        zeros.extend((m, n) for n in z)
        idx = np.nonzero(row)[0]
        if len(idx):
            samples.append((m, int(idx[0]) + 1))
    return RegionScan(m_max, n_max, rows, zeros, samples)
