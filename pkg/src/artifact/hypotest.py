"""Hyponormality tests for ``T_phi``, ``phi = z^n |z|^{2s} + a zbar^m |z|^{2t}``.

``T_phi`` is hyponormal iff, for every finitely supported ``u``,

    |a|^2 sum omega_k |u_k|^2 - 2|a| sum |delta_k u_k u_{k+n+m}| + sum sigma_k |u_k|^2 > 0.

Only ``|u_k|`` enters, so the worst case is a nonnegative real vector and
the test reduces to positivity of a real symmetric matrix with diagonal
``sigma_k + |a|^2 omega_k`` and a single band ``-|a| |delta_k|`` at offset
``n + m``.

Three kinds of answer are produced:

* a certificate of hyponormality (pointwise diagonal dominance checked
  exactly on a finite range, plus an exact polynomial proof for the tail),
* a refutation, i.e. a finitely supported vector whose form value is
  negative in exact rational arithmetic,
* ``Inconclusive`` when neither can be established.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .numerics import (
    Polynomial,
    X,
    banded_min_eigenvalue,
    isolate_positive_roots,
    round_to_dyadic,
    to_rational,
)
from .sequences import (
    ModeError,
    SymbolParams,
    delta_value,
    lambda_eig,
    omega_value,
    sigma_value,
)

DEFAULT_K = 256
MAX_K = 2**15


class Status(str, enum.Enum):
    CERTIFIED_HYPONORMAL = "CertifiedHyponormal"
    CERTIFIED_NOT_HYPONORMAL = "CertifiedNotHyponormal"
    INCONCLUSIVE = "Inconclusive"


class TruncationTooSmall(ValueError):
    pass


class ConfigError(ValueError):
    """Window-search configuration violates the margin inequality."""


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class TestVector:
    """Finitely supported test sequence ``u`` (``u_k = values[k - start]``)."""

    support_start: int
    values: tuple
    kind: str  # "window" | "eigenvector" | "basis"

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not any(self.values):
            raise ValueError("test vector is identically zero")

    @property
    def support_end(self) -> int:
        return self.support_start + len(self.values) - 1

    def dense(self, K: int) -> list:
        u = [Fraction(0)] * K
        for i, v in enumerate(self.values):
            u[self.support_start + i] = v
        return u


@dataclass
class HypoVerdict:
    status: Status
    witness: Optional[TestVector] = None
    witness_value: Optional[Fraction] = None
    certificate: Optional[dict] = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is Status.CERTIFIED_NOT_HYPONORMAL:
            assert self.witness is not None and self.witness_value is not None
            assert self.witness_value < 0
        if self.status is Status.CERTIFIED_HYPONORMAL:
            assert self.certificate is not None

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED_HYPONORMAL

    @property
    def refuted(self) -> bool:
        return self.status is Status.CERTIFIED_NOT_HYPONORMAL


# -- the truncated form -----------------------------------------------------


@dataclass
class QuadraticFormBand:
    """Truncation of the worst-case real form to indices ``0 <= k < K``."""

    params: SymbolParams
    K: int
    diag: list
    band: list
    exact: bool

    @property
    def offset(self) -> int:
        return self.params.offset

    def value(self, u: Sequence) -> Fraction | float:
        """Form value ``u^T A u`` (``u`` of length ``K``)."""
        p = self.offset
        total = Fraction(0) if self.exact else 0.0
        for k, uk in enumerate(u):
            if uk:
                total += self.diag[k] * uk * uk
                if k + p < self.K and u[k + p]:
                    total += 2 * self.band[k] * uk * u[k + p]
        return total

    def value_on(self, w: TestVector) -> Fraction | float:
        """Form value of a test vector supported inside the truncation."""
        if w.support_end >= self.K:
            raise TruncationTooSmall("witness support exceeds the truncation")
        return _sparse_value(self.diag, self.band, self.offset, w)

    def as_float(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.array([float(x) for x in self.diag]),
            np.array([float(x) for x in self.band]),
        )

    def dense(self) -> np.ndarray:
        d, b = self.as_float()
        A = np.diag(d)
        idx = np.arange(len(b))
        A[idx, idx + self.offset] = b
        A[idx + self.offset, idx] = b
        return A


def _mode_params(params: SymbolParams, exact: bool) -> SymbolParams:
    return params.exact() if exact else params.floating()


def assemble_form(params: SymbolParams, K: int, exact: bool = True) -> QuadraticFormBand:
    """Fill the diagonal and band of the truncated form.

    ``diag[k] = sigma_k + |a|^2 omega_k`` and
    ``band[k] = -|a| |delta_k|`` couples ``k`` with ``k + n + m``.
    """
    p = params.offset
    if K <= p:
        raise TruncationTooSmall(f"K={K} must exceed n+m={p}")
    q = _mode_params(params, exact)
    A = q.abs_a()
    A2 = A * A
    n, m, s, t = q.n, q.m, q.s, q.t
    diag = [sigma_value(n, s, k) + A2 * omega_value(m, t, k) for k in range(K)]
    band = [-A * abs(delta_value(n, m, s, t, k)) for k in range(K - p)]
    return QuadraticFormBand(q, K, diag, band, exact)


def hncon_value(params: SymbolParams, u: Sequence) -> complex | float | Fraction:
    """Left side of the hyponormality inequality for an arbitrary (complex) ``u``.

    Evaluated term by term from the sequences, independently of
    :func:`assemble_form`.
    """
    n, m, s, t = params.n, params.m, params.s, params.t
    A = params.abs_a()
    p = n + m
    total = 0
    for k, uk in enumerate(u):
        mag2 = abs(uk) ** 2
        total += (sigma_value(n, s, k) + A * A * omega_value(m, t, k)) * mag2
        if k + p < len(u):
            total -= 2 * A * abs(delta_value(n, m, s, t, k) * uk * _conj(u[k + p]))
    return total


def _conj(x):
    return x.conjugate() if isinstance(x, complex) else x


def _sparse_value(diag, band, offset: int, w: TestVector) -> Fraction:
    start = w.support_start
    vals = w.values
    total = Fraction(0)
    for i, v in enumerate(vals):
        if not v:
            continue
        k = start + i
        total += diag[k] * v * v
        j = i + offset
        if j < len(vals) and vals[j] and k < len(band):
            total += 2 * band[k] * v * vals[j]
    return total


def exact_value(params: SymbolParams, w: TestVector) -> Fraction:
    """Exact form value of a test vector, computed from the sequences."""
    q = params.exact()
    A = q.abs_a()
    n, m, s, t = q.n, q.m, q.s, q.t
    p = n + m
    start, vals = w.support_start, w.values
    total = Fraction(0)
    for i, v in enumerate(vals):
        if not v:
            continue
        k = start + i
        total += (sigma_value(n, s, k) + A * A * omega_value(m, t, k)) * v * v
        j = i + p
        if j < len(vals) and vals[j]:
            total -= 2 * A * abs(delta_value(n, m, s, t, k)) * v * vals[j]
    return total


# -- certification ----------------------------------------------------------


def pointwise_margin(params: SymbolParams, k: int) -> Fraction:
    """``c_k = sigma_k + |a|^2 omega_k - |a| (|delta_k| + |delta_{k-n-m}|)``.

    If every ``c_k > 0`` the form is positive: ``2|x y| <= x^2 + y^2``
    splits each cross term onto its two diagonal entries.
    """
    n, m, s, t = params.n, params.m, params.s, params.t
    A = params.abs_a()
    p = n + m
    c = sigma_value(n, s, k) + A * A * omega_value(m, t, k) - A * abs(delta_value(n, m, s, t, k))
    if k >= p:
        c -= A * abs(delta_value(n, m, s, t, k - p))
    return c


def delta_sign_threshold(params: SymbolParams) -> tuple[int, int]:
    """``(k0, sgn)``: the sign of ``delta_k`` equals ``sgn`` (or 0) for all ``k >= k0``.

    The numerator of ``delta_k`` is affine in ``k``.
    """
    n, m, s, t = params.n, params.m, to_rational(params.s), to_rational(params.t)
    slope = n * t - m * s
    const = t * (n * n - m * s + n * (s + 1)) - m * s * (m + 1)
    if slope == 0:
        return 0, (const > 0) - (const < 0)
    root = -const / slope
    k0 = max(0, math.floor(root) + 1)
    return k0, 1 if slope > 0 else -1


def tail_margin_polynomial(params: SymbolParams) -> tuple[Polynomial, int]:
    """Numerator ``N`` of ``c_k`` as a polynomial in ``k`` on the tail.

    Returns ``(N, k_tail)``.  For real ``k >= k_tail`` the closed forms of
    all three sequences apply, the signs of ``delta_k`` and
    ``delta_{k-n-m}`` are fixed, the common denominator is positive, and
    ``c_k = N(k) / D(k)``.
    """
    q = params.exact()
    n, m, s, t = q.n, q.m, q.s, q.t
    A = q.abs_a()
    p = n + m
    k0, sgn = delta_sign_threshold(q)
    k_tail = max(n, m, p + k0, p)

    def lin(c):
        return Polynomial.linear(c, 1)

    sig_num = n * (n * n + n * (2 * s + X + 1) + 2 * s * (X + s + 1))
    sig_den = lin(s + 1) ** 2 * lin(n + s + 1) ** 2
    om_num = m * (m * m + m * (2 * t + X + 1) + 2 * t * (X + t + 1))  # |omega|
    om_den = lin(t + 1) ** 2 * lin(m + t + 1) ** 2

    def d_num(shift):
        k = X + shift
        return t * (n * n - m * s + n * (s + k + 1)) - m * s * (m + k + 1)

    def d_den(shift):
        k = X + shift
        return (k + n + s + 1) * (k + n + m + t + 1) * (k + n + m + s + 1) * (k + m + t + 1)

    d0n, d0d = d_num(0), d_den(0)
    d1n, d1d = d_num(-p), d_den(-p)
    N = (
        sig_num * om_den * d0d * d1d
        - A * A * om_num * sig_den * d0d * d1d
        - A * sgn * (d0n * d1d + d1n * d0d) * sig_den * om_den
    )
    return N, k_tail


def certify_hyponormal(
    params: SymbolParams, K: int = DEFAULT_K, K_max: int = MAX_K
) -> HypoVerdict:
    """Try to prove hyponormality by exact pointwise diagonal dominance.

    ``c_k > 0`` is checked exactly for ``k < K_eff`` and the tail
    ``k >= K_eff`` is settled by showing the numerator polynomial of
    ``c_k`` has no real root beyond ``K_eff``.  ``K_eff`` starts at
    ``max(K, tail threshold)`` and is pushed past the largest real root of
    the numerator when that stays below ``K_max``.  Never returns a false
    certificate; on failure the verdict is ``Inconclusive``.
    """
    try:
        q = params.exact()
    except ModeError:
        raise
    diagnostics: dict = {"mode": "exact", "method": "pointwise-dominance"}
    A = q.abs_a()
    if A == 0:
        # form is sum sigma_k |u_k|^2 with sigma_k > 0
        return HypoVerdict(
            Status.CERTIFIED_HYPONORMAL,
            certificate={"reason": "a = 0", "K_finite": 0, "tail_start": 0},
            diagnostics={**diagnostics, "K": 0},
        )
    N, k_tail = tail_margin_polynomial(q)
    if N.is_zero:
        return _degenerate(q, max(K, k_tail), diagnostics)
    K_eff = max(K, k_tail)
    roots = isolate_positive_roots(N.shift(K_eff))
    if roots:
        beyond = K_eff + math.ceil(roots[-1].hi) + 1
        diagnostics["tail_roots_until"] = beyond
        if beyond > K_max:
            diagnostics.update(K=K_eff, reason="tail margin changes sign beyond K_max")
            return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)
        K_eff = beyond
    if N(K_eff) <= 0:
        diagnostics.update(K=K_eff, reason="tail margin not positive")
        return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)

    min_margin = None
    all_zero = True
    for k in range(K_eff):
        c = pointwise_margin(q, k)
        if c != 0:
            all_zero = False
        if c <= 0:
            if all_zero and _form_identically_zero(q, K_eff):
                return _degenerate(q, K_eff, diagnostics)
            diagnostics.update(K=K_eff, reason=f"pointwise margin fails at k={k}", failing_k=k)
            return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)
        if min_margin is None or c < min_margin:
            min_margin = c
    cert = {
        "K_finite": K_eff,
        "min_finite_margin": min_margin,
        "tail_start": K_eff,
        "tail_numerator_degree": N.degree,
        "tail_value_at_start": N(K_eff),
        "delta_sign_from": delta_sign_threshold(q)[0],
    }
    diagnostics["K"] = K_eff
    return HypoVerdict(Status.CERTIFIED_HYPONORMAL, certificate=cert, diagnostics=diagnostics)


def _form_identically_zero(q: SymbolParams, K: int) -> bool:
    n, m, s, t = q.n, q.m, q.s, q.t
    A = q.abs_a()
    for k in range(K):
        if sigma_value(n, s, k) + A * A * omega_value(m, t, k) != 0:
            return False
        if A and delta_value(n, m, s, t, k) != 0:
            return False
    return True


def _degenerate(q: SymbolParams, K: int, diagnostics: dict) -> HypoVerdict:
    diagnostics.update(K=K, degenerate_form=True, reason="form vanishes identically")
    return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)


# -- refutation -------------------------------------------------------------


def _basis_witness(form: QuadraticFormBand) -> Optional[tuple[TestVector, Fraction]]:
    k = min(range(form.K), key=lambda j: form.diag[j])
    if form.diag[k] < 0:
        w = TestVector(k, (Fraction(1),), "basis")
        return w, form.diag[k]
    return None


def _round_vector(vec: np.ndarray, cutoff: float) -> Optional[TestVector]:
    v = np.abs(vec)
    v = v / v.max()
    keep = np.nonzero(v >= cutoff)[0]
    if len(keep) == 0:
        return None
    lo, hi = keep[0], keep[-1]
    vals = tuple(round_to_dyadic(float(x)) if x >= cutoff else Fraction(0) for x in v[lo : hi + 1])
    if not any(vals):
        return None
    return TestVector(int(lo), vals, "eigenvector")


def refute_truncated(params: SymbolParams, K: int = DEFAULT_K) -> HypoVerdict:
    """Look for a negative direction of the truncated form.

    A negative diagonal entry gives a basis witness directly.  Otherwise the
    smallest eigenpair of the float form is computed; the eigenvector is
    made nonnegative, rounded to dyadic rationals and re-evaluated exactly.
    Only a strictly negative exact value is accepted as a refutation.
    """
    form = assemble_form(params, K, exact=True)
    diagnostics: dict = {"K": K, "mode": "exact", "method": "truncated-eigen"}
    if not any(form.diag) and not any(form.band):
        diagnostics.update(degenerate_form=True, reason="form vanishes identically")
        return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)
    hit = _basis_witness(form)
    if hit is not None:
        w, val = hit
        diagnostics["method"] = "basis"
        return HypoVerdict(Status.CERTIFIED_NOT_HYPONORMAL, w, val, diagnostics=diagnostics)
    d, b = form.as_float()
    lam, vec = banded_min_eigenvalue(d, b, form.offset)
    diagnostics["lambda_min"] = lam
    scale = max(np.abs(d).max(), np.abs(b).max() if len(b) else 0.0)
    if lam > 1e-12 * scale:
        return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)
    # coarse supports are cheaper to evaluate exactly; fall back to finer ones
    for cutoff in (1e-4, 1e-8, 2.0**-53):
        w = _round_vector(vec, cutoff)
        if w is None:
            continue
        val = form.value_on(w)
        if val < 0:
            diagnostics["support_cutoff"] = cutoff
            return HypoVerdict(Status.CERTIFIED_NOT_HYPONORMAL, w, val, diagnostics=diagnostics)
        if val == 0:
            diagnostics["zero_value_witness"] = True
    return HypoVerdict(Status.INCONCLUSIVE, diagnostics=diagnostics)


def refute(params: SymbolParams, K: int = DEFAULT_K, K_max: int = MAX_K) -> HypoVerdict:
    """:func:`refute_truncated` with the truncation doubled up to ``K_max``."""
    K = max(K, params.offset + 1)
    while True:
        v = refute_truncated(params, K)
        if v.refuted or v.diagnostics.get("degenerate_form") or 2 * K > K_max:
            return v
        K *= 2


def decide(params: SymbolParams, K: int = DEFAULT_K, K_max: int = MAX_K) -> HypoVerdict:
    """Certify, else refute, else ``Inconclusive``."""
    v = certify_hyponormal(params, K, K_max)
    if v.certified or v.diagnostics.get("degenerate_form"):
        return v
    r = refute(params, K, K_max)
    if r.refuted:
        return r
    return HypoVerdict(
        Status.INCONCLUSIVE,
        diagnostics={"certify": v.diagnostics, "refute": r.diagnostics},
    )


# -- window construction ----------------------------------------------------


def margin_ratio(eta, k2: int, offset: int) -> Fraction:
    """``2 eta (k2 - offset + 1) / (k2 + 1)``."""
    return 2 * to_rational(eta) * (k2 - offset + 1) / Fraction(k2 + 1)


@dataclass(frozen=True)
class WindowSearchConfig:
    """Window ``u = 1`` on ``[k1, k1 + k2]`` with ``t`` tied to ``k1``."""

    eta: Fraction
    epsilon: Fraction
    k2: int
    offset: int
    k1_grid: tuple = tuple(2**j for j in range(8, 25))
    t_rule: str = "isqrt"  # t = floor(sqrt(k1)), exact when k1 is a square

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not self.eta > Fraction(1, 2):
            raise ConfigError(f"eta = {self.eta} must exceed 1/2")
        if not 0 < self.epsilon < 1:
            raise ConfigError("epsilon must lie in (0, 1)")
        lhs = margin_ratio(self.eta, self.k2, self.offset) * (1 - self.epsilon) / (1 + self.epsilon)
        if not lhs > 1:
            raise ConfigError(
                f"2 eta (k2-n-m+1)(1-eps)/((k2+1)(1+eps)) = {float(lhs):.6g} is not > 1"
            )

    @classmethod
    def for_family(cls, n: int, m: int, s, c, **kw) -> "WindowSearchConfig":
        """Smallest ``k2`` whose margin ratio clears the midpoint of ``(1, 2 eta)``."""
        eta = abs(to_rational(c)) / (n + 2 * to_rational(s))
        if not eta > Fraction(1, 2):
            raise ConfigError(f"eta = |c|/(n+2s) = {eta} must exceed 1/2")
        p = n + m
        target = (1 + 2 * eta) / 2
        k2 = p
        while not margin_ratio(eta, k2, p) > target:
            k2 += 1
        r = margin_ratio(eta, k2, p)
        eps = (r - 1) / (2 * (r + 1))
        return cls(eta=eta, epsilon=eps, k2=k2, offset=p, **kw)


def t_for_k1(k1: int, rule: str = "isqrt") -> Fraction:
    if rule != "isqrt":
        raise ValueError(f"unknown t rule {rule!r}")
    return Fraction(math.isqrt(k1))


def window_value(params: SymbolParams, k1: int, k2: int) -> Fraction:
    """Exact form value of the window ``u = 1`` on ``[k1, k1 + k2]``."""
    w = TestVector(k1, (Fraction(1),) * (k2 + 1), "window")
    return exact_value(params, w)


def refute_window(
    n: int, m: int, s, c, config: Optional[WindowSearchConfig] = None
) -> HypoVerdict:
    """Search the ``k1`` grid for a window violating positivity at ``a = c/t``."""
    if config is None:
        config = WindowSearchConfig.for_family(n, m, s, c)
    else:
        config.validate()
        if config.offset != n + m:
            raise ConfigError("config offset does not match n + m")
    c = to_rational(c)
    tried = []
    for k1 in config.k1_grid:
        t = t_for_k1(k1, config.t_rule)
        params = SymbolParams(n, m, to_rational(s), t, c / t)
        w = TestVector(k1, (Fraction(1),) * (config.k2 + 1), "window")
        val = exact_value(params, w)
        tried.append((k1, float(val)))
        if val < 0:
            return HypoVerdict(
                Status.CERTIFIED_NOT_HYPONORMAL,
                w,
                val,
                diagnostics={
                    "method": "window",
                    "mode": "exact",
                    "t": t,
                    "a": c / t,
                    "k1": k1,
                    "k2": config.k2,
                    "eta": config.eta,
                    "epsilon": config.epsilon,
                    "tried": tried,
                },
            )
    return HypoVerdict(
        Status.INCONCLUSIVE,
        diagnostics={"method": "window", "k2": config.k2, "tried": tried, "reason": "grid exhausted"},
    )


# -- closed-form necessary bounds -------------------------------------------


@dataclass(frozen=True)
class BasisBound:
    """``inf_k sigma_k / (-omega_k)``: necessary bound on ``|a|^2``."""

    value: Fraction
    argmin_k: Optional[int]  # None when the infimum is the k -> infinity limit
    limit: Fraction
    scan_min: Fraction
    scan_argmin: int
    K_scan: int
    first: Fraction  # k = 0 term


def basis_ratio(params: SymbolParams, k: int) -> Fraction:
    q = params.exact()
    return sigma_value(q.n, q.s, k) / -omega_value(q.m, q.t, k)


def basis_vector_bound(params: SymbolParams, K_scan: int = 4096) -> BasisBound:
    """Necessary condition from basis test vectors ``e_k``.

    ``|a|^2 <= sigma_k / (-omega_k)`` for every ``k``; the ratio tends to
    ``n(n+2s) / (m(m+2t))``.  For ``t = 0`` the k = 0 term and the limit
    are the two entries of ``min{(m+1)(n+1)/(n+s+1)^2, n(n+2s)/m^2}``.
    """
    q = params.exact()
    n, m, s, t = q.n, q.m, q.s, q.t
    limit = n * (n + 2 * s) / (m * (m + 2 * t))
    ratios = [basis_ratio(q, k) for k in range(K_scan + 1)]
    j = min(range(len(ratios)), key=ratios.__getitem__)
    scan_min = ratios[j]
    if scan_min <= limit:
        return BasisBound(scan_min, j, Fraction(limit), scan_min, j, K_scan, ratios[0])
    return BasisBound(Fraction(limit), None, Fraction(limit), scan_min, j, K_scan, ratios[0])


def tzero_bound(n: int, m: int, s) -> Fraction:
    """``min{(m+1)(n+1)/(n+s+1)^2, n(n+2s)/m^2}``."""
    s = to_rational(s)
    return min(Fraction((m + 1) * (n + 1)) / (n + s + 1) ** 2, n * (n + 2 * s) / Fraction(m * m))


def lambda_ratio(m: int, q: int, k: int) -> Fraction:
    """``lambda_k(m, m-1) / lambda_k(m-q, m-q-1)``."""
    if m - q - 1 < 1:
        raise ValueError("need m - q - 1 >= 1")
    if k < 1:
        raise ValueError("need k >= 1")
    return lambda_eig(m, m - 1, k) / lambda_eig(m - q, m - q - 1, k)


def lambda_ratio_limit(m: int, q: int) -> Fraction:
    """Limit of :func:`lambda_ratio` as ``k -> infinity``.

    For ``m > n`` the tail eigenvalue behaves like ``C(m, n) / k^2`` with
    ``C = 3 b1^2 - 2 a1 b1 - 3 b2^2 + 2 a2 b2``, where
    ``a1 = m-n+1, b1 = m+1, a2 = n-m+1, b2 = n+1``.
    """

    def C(mm: int, nn: int) -> int:
        a1, b1, a2, b2 = mm - nn + 1, mm + 1, nn - mm + 1, nn + 1
        return 3 * b1 * b1 - 2 * a1 * b1 - 3 * b2 * b2 + 2 * a2 * b2

    return Fraction(C(m, m - 1), C(m - q, m - q - 1))


@dataclass(frozen=True)
class KLBound:
    value: Fraction  # bound on |a|^2
    first_term: Fraction
    ratio_term: Fraction
    min_is_first: bool

    @property
    def abs_bound(self) -> Fraction:
        """Bound on ``|a|``: ``(m-q+1)/(m+1)`` when the first term wins."""
        from .numerics import rational_sqrt

        r = rational_sqrt(self.value)
        if r is None:
            raise ValueError("bound on |a| is irrational")
        return r


def kl_ratio_bound(m: int, q: int) -> KLBound:
    """``min{((m-q+1)/(m+1))^2, lambda_1(m,m-1)/lambda_1(m-q,m-q-1)}``."""
    if m - q - 1 < 0 or q < 0:
        raise ValueError("need m >= q + 1")
    first = Fraction(m - q + 1, m + 1) ** 2
    num = Fraction(3, (m + 2) ** 2) - Fraction(1, (m + 1) ** 2)
    den = Fraction(3, (m - q + 2) ** 2) - Fraction(1, (m - q + 1) ** 2)
    ratio = num / den
    value = min(first, ratio)
    return KLBound(value, first, ratio, first <= ratio)


# -- sweeps over |a| and over t ---------------------------------------------


@dataclass
class SweepResult:
    a_lo: Fraction
    a_hi: Fraction
    status: str  # "bracketed" | "inconclusive" | "unverified"
    lo_verdict: Optional[HypoVerdict]
    hi_verdict: Optional[HypoVerdict]
    evaluations: list = field(default_factory=list)

    @property
    def width(self) -> Fraction:
        return self.a_hi - self.a_lo


def boundary_sweep(
    n: int,
    m: int,
    s,
    t,
    tol,
    a_hi=None,
    K: int = DEFAULT_K,
    K_max: int = MAX_K,
    max_iter: int = 200,
) -> SweepResult:
    """Bisect ``|a|`` between a certified value and a refuted value.

    On return ``certify(a_lo)`` and ``refute(a_hi)`` both hold (status
    ``bracketed``) unless a midpoint and both of its nudged neighbours are
    inconclusive (status ``inconclusive``, bracket as reached).
    """
    s, t, tol = to_rational(s), to_rational(t), to_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    base = SymbolParams(n, m, s, t, 0)
    evals: list = []

    def run(a: Fraction) -> HypoVerdict:
        v = decide(base.with_a(a), K, K_max)
        evals.append((a, v.status.value))
        return v

    lo = Fraction(0)
    lo_v = certify_hyponormal(base, K, K_max)
    evals.append((lo, lo_v.status.value))
    if a_hi is None:
        hi = Fraction(1)
        hi_v = run(hi)
        steps = 0
        while not hi_v.refuted:
            if hi_v.certified:
                lo, lo_v = hi, hi_v
            hi *= 2
            steps += 1
            if steps > 64:
                raise BudgetExhausted("no refutable |a| found while doubling")
            hi_v = run(hi)
    else:
        hi = to_rational(a_hi)
        if hi - lo <= tol:
            # already within tolerance; the upper end is not checked
            return SweepResult(lo, hi, "unverified", lo_v, None, evals)
        hi_v = run(hi)
        if not hi_v.refuted:
            return SweepResult(lo, hi, "inconclusive", lo_v, hi_v, evals)
    it = 0
    while hi - lo > tol:
        it += 1
        if it > max_iter:
            raise BudgetExhausted("iteration cap reached")
        mid = (lo + hi) / 2
        v = run(mid)
        if v.status is Status.INCONCLUSIVE:
            nudge = (hi - lo) / 8
            progressed = False
            for cand in (mid - nudge, mid + nudge):
                cv = run(cand)
                if cv.certified and cand > lo:
                    lo, lo_v, progressed = cand, cv, True
                elif cv.refuted and cand < hi:
                    hi, hi_v, progressed = cand, cv, True
            if not progressed:
                return SweepResult(lo, hi, "inconclusive", lo_v, hi_v, evals)
            continue
        if v.certified:
            lo, lo_v = mid, v
        else:
            hi, hi_v = mid, v
    return SweepResult(lo, hi, "bracketed", lo_v, hi_v, evals)


@dataclass
class Onset:
    t: Optional[Fraction]
    verdict: Optional[HypoVerdict]
    scanned: list


def certify_onset(n: int, m: int, s, c, t_values: Iterable, K: int = DEFAULT_K, K_max: int = MAX_K) -> Onset:
    """First ``t`` (in the given order) at which ``a = c/t`` is certified hyponormal."""
    c, s = to_rational(c), to_rational(s)
    scanned = []
    for t in t_values:
        t = to_rational(t)
        v = certify_hyponormal(SymbolParams(n, m, s, t, c / t), K, K_max)
        scanned.append((t, v.status.value))
        if v.certified:
            return Onset(t, v, scanned)
    return Onset(None, None, scanned)


def refute_onset(n: int, m: int, s, c, t_values: Iterable, K: int = DEFAULT_K, K_max: int = MAX_K) -> Onset:
    """First ``t`` at which ``a = c/t`` is refuted by the truncated eigen search."""
    c, s = to_rational(c), to_rational(s)
    scanned = []
    for t in t_values:
        t = to_rational(t)
        v = refute(SymbolParams(n, m, s, t, c / t), K, K_max)
        scanned.append((t, v.status.value))
        if v.refuted:
            return Onset(t, v, scanned)
    return Onset(None, None, scanned)
