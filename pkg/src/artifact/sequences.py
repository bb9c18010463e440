"""Closed forms for the coefficient sequences of the two-term symbol.

For ``phi(z) = z**n |z|**(2s) + a zbar**m |z|**(2t)`` the hyponormality
quadratic form is built from three sequences indexed by ``k >= 0``:

* ``sigma_k`` (analytic part, always positive),
* ``omega_k`` (co-analytic part, always negative),
* ``delta_k`` (cross term coupling ``u_k`` and ``u_{k+n+m}``).

``lambda_eig`` gives the eigenvalues of the self-commutator of
``T_{z^m zbar^n}``.

Every function evaluates in the arithmetic of its arguments: pass ints or
Fractions for exact results, floats for binary64.  Use
:meth:`SymbolParams.exact` / :meth:`SymbolParams.floating` to switch a
whole parameter set explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Union

from .numerics.rational import rational_sqrt, to_rational

Number = Union[int, float, Fraction]


class ModeError(ValueError):
    """Exact evaluation requested for a parameter with no exact value."""


@dataclass(frozen=True)
class SymbolParams:
    """Parameters ``(n, m, s, t, a)`` of the symbol.

    ``s`` and ``t`` are the halves of the radial exponents; ``a`` may be
    complex, only ``|a|`` matters.
    """

    n: int
    m: int
    s: Number = 0
    t: Number = 0
    a: Union[Number, complex] = 0

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("n and m must be integers")
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")
        if self.s < 0 or self.t < 0:
            raise ValueError("s and t must be nonnegative")

    @property
    def offset(self) -> int:
        return self.n + self.m

    def exact(self) -> "SymbolParams":
        """Copy with ``s``, ``t`` (and a real ``a``) as Fractions."""
        return replace(
            self, s=to_rational(self.s), t=to_rational(self.t), a=_exact_a(self.a)
        )

    def floating(self) -> "SymbolParams":
        a = complex(self.a) if isinstance(self.a, complex) else float(self.a)
        return replace(self, s=float(self.s), t=float(self.t), a=a)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in (self.s, self.t, self.a))

    def abs_a(self) -> Number:
        """``|a|`` in the arithmetic of the parameters."""
        return abs(self.a)

    def with_a(self, a) -> "SymbolParams":
        return replace(self, a=a)


def _exact_a(a) -> Fraction:
    """Exact ``|a|``; complex ``a`` must have a rational modulus."""
    if isinstance(a, complex):
        if a.imag == 0:
            return abs(to_rational(a.real))
        r = rational_sqrt(to_rational(a.real) ** 2 + to_rational(a.imag) ** 2)
        if r is None:
            raise ModeError(f"|a| is irrational for a = {a}; exact mode unavailable")
        return r
    return abs(to_rational(a))


# -- sigma, omega, delta ----------------------------------------------------


def sigma_value(n: int, s: Number, k: int) -> Number:
    if k < n:
        return _div(k + n + 1, _sq(n + k + s + 1))
    # combined numerator avoids cancellation between the two branch terms
    num = n * (n * n + n * (2 * s + k + 1) + 2 * s * (k + s + 1))
    return _div(num, _sq(k + s + 1) * _sq(k + n + s + 1))


def omega_value(m: int, t: Number, k: int) -> Number:
    if k < m:
        num = -(k + m + 1)
        den = _sq(m + k + t + 1)
    else:
        num = -m * (m * m + m * (2 * t + k + 1) + 2 * t * (k + t + 1))
        den = _sq(k + t + 1) * _sq(k + m + t + 1)
    return _div(num, den)


def delta_numerator(n: int, m: int, s: Number, t: Number, k: int) -> Number:
    """Numerator of ``delta_k`` over a positive denominator (fixes its sign)."""
    return t * (n * n - m * s + n * (s + k + 1)) - m * s * (m + k + 1)


def delta_denominator(n: int, m: int, s: Number, t: Number, k: int) -> Number:
    return (k + n + s + 1) * (k + n + m + t + 1) * (k + n + m + s + 1) * (k + m + t + 1)


def delta_value(n: int, m: int, s: Number, t: Number, k: int) -> Number:
    return _div(delta_numerator(n, m, s, t, k), delta_denominator(n, m, s, t, k))


def sigma(params: SymbolParams, k: int) -> Number:
    """``sigma_k`` for the analytic term ``z**n |z|**(2s)``."""
    _check_k(k)
    return sigma_value(params.n, params.s, k)


def omega(params: SymbolParams, k: int) -> Number:
    """``omega_k`` for the co-analytic term; strictly negative."""
    _check_k(k)
    return omega_value(params.m, params.t, k)


def delta(params: SymbolParams, k: int) -> Number:
    _check_k(k)
    return delta_value(params.n, params.m, params.s, params.t, k)


def delta_sign(params: SymbolParams, k: int) -> int:
    """Sign of ``delta_k`` from its numerator alone."""
    v = delta_numerator(params.n, params.m, params.s, params.t, k)
    return (v > 0) - (v < 0)


def sigma_branches(n: int, s: Number, k: int) -> Number:
    """``sigma_k`` straight from the two-branch definition (no regrouping)."""
    head = _div(k + n + 1, _sq(n + k + s + 1))
    if k < n:
        return head
    return head - _div(k - n + 1, _sq(k + s + 1))


def omega_branches(m: int, t: Number, k: int) -> Number:
    tail = _div(k + m + 1, _sq(m + k + t + 1))
    if k < m:
        return -tail
    return _div(k - m + 1, _sq(k + t + 1)) - tail


def delta_branches(n: int, m: int, s: Number, t: Number, k: int) -> Number:
    return _div(k + n + 1, (k + n + s + 1) * (k + n + m + t + 1)) - _div(
        k + m + 1, (k + n + m + s + 1) * (k + m + t + 1)
    )


@dataclass(frozen=True)
class SequencePoint:
    k: int
    sigma: Number
    omega: Number
    delta: Number


def sequence_point(params: SymbolParams, k: int) -> SequencePoint:
    return SequencePoint(k, sigma(params, k), omega(params, k), delta(params, k))


def sequence_table(params: SymbolParams, k_max: int) -> list[SequencePoint]:
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    return [sequence_point(params, k) for k in range(k_max + 1)]


# -- asymptotics ------------------------------------------------------------

Kind = Literal["sigma", "omega", "delta"]


def asymptotic_leading(kind: Kind, params: SymbolParams, k: int) -> float:
    """Leading large-``k`` (and large-``t``) term of a sequence.

    sigma: ``n(n+2s)/k^3``; omega: ``-2mt/(k+t)^3``; delta:
    ``nt / (k (k+t)^2)``.
    """
    if k < 1:
        raise ValueError("asymptotic terms need k >= 1")
    n, m, s, t = params.n, params.m, float(params.s), float(params.t)
    if kind == "sigma":
        return n * (n + 2 * s) / k**3
    if kind == "omega":
        return -2 * m * t / (k + t) ** 3
    if kind == "delta":
        if t <= 0:
            raise ValueError("delta asymptotics need t > 0")
        return n * t / (k * (k + t) ** 2)
    raise ValueError(f"unknown sequence kind {kind!r}")


def sigma_first_correction(params: SymbolParams) -> float:
    """Coefficient ``C`` in ``sigma_k ~ n(n+2s)/k^3 * (1 + C/k)``."""
    n, s = params.n, float(params.s)
    return (n * n - 2 * s * s) / (n + 2 * s) - 2 * n - 2 * s - 3


def omega_first_correction(params: SymbolParams, k: int) -> float:
    """First relative correction to the omega leading term at index ``k``."""
    m, t = params.m, float(params.t)
    return (m * (k + m + 1) / (2 * t) - m - 3) / (k + t)


def delta_first_correction(params: SymbolParams, k: int) -> float:
    n, m, s, t = params.n, params.m, float(params.s), float(params.t)
    return -(1 + n + m + s + m * s / n) / k - (2 * m + n + 2) / (k + t) - (m * s / n) / t


# -- commutator eigenvalues -------------------------------------------------


def lambda_eig(m: int, n: int, k: int) -> Fraction:
    """Eigenvalue ``lambda_k`` of ``[T*_{z^m zbar^n}, T_{z^m zbar^n}]``, ``m >= n``.

    ``n = 0`` is accepted.
    """
    if m < n:
        raise ValueError(f"need m >= n, got m={m}, n={n}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_k(k)
    q = m - n
    if k < q:
        return Fraction((k + 1) * (k + q + 1), (k + m + 1) ** 2)
    num = (k + q + 1) * (k + n + 1) ** 2 - (k - q + 1) * (k + m + 1) ** 2
    return Fraction((k + 1) * num, (k + m + 1) ** 2 * (k + n + 1) ** 2)


def tail_function(m: int, n: int, x):
    """``F(x) = (x+1) ((x+m-n+1)/(x+m+1)^2 - (x+n-m+1)/(x+n+1)^2)``."""
    x = to_rational(x) if not isinstance(x, float) else x
    return (x + 1) * ((x + m - n + 1) / (x + m + 1) ** 2 - (x + n - m + 1) / (x + n + 1) ** 2)


# -- helpers ----------------------------------------------------------------


def _sq(x):
    return x * x


def _div(num, den):
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return Fraction(num) / den


def _check_k(k: int) -> None:
    if k < 0:
        raise ValueError("index k must be nonnegative")
