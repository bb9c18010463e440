"""Univariate polynomials over Q with exact real-root isolation.

Positive roots are isolated with the Descartes rule of signs applied to
Moebius-transformed polynomials (Vincent-Collins-Akritas bisection), and
refined by exact bisection.  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import to_rational


class BracketError(ValueError):
    """Raised when an interval does not bracket a sign change."""


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with Fraction coefficients in ascending degree order."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def linear(cls, c0, c1) -> "Polynomial":
        """``c0 + c1*x``."""
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        if isinstance(x, float):
            facc = 0.0
            for c in reversed(self.coeffs):
                facc = facc * x + float(c)
            return facc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def monic(self) -> "Polynomial":
        lc = self.leading
        return Polynomial(c / lc for c in self.coeffs)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def squarefree(self) -> "Polynomial":
        """Product of the distinct irreducible factors (up to a constant)."""
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def shift(self, c) -> "Polynomial":
        """Return ``p(x + c)`` (Taylor shift, Horner scheme)."""
        c = to_rational(c)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += c * cs[j + 1]
        return Polynomial(cs)

    def scale(self, c) -> "Polynomial":
        """Return ``p(c * x)``."""
        c = to_rational(c)
        out, pw = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * pw)
            pw *= c
        return Polynomial(out)

    def reverse(self) -> "Polynomial":
        """Return ``x**deg * p(1/x)``."""
        return Polynomial(reversed(self.coeffs))

    def mirror(self) -> "Polynomial":
        """Return ``p(-x)``."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def sign_variations(self) -> int:
        signs = [c > 0 for c in self.coeffs if c != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


X = Polynomial([0, 1])


@dataclass(frozen=True)
class RootInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", to_rational(self.lo))
        object.__setattr__(self, "hi", to_rational(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty root interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.mid)


def descartes_bound(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Descartes upper bound on the number of roots of ``p`` in ``(lo, hi)``.

    Exact (not just an upper bound) whenever the result is 0 or 1.
    """
    q = p.shift(lo).scale(hi - lo)
    return q.reverse().shift(1).sign_variations()


def positive_root_bound(p: Polynomial) -> Fraction:
    """A power of two strictly above every positive root (Cauchy bound)."""
    lc = abs(p.leading)
    b = 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    bound = Fraction(1)
    while bound <= b:
        bound *= 2
    return bound


def isolate_positive_roots(p: Polynomial) -> list[RootInterval]:
    """Disjoint isolating intervals, one per distinct positive real root.

    Every returned interval has ``lo >= 0`` and contains exactly one root of
    ``p``; the intervals are sorted increasingly.
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    cs = list(p.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    q = Polynomial(cs).squarefree()
    if q.degree <= 0:
        return []
    out: list[RootInterval] = []
    stack = [(Fraction(0), positive_root_bound(q))]
    while stack:
        lo, hi = stack.pop()
        v = descartes_bound(q, lo, hi)
        if v == 0:
            continue
        if v == 1:
            out.append(RootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(mid) != 0:
            stack.append((mid, hi))
            stack.append((lo, mid))
            continue
        # exact root at the midpoint: carve out a small isolating gap
        h = (hi - lo) / 4
        while (
            q(mid - h) == 0
            or q(mid + h) == 0
            or descartes_bound(q, mid - h, mid) != 0
            or descartes_bound(q, mid, mid + h) != 0
        ):
            h /= 2
        out.append(RootInterval(mid - h, mid + h))
        stack.append((mid + h, hi))
        stack.append((lo, mid - h))
    out.sort(key=lambda iv: iv.lo)
    # neighbours may share an endpoint; bisect them apart
    while any(a.hi >= b.lo for a, b in zip(out, out[1:])):
        out = [_halve(q, iv) for iv in out]
    return out


def _halve(q: Polynomial, iv: RootInterval) -> RootInterval:
    """One sign-based bisection step for a simple root of ``q`` in ``iv``."""
    flo, fhi, mid = q(iv.lo), q(iv.hi), iv.mid
    fm = q(mid)
    if fm == 0:
        return RootInterval(mid - iv.width / 4, mid + iv.width / 4)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        return iv
    return RootInterval(iv.lo, mid) if (fm > 0) != (flo > 0) else RootInterval(mid, iv.hi)


def isolate_real_roots(p: Polynomial) -> list[RootInterval]:
    """Isolating intervals for all distinct real roots, sorted."""
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    neg = [RootInterval(-iv.hi, -iv.lo) for iv in isolate_positive_roots(p.mirror())]
    pos = isolate_positive_roots(p)
    zero = []
    if p.coeffs[0] == 0:
        cs = list(p.coeffs)
        while cs[0] == 0:
            cs.pop(0)
        q = Polynomial(cs)
        qm = q.mirror()
        # root-free gap (0, h] on both sides of the origin
        h = Fraction(1)
        while (
            q(h) == 0
            or q(-h) == 0
            or descartes_bound(q, Fraction(0), h) != 0
            or descartes_bound(qm, Fraction(0), h) != 0
        ):
            h /= 2
        pos = [RootInterval(max(iv.lo, h), iv.hi) for iv in pos]
        neg = [RootInterval(iv.lo, min(iv.hi, -h)) for iv in neg]
        zero = [RootInterval(-h / 2, h / 2)]
    return sorted(neg, key=lambda iv: iv.lo) + zero + pos


def refine_root(p: Polynomial, iv: RootInterval, tol) -> RootInterval:
    """Shrink ``iv`` by exact bisection until its width is at most ``tol``.

    ``p`` must change sign across ``iv`` (or vanish at an endpoint).
    """
    tol = to_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = iv.lo, iv.hi
    flo, fhi = p(lo), p(hi)
    if flo == 0:
        return RootInterval(lo - tol / 2, lo + tol / 2)
    if fhi == 0:
        return RootInterval(hi - tol / 2, hi + tol / 2)
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"p has the same sign at {lo} and {hi}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = p(mid)
        if fm == 0:
            return RootInterval(mid - tol / 2, mid + tol / 2)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootInterval(lo, hi)


def count_sign_changes_on_grid(p: Polynomial, grid: Iterable) -> int:
    """Number of strict sign changes of ``p`` along an increasing grid."""
    prev = 0
    count = 0
    for x in grid:
        v = p(x)
        s = (v > 0) - (v < 0)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count
