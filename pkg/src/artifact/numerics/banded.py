"""Symmetric matrices with a main diagonal and one off-diagonal band.

A K x K matrix whose only off-diagonal entries couple ``k`` and
``k + offset`` splits into ``offset`` independent tridiagonal chains
(indices congruent mod ``offset``).  Each chain is handled by LAPACK's
bisection-on-inertia routine through :func:`scipy.linalg.eigh_tridiagonal`;
the exact-arithmetic inertia count below works on the same chains.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal


class DimensionMismatch(ValueError):
    pass


def _check(diag: Sequence, offdiag: Sequence, offset: int) -> int:
    if offset < 1:
        raise DimensionMismatch("offset must be a positive integer")
    K = len(diag)
    if K == 0:
        raise DimensionMismatch("empty matrix")
    if len(offdiag) != max(0, K - offset):
        raise DimensionMismatch(
            f"band of length {len(offdiag)} does not fit a {K}x{K} matrix at offset {offset}"
        )
    return K


def chains(K: int, offset: int) -> list[np.ndarray]:
    """Index sets of the decoupled tridiagonal chains."""
    return [np.arange(r, K, offset) for r in range(min(offset, K))]


def to_dense(diag: Sequence, offdiag: Sequence, offset: int) -> np.ndarray:
    K = _check(diag, offdiag, offset)
    A = np.diag(np.asarray(diag, dtype=float))
    if len(offdiag):
        e = np.asarray(offdiag, dtype=float)
        idx = np.arange(len(e))
        A[idx, idx + offset] = e
        A[idx + offset, idx] = e
    return A


def banded_min_eigenvalue(
    diag: Sequence, offdiag: Sequence, offset: int
) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and a unit eigenvector of the banded matrix.

    Parameters
    ----------
    diag : sequence of float, length K
    offdiag : sequence of float, length ``max(0, K - offset)``
        ``offdiag[k]`` is the entry at ``(k, k + offset)`` and its mirror.
    offset : int

    Returns
    -------
    (lam, vec) with ``vec`` of length K and unit 2-norm.
    """
    K = _check(diag, offdiag, offset)
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    best = (np.inf, None, None)
    for idx in chains(K, offset):
        dc = d[idx]
        if len(idx) == 1:
            lam, v = dc[0], np.ones(1)
        else:
            ec = e[idx[:-1]]
            w, V = eigh_tridiagonal(dc, ec, select="i", select_range=(0, 0))
            lam, v = w[0], V[:, 0]
        if lam < best[0]:
            best = (lam, idx, v)
    lam, idx, v = best
    vec = np.zeros(K)
    vec[idx] = v
    return float(lam), vec


def negative_inertia(diag: Sequence, offdiag: Sequence, offset: int, shift=0) -> int:
    """Number of eigenvalues strictly below ``shift``.

    LDL^T pivot signs along each chain (Sylvester's law of inertia).  Works
    in whatever arithmetic the inputs carry, so Fraction inputs give an
    exact count.  A zero pivot is treated as ``+0``; the next pivot then
    becomes ``-inf`` when the coupling is nonzero.
    """
    K = _check(diag, offdiag, offset)
    count = 0
    for idx in chains(K, offset):
        prev = None  # previous pivot; None at chain start
        for j, k in enumerate(idx):
            a = diag[k] - shift
            if j == 0:
                piv = a
            else:
                e = offdiag[idx[j - 1]]
                if prev == 0:
                    piv = -np.inf if e != 0 else a
                elif prev == -np.inf:
                    piv = a
                else:
                    piv = a - e * e / prev
            if piv < 0:
                count += 1
            prev = piv
    return count


def quadratic_form(diag: Sequence, offdiag: Sequence, offset: int, u: Sequence):
    """``u^T A u`` evaluated in the arithmetic of the inputs.

    Exact when ``diag``, ``offdiag`` and ``u`` hold Fractions.
    """
    K = _check(diag, offdiag, offset)
    if len(u) != K:
        raise DimensionMismatch("vector length does not match matrix")
    total = Fraction(0) if isinstance(u[0], Fraction) else 0.0
    for k in range(K):
        if u[k]:
            total += diag[k] * u[k] * u[k]
    for k in range(len(offdiag)):
        if u[k] and u[k + offset]:
            total += 2 * offdiag[k] * u[k] * u[k + offset]
    return total
