"""Certify or refute hyponormality of T_phi, phi = z^n |z|^{2s} + a zbar^m |z|^{2t}."""
from fractions import Fraction

from artifact.hypotest import (
    basis_vector_bound,
    boundary_sweep,
    decide,
    refute_window,
)
from artifact.sequences import SymbolParams

# Symmetric case n = m, s = t: the answer is |a| <= 1.
base = SymbolParams(1, 1, 1, 1)
for a in [Fraction(1, 2), Fraction(99, 100), Fraction(1), Fraction(101, 100), Fraction(2)]:
    v = decide(base.with_a(a), K=64, K_max=1024)
    print(a, v.status.value, v.witness_value)

# Bisection between a certificate and an exact witness.
r = boundary_sweep(1, 1, 1, 1, Fraction(1, 1000))
print("bracket", float(r.a_lo), float(r.a_hi), r.status)

# Large t with a = c / t: the threshold is |c| = (n + 2s) / 2 = 1.5.
print(decide(SymbolParams(1, 1, 1, 100, Fraction(1, 100))).status.value)
w = refute_window(1, 1, 1, 2)
d = w.diagnostics
print("window witness: t =", d["t"], "k1 =", d["k1"], "k2 =", d["k2"], "value", float(w.witness_value))

# A cheap necessary condition from basis vectors.
b = basis_vector_bound(SymbolParams(2, 3, Fraction(1, 2), 0))
print("|a|^2 <=", b.value, "attained at k =", b.argmin_k, "(k=0 term", b.first, ", limit", b.limit, ")")
