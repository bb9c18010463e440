"""Where is the largest eigenvalue of [T*, T] for T = T_{z^m zbar^n}?"""
from fractions import Fraction

from artifact.commutator import (
    classify_monotonicity,
    commutator_norm,
    cubic_P,
    verify_half_bound,
)
from artifact.sequences import lambda_eig

# The first few eigenvalues for (m, n) = (8, 7).  The tail starts at k = 1.
for k in range(8):
    print(k, lambda_eig(8, 7, k), float(lambda_eig(8, 7, k)))

# They rise before they fall, so lambda_{m-n} is not the norm.
r = commutator_norm(8, 7)
print("argmax", r.argmax_k, "norm", r.norm, "=", float(r.norm))

# The cubic P decides the shape: d < 0 means decreasing from k = m - n.
for m, n in [(2, 1), (5, 4), (8, 7), (20, 3)]:
    rep = classify_monotonicity(m, n)
    cp = rep.critical_point
    where = "" if cp is None else f" x* in [{float(cp.lo):.4f}, {float(cp.hi):.4f}]"
    print((m, n), [int(c) for c in cubic_P(m, n).coeffs], rep.classification.value + where)

# (5, 4) has an interior critical point inside (1, 2), but the integer
# maximum still sits at k = 1.
print(commutator_norm(5, 4).argmax_k)

# Every eigenvalue stays strictly below 1/2.
worst = max(commutator_norm(m, n).norm for m in range(2, 60) for n in range(1, m))
print("largest norm for m < 60:", worst, float(worst), worst < Fraction(1, 2))
print(verify_half_bound(100, 99).quartic)
