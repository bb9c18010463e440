"""The set of (m, n) where the tail eigenvalues are not monotone."""
import sys

from artifact.commutator import boundary_slope, scan_region

m_max = int(sys.argv[1]) if len(sys.argv) > 1 else 4000
scan = scan_region(m_max)

# Coarse text rendering: '#' marks d(m, n) > 0.
step = max(1, m_max // 60)
B = scan.bitmap()
for n in range(m_max - 1, 0, -step * 2):
    print("".join("#" if B[n - 1, m - 1] else "." for m in range(1, m_max + 1, step)))

alpha = boundary_slope()
print("slope root", float(alpha.mid))
for m in (m_max // 4, m_max // 2, m_max):
    print(m, scan.slope_at(m))
print("fitted", scan.fitted_slope(), "zero cells", scan.zero_cells)
print("non-contiguous rows", scan.contiguity_violations())
