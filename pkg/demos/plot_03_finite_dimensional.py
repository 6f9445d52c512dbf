"""
When does the ladder stop?
==========================

An invariant subspace of dimension D appears when the E- element at index
D-1 vanishes.  Scan for that, then go the other way: pick D and solve for
the (complex) spin.
"""

from upqsl2 import roundtrip_check, scan_integer_roots, spin_for_dimension, validate_params

# p = q: integral 2j terminates at the classical dimension 2j+1.
print(scan_integer_roots(3, validate_params(2, 2), 50).verdict)

# p != q: the same spin gives no root at all within the scan range.
print(scan_integer_roots(3, validate_params(2, 3), 1000).verdict)

# Prescribe D = 2 for p = 2, q = 3.  The principal branch gives a real but
# non-half-integral spin, the others are complex.
sols = spin_for_dimension(2, validate_params(2, 3), branch_range=2)
for s in sols.branch_solutions:
    print(f"k={s.k:+d}  2j = {s.two_j:.6f}  residual {s.residual:.1e}")

for e in roundtrip_check(2, validate_params(2, 3), 2, 100).entries:
    print(f"k={e.k:+d}  root at D-1: {e.is_root}, smallest: {e.is_smallest}")
