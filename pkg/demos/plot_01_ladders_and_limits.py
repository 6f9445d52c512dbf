"""
Weight ladders, classical and deformed
======================================

A highest-weight representation is fixed by its ladder coefficients c_n,
the matrix elements of E- (and E+) between neighbouring weights.
"""

import numpy as np

from upqsl2 import classical_ladder, deformed_ladder, limit_compare, validate_params

# Spin 3/2 in the undeformed algebra: the ladder stops after four states.
print("classical, 2j=3:", np.round(classical_ladder(3, 5).coeffs.real, 6))

# The same spin with p = 2, q = 3.  No coefficient vanishes, so the ladder
# never terminates and only a truncation can be stored.
params = validate_params(2, 3)
print("deformed,  2j=3:", np.round(deformed_ladder(3, params, 5).coeffs, 4))

# With p = q the one-parameter algebra is recovered, and close to p = q = 1
# the classical numbers come back.
for eps in (1e-1, 1e-3, 1e-6):
    r = limit_compare(3, 1.7, 6, eps)
    print(f"eps={eps:g}: one-parameter dev {r.one_parameter_deviation:.1e}, "
          f"classical dev {r.classical_deviation:.1e}")
