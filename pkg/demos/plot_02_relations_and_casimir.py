"""
Checking the algebra on a truncated representation
==================================================

Build H, E+ and E- for a complex spin, check the commutation relations
and the Casimir element.  Truncation breaks [E+, E-] on the last state only,
by exactly -c_{N-1}^2.
"""

from upqsl2 import build_rep, casimir_matrix, check_casimir, check_relations, deformed_ladder, validate_params

params = validate_params(0.8 + 0.6j, 1.4 - 0.3j)
rep = build_rep(deformed_ladder(2.5 + 1.0j, params, 12))

rel = check_relations(rep, params)
print("[H, E+] residual        ", f"{rel.max_residual_HEplus:.1e}")
print("[E+, E-] interior       ", f"{rel.max_residual_EpEm_interior:.1e}")
print("boundary defect         ", rel.boundary_defect)
print("predicted -c_{N-1}^2    ", -rep.spectrum.coeffs[-1] ** 2)

C = casimir_matrix(rep, params)
cas = check_casimir(rep, params)
print("Casimir eigenvalue      ", cas.eigenvalue)
print("diagonal spread (scaled)", f"{cas.max_diag_deviation:.1e}")
print("all checks pass         ", rel.passed and cas.passed)
