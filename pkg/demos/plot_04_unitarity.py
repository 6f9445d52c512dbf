"""
Unitarizability
===============

Imposing E+^dagger = E- fixes |A_{n-1}/A_n|^2 = r_n.  This needs every r_n to
be real and positive.
"""

from upqsl2 import unitarizability_ratios, unitarizability_verdict, validate_params

for label, params in [("p=q=1.5", validate_params(1.5, 1.5)),
                      ("p=1.2+0.5i, q=0.8-0.3i", validate_params(1.2 + 0.5j, 0.8 - 0.3j))]:
    r = unitarizability_ratios(4, params, 6)
    print(label, unitarizability_verdict(r).verdict)
    for n, x in enumerate(r, start=1):
        print(f"   r_{n} = {x:.5g}")
