"""Airy through a [12/12] Pade approximant of its Borel transform."""

import numpy as np

from dyadik import oracle, special
from dyadik.pade import airy_h_pade, airy_taylor_flipped, pade_from_taylor

approx = pade_from_taylor(airy_taylor_flipped(25), 12, 12)
print("Borel-plane poles:", np.sort_complex(-approx.poles).round(4))
for X in (8.0, 14.0, 20.0):
    u = special.airy_u(X)
    res = airy_h_pade(u)
    print(f"x={X:4.1f}  h={res.value.real:.15f}  |err|={abs(res.value - oracle.airy_h_oracle(u)):.1e}")
