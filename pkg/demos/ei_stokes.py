"""Ei on and around the Stokes ray, with certified bounds and the half residue."""

import math

from dyadik import oracle, special
from dyadik.engine import plan_truncation

plan = plan_truncation((special.ei_element(), special.EI_BETA), (2.0, (-0.5, 0.5)), 1e-10)
print("plan:", plan)
print(f"{'x':>6} {'Re f':>22} {'e^x Im f':>12} {'bound':>10} {'|err|':>10}")
for x in (2.0, 4.0, 6.0, 8.0, 10.0):
    res = special.ei_plus(complex(x), plan)
    ref = oracle.ei_plus_oracle(complex(x), 0.0)
    print(f"{x:6.1f} {res.value.real:22.16f} {math.exp(x) * res.value.imag:12.8f} "
          f"{res.certified_bound:10.2e} {abs(res.value - ref):10.2e}")
print("half residue of e^{-xp}/(1-p) at p = 1: -pi =", -math.pi)
