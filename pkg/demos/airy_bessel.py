"""Airy and modified Bessel functions from the element with a branch cut."""

import math

import scipy.special as sc

from dyadik import special
from dyadik.engine import plan_truncation

for X in (4.0, 8.0, 14.0, 20.0):
    u = special.airy_u(X)
    K = special.BesselNormalization.for_order(1 / 3).integration_by_parts_count
    plan = plan_truncation((special.bessel_k_element(1 / 3), -1.0), (u, (math.pi, math.pi)), 1e-13 * u**K)
    h = special.airy_h(u, plan)
    ai = special.airy_from_h(X, h.value) * 2 / (3 * math.sqrt(math.pi))
    print(f"Ai({X:4.1f}) = {ai.real:.16e}  scipy {sc.airy(X)[0]:.16e}  terms={h.terms_used}")

nu, u = 0.25, 6.0
K = special.BesselNormalization.for_order(nu).integration_by_parts_count
plan = plan_truncation((special.bessel_k_element(nu), -1.0), (u, (math.pi, math.pi)), 1e-13 * u**K)
h = special.bessel_h(nu, u, plan)
ref = sc.kv(nu, u / 2) * math.exp(u / 2) / math.sqrt(math.pi * u)
print(f"h_{nu}({u}) = {h.value.real:.16f}  scipy {ref:.16f}")
