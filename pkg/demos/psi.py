"""Digamma from the dyadic ladder of half-step differences."""

from dyadik import oracle, special

for x in (1.0, 2.5, 10.0, 0.3 + 2j):
    res = special.psi_dyadic(x, 40, 60)
    ref = oracle.digamma(x + 1.0)
    print(f"x={x}: Psi(x + 1) = {res.value:.15f}  bound={res.certified_bound:.1e}  |err|={abs(res.value - ref):.1e}")
print("identity residual at x=1, k_max=40:", special.psi_identity_check(1.0, 40))
