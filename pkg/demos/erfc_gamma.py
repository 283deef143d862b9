"""erfc and the upper incomplete gamma function from the ramified dyadic identity."""

from dyadik import oracle, special

for x in (0.5, 2.0, 1 + 0.5j):
    res = special.erfc_dyadic(x, 40)
    print(f"erfc({x}) ~ {res.value:.15f}  |err|={abs(res.value - oracle.erfc_oracle(x)):.1e}")
res = special.incomplete_gamma_dyadic(0.5, 2.0, 40)
print("scaled Gamma(1/2, 2) form:", res.value, "bound", res.certified_bound)
