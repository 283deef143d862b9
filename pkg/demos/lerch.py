"""Lerch transcendent by its factorial series, against direct summation."""

from dyadik.lerch import lerch_phi_direct, lerch_phi_factorial, polylog

for z, x in ((0.5, 2.0), (-0.7, 1 + 3j), (0.6j, 0.5)):
    v, tail = lerch_phi_factorial(z, x, 80)
    print(f"z={z}, x={x}: factorial {v:.15f}  direct {lerch_phi_direct(z / (z - 1), x):.15f}")
s, z = 0.5, 0.4 + 0.1j
print("duplication residual:", abs(polylog(s, z) + polylog(s, -z) - 2 ** (1 - s) * polylog(s, z * z)))
