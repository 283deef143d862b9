"""Dyadic resolvent, inverse and inverse square root of Hermitian matrices."""

import numpy as np

from dyadik.resolvent import (
    HermitianMatrix,
    dyadic_fractional_power,
    dyadic_inverse_positive,
    dyadic_resolvent,
    resolvent_remainder,
)

rng = np.random.default_rng(0)
b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
A = HermitianMatrix(0.5 * (b + b.conj().T))
exact = np.linalg.inv(A.entries - 1j * np.eye(6))
for N in (10, 20, 30):
    err = np.linalg.norm(dyadic_resolvent(A, 1.0, N) - exact, 2)
    print(f"N={N:2d}  resolvent error {err:.2e}  predicted {np.linalg.norm(resolvent_remainder(A, 1.0, N), 2):.2e}")
P = HermitianMatrix(b @ b.conj().T / 6 + 0.5 * np.eye(6))
r = dyadic_inverse_positive(P, 35)
print("inverse error", np.linalg.norm(r.resolvent_form - np.linalg.inv(P.entries), 2))
root = P.apply(lambda mu: mu**-0.5)
print("A^{-1/2} error at N=40", np.linalg.norm(dyadic_fractional_power(P, 0.5, 40) - root, 2))
