import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadik.kernels import dyadic_reciprocal
from dyadik.numerics import DomainError
from dyadik.resolvent import (
    HermitianMatrix,
    NotHermitianError,
    NotPositiveDefiniteError,
    contraction_semigroup,
    dyadic_fractional_power,
    dyadic_inverse_positive,
    dyadic_resolvent,
    dyadic_resolvent_spectral,
    fractional_power_remainder,
    resolvent_remainder,
    resolvent_series_form,
    unitary_evolution,
)


def random_hermitian(d, seed, positive=False):
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    if positive:
        return HermitianMatrix(b @ b.conj().T / d + 0.5 * np.eye(d))
    return HermitianMatrix(0.5 * (b + b.conj().T))


def norm(a):
    return float(np.linalg.norm(a, 2))


def test_validation():
    with pytest.raises(NotHermitianError):
        HermitianMatrix([[1, 2], [0, 1]])
    with pytest.raises(DomainError):
        HermitianMatrix(np.eye(65))
    with pytest.raises(DomainError):
        HermitianMatrix(np.ones(3))
    with pytest.raises(NotPositiveDefiniteError):
        dyadic_inverse_positive(np.diag([1.0, -1.0]), 5)
    with pytest.raises(DomainError):
        dyadic_resolvent(np.eye(2), -1.0, 5)
    with pytest.raises(DomainError):
        dyadic_fractional_power(np.eye(2), 1.0, 5)
    with pytest.raises(DomainError):
        dyadic_fractional_power(np.eye(2), -2.0, 5)


def test_from_text_round_trip():
    h = HermitianMatrix.from_text("# two by two\n2\n2 0 1 1\n1 -1 3 0\n")
    assert np.allclose(h.entries, [[2, 1 + 1j], [1 - 1j, 3]])
    with pytest.raises(DomainError):
        HermitianMatrix.from_text("2\n1 0 0 0\n")


def test_unitary_evolution():
    assert np.allclose(unitary_evolution(np.diag([1.0, 3.0]), 0.0), np.eye(2))
    assert np.allclose(unitary_evolution(np.diag([1.0, 3.0]), math.pi), -np.eye(2), atol=1e-14)
    a = random_hermitian(6, 1)
    u = unitary_evolution(a, 0.7)
    assert norm(u @ u.conj().T - np.eye(6)) < 1e-12
    assert norm(unitary_evolution(a, 0.3) @ unitary_evolution(a, 0.4) - u) < 1e-12


def test_resolvent_two_by_two():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    ex = np.linalg.inv(a - 1j * np.eye(2))
    assert norm(dyadic_resolvent(a, 1.0, 30) - ex) < 1e-7


def test_resolvent_scalar_is_dyadic_reciprocal():
    for a in (0.0, 2.5, -4.0):
        r = dyadic_resolvent([[a]], 1.0, 12)[0, 0]
        assert abs(r - 1j * dyadic_reciprocal(1.0 + 1j * a, 12)[0]) < 1e-13


def test_operator_and_spectral_routes_agree():
    for seed in range(3):
        a = random_hermitian(10, seed)
        assert norm(dyadic_resolvent(a, 0.7, 15) - dyadic_resolvent_spectral(a, 0.7, 15)) < 1e-12


def test_resolvent_remainder_and_rate():
    a = random_hermitian(8, 4)
    ex = np.linalg.inv(a.entries - 1j * np.eye(8))
    errs = []
    for n in range(10, 26):
        r = dyadic_resolvent(a, 1.0, n)
        err = r - ex
        errs.append(norm(err))
        assert norm(err - resolvent_remainder(a, 1.0, n)) < 1e-12
        residual = norm((a.entries - 1j * np.eye(8)) @ r - np.eye(8))
        predicted = norm((a.entries - 1j * np.eye(8)) @ resolvent_remainder(a, 1.0, n))
        assert predicted / 10 <= residual <= 10 * predicted
    ratios = np.array(errs[1:]) / np.array(errs[:-1])
    assert np.all((ratios > 0.4) & (ratios < 0.6))


def test_series_form_matches_resolvent():
    a = random_hermitian(5, 7)
    assert norm(resolvent_series_form(a, 1.0, 8) - dyadic_resolvent(a, 1.0, 8)) < 1e-12


def test_positive_inverse_scalar():
    r = dyadic_inverse_positive([[1.0]], 35)
    assert abs(r.resolvent_form[0, 0] - 1.0) < 1e-10
    assert abs(r.series_form[0, 0] - 1.0) < 1e-10


def test_positive_inverse_diag_and_scaled_identity():
    a = np.diag([1.0, 2.0, 5.0])
    r = dyadic_inverse_positive(a, 30)
    assert norm(r.resolvent_form - np.diag([1, 0.5, 0.2])) < 1e-7
    s = dyadic_inverse_positive(3.0 * np.eye(4), 20).resolvent_form
    off = s - np.diag(np.diag(s))
    assert np.max(np.abs(off)) < 1e-14
    assert np.allclose(np.diag(s), 1 / 3, atol=1e-5)


def test_positive_inverse_explicit_matches_closed_form():
    a = np.diag([2.0, 3.0])
    lazy = dyadic_inverse_positive(a, 4, J=300)
    explicit = dyadic_inverse_positive(a, 4, J=300, explicit=True)
    assert norm(lazy.series_form - explicit.series_form) < 1e-12
    # the omitted j = 0 terms leave 1 - sum_{k<=N} 2^{-k} = 2^{-N}
    assert abs(explicit.discrepancy - 2.0**-4) < 1e-10


def test_positive_inverse_hermitian_and_positive():
    a = random_hermitian(6, 9, positive=True)
    r = dyadic_inverse_positive(a, 25).resolvent_form
    assert norm(r - r.conj().T) < 1e-12
    assert np.min(np.linalg.eigvalsh(0.5 * (r + r.conj().T))) > 0
    assert norm(r - np.linalg.inv(a.entries)) < 2e-7


def test_semigroup_contracts():
    a = random_hermitian(5, 2, positive=True)
    assert norm(contraction_semigroup(a, 1.0)) < 1.0


def test_fractional_power_scalar_examples():
    assert abs(dyadic_fractional_power([[4.0]], 0.5, 40)[0, 0] - 0.5) < 1e-6
    f = dyadic_fractional_power(np.diag([1.0, 9.0]), 0.5, 40)
    assert norm(f - np.diag([1.0, 1 / 3])) < 1e-6


def test_fractional_power_remainder_and_rate():
    a = random_hermitian(6, 5, positive=True)
    exact = a.apply(lambda mu: mu**-0.5)
    errs = []
    for n in range(20, 41, 4):
        f = dyadic_fractional_power(a, 0.5, n)
        errs.append(norm(f - exact))
        assert norm(f - exact - fractional_power_remainder(a, 0.5, n)) < 1e-12
    slope = np.polyfit(range(20, 41, 4), np.log(errs), 1)[0]
    assert abs(slope / (-0.5 * math.log(2)) - 1) < 0.05


def test_fractional_power_negative_exponent():
    a = np.diag([0.5, 2.0])
    f = dyadic_fractional_power(a, -0.5, 30)
    assert norm(f - np.diag([0.5**-1.5, 2.0**-1.5])) < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.floats(-5, 5), st.floats(0.2, 3.0))
def test_spectral_commutation_random_scalar(mu, lam):
    a = np.diag([mu, mu + 1.0])
    assert norm(dyadic_resolvent(a, lam, 10) - dyadic_resolvent_spectral(a, lam, 10)) < 1e-12
