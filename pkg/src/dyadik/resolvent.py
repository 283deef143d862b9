"""Dyadic resolvent identities for finite Hermitian matrices.

With ``U_t = exp(-itA)`` and, for positive ``A``, ``T_t = exp(-tA)``:

* ``(A - i lam)^{-1} = i (1 - e^{-lam} U_1)^{-1}
  - i sum_k 2^{-k} (1 + e^{-lam/2^k} U_{2^{-k}})^{-1}``
* ``A^{-1} = (1 - T_1)^{-1} - sum_k 2^{-k} (1 + T_{2^{-k}})^{-1}``
* ``A^{s-1} = Gamma(s) sin(pi s)/pi
  [Li_s(T_1) - sum_k 2^{-k(1-s)} Li_s(-T_{2^{-k}})]``

Operator formulas are formed with matrix inverses of the evolution
operators; the eigenvalue-wise scalar formulas are exposed separately so the
two can be compared.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import zeta as _riemann_zeta

from .lerch import polylog
from .numerics import DomainError, expm1

MAX_DIMENSION = 64
HERMITIAN_TOL = 1e-13


class NotHermitianError(DomainError):
    """Matrix is not conjugate-symmetric to the tolerance."""


class NotPositiveDefiniteError(DomainError):
    """Matrix has a nonpositive eigenvalue."""


@dataclass(frozen=True)
class HermitianMatrix:
    """A validated Hermitian matrix with its eigendecomposition.

    Parameters
    ----------
    entries : array_like
        Square complex array of size at most 64.
    """

    entries: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __init__(self, entries):
        a = np.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("matrix must be square")
        d = a.shape[0]
        if not 1 <= d <= MAX_DIMENSION:
            raise DomainError(f"dimension {d} outside 1..{MAX_DIMENSION}")
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL * scale:
            raise NotHermitianError("matrix is not Hermitian to 1e-13")
        a = 0.5 * (a + a.conj().T)
        w, v = np.linalg.eigh(a)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """``V f(Lambda) V*`` for an eigenvalue-wise function ``f``."""
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ v.conj().T

    def require_positive(self) -> None:
        if self.eigenvalues[0] <= 0.0:
            raise NotPositiveDefiniteError(f"smallest eigenvalue {self.eigenvalues[0]:.3g} is not positive")

    @classmethod
    def from_text(cls, text: str) -> "HermitianMatrix":
        """Parse ``d`` followed by ``d`` rows of ``re im`` pairs."""
        tokens = [t for line in text.splitlines() if not line.strip().startswith("#") for t in line.split()]
        if not tokens:
            raise DomainError("empty matrix input")
        d = int(tokens[0])
        vals = [float(t) for t in tokens[1:]]
        if len(vals) != 2 * d * d:
            raise DomainError(f"expected {2 * d * d} numbers for a {d}x{d} matrix, got {len(vals)}")
        arr = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
        return cls(arr.reshape(d, d))

    @classmethod
    def read(cls, path: str) -> "HermitianMatrix":
        with open(path) as fh:
            return cls.from_text(fh.read())


def _as_hermitian(A) -> HermitianMatrix:
    return A if isinstance(A, HermitianMatrix) else HermitianMatrix(A)


def unitary_evolution(A, t: float) -> np.ndarray:
    """``U_t = exp(-i t A)`` through the spectral decomposition."""
    H = _as_hermitian(A)
    return H.apply(lambda mu: np.exp(-1j * t * mu))


def contraction_semigroup(A, t: float) -> np.ndarray:
    """``T_t = exp(-t A)`` for positive definite ``A``."""
    H = _as_hermitian(A)
    H.require_positive()
    return H.apply(lambda mu: np.exp(-t * mu))


def _check_lambda(lam: float) -> None:
    if not lam > 0.0:
        raise DomainError("lambda must be positive; for lambda < 0 conjugate the identity for -lambda")


def dyadic_resolvent(A, lam: float, N: int) -> np.ndarray:
    """Dyadic approximation of ``(A - i lam)^{-1}`` with ``N`` ladder terms.

    The error is ``i V [2^{-N}/(1 - e^{-p/2^N}) - 1/p] V*`` with
    ``p = lam + i mu``, about ``2^{-N-1}`` once ``|p| << 2^N``.
    """
    _check_lambda(lam)
    H = _as_hermitian(A)
    eye = np.eye(H.dim)
    out = 1j * np.linalg.inv(eye - math.exp(-lam) * unitary_evolution(H, 1.0))
    for k in range(1, N + 1):
        c = 2.0 ** -k
        out -= 1j * c * np.linalg.inv(eye + math.exp(-lam * c) * unitary_evolution(H, c))
    return out


def _dyadic_reciprocal_scalar(p: np.ndarray, N: int) -> np.ndarray:
    out = 1.0 / -np.vectorize(expm1)(-p)
    for k in range(1, N + 1):
        c = 2.0 ** -k
        out = out - c / (1.0 + np.exp(-p * c))
    return out


def dyadic_resolvent_spectral(A, lam: float, N: int) -> np.ndarray:
    """Same partial sum as :func:`dyadic_resolvent`, formed eigenvalue-wise."""
    _check_lambda(lam)
    H = _as_hermitian(A)
    return H.apply(lambda mu: 1j * _dyadic_reciprocal_scalar(lam + 1j * mu, N))


def resolvent_remainder(A, lam: float, N: int) -> np.ndarray:
    """Predicted ``dyadic_resolvent - (A - i lam)^{-1}`` from the telescoped sum."""
    _check_lambda(lam)
    H = _as_hermitian(A)

    def f(mu):
        p = lam + 1j * mu
        c = 2.0 ** -N
        return 1j * (c / -np.vectorize(expm1)(-p * c) - 1.0 / p)

    return H.apply(f)


def _geometric(z: np.ndarray, J: int, start: int) -> np.ndarray:
    """``sum_{j=start}^{J} z^j`` for ``|z| <= 1``, ``z != 1``."""
    return (z ** start - z ** (J + 1)) / (1.0 - z)


def resolvent_series_form(A, lam: float, N: int, J: Optional[int] = None) -> np.ndarray:
    """Resolvent written with the geometric series of each inverse:
    ``i sum_{j>=0} e^{-j lam} U_j - i sum_k 2^{-k} sum_{j>=0} (-1)^j e^{-j lam/2^k} U_{j/2^k}``.

    The inner sums up to ``J`` are evaluated eigenvalue-wise in closed form.
    ``J`` defaults to making ``e^{-lam J/2^N}`` below ``1e-16``.
    """
    _check_lambda(lam)
    H = _as_hermitian(A)
    if J is None:
        J = int(math.ceil(37.0 * 2.0**N / lam))

    def f(mu):
        p = lam + 1j * mu
        acc = 1j * _geometric(np.exp(-p), J, 0)
        for k in range(1, N + 1):
            c = 2.0 ** -k
            acc = acc - 1j * c * _geometric(-np.exp(-p * c), J, 0)
        return acc

    return H.apply(f)


@dataclass
class PositiveInverseResult:
    """Both truncations of the positive-operator identity.

    Attributes
    ----------
    resolvent_form : ndarray
        ``(1 - T_1)^{-1} - sum_{k<=N} 2^{-k} (1 + T_{2^{-k}})^{-1}``.
    series_form : ndarray
        ``sum_{j=1}^{J} T_j - sum_{k<=N} sum_{j=1}^{J} 2^{-k} (-1)^j T_{j/2^k}``.
    discrepancy : float
        Operator norm of their difference; ``2^{-N}`` from the omitted
        ``j = 0`` terms plus the ``J`` truncation.
    J : int
    """

    resolvent_form: np.ndarray
    series_form: np.ndarray
    discrepancy: float
    J: int


def default_series_length(mu_min: float, N: int, target: float) -> int:
    """Smallest ``J`` with ``exp(-mu_min J/2^N) < target``."""
    return int(math.floor(2.0**N * math.log(1.0 / target) / mu_min)) + 1


def dyadic_inverse_positive(
    A, N: int, J: Optional[int] = None, target: float = 1e-16, explicit: bool = False
) -> PositiveInverseResult:
    """Dyadic approximations of ``A^{-1}`` for positive definite ``A``.

    Parameters
    ----------
    A : HermitianMatrix or array_like
    N : int
        Ladder length.
    J : int, optional
        Length of each inner series; by default :func:`default_series_length`.
    explicit : bool
        Sum the inner series term by term with matrix exponentials instead
        of the eigenvalue-wise closed form (``J N`` products, small cases).
    """
    H = _as_hermitian(A)
    H.require_positive()
    if J is None:
        J = default_series_length(float(H.eigenvalues[0]), N, target)
    eye = np.eye(H.dim)
    res = np.linalg.inv(eye - contraction_semigroup(H, 1.0))
    for k in range(1, N + 1):
        c = 2.0 ** -k
        res -= c * np.linalg.inv(eye + contraction_semigroup(H, c))
    if explicit:
        ser = np.zeros((H.dim, H.dim), dtype=complex)
        for j in range(1, J + 1):
            ser += contraction_semigroup(H, float(j))
        for k in range(1, N + 1):
            c = 2.0 ** -k
            for j in range(1, J + 1):
                ser -= c * (-1) ** j * contraction_semigroup(H, j * c)
    else:

        def f(mu):
            acc = _geometric(np.exp(-mu), J, 1)
            for k in range(1, N + 1):
                c = 2.0 ** -k
                acc = acc - c * _geometric(-np.exp(-mu * c), J, 1)
            return acc

        ser = H.apply(f)
    disc = float(np.linalg.norm(res - ser, 2))
    return PositiveInverseResult(res, ser, disc, J)


def _fractional_prefactor(s: float) -> float:
    return math.gamma(s) * math.sin(math.pi * s) / math.pi


def _check_fractional(s_exp: float) -> None:
    if not s_exp < 1.0 or float(s_exp).is_integer():
        raise DomainError("s_exp must be below 1 and not an integer")


def dyadic_fractional_power(A, s_exp: float, N: int) -> np.ndarray:
    """Dyadic approximation of ``A^{s-1}`` from polylogarithms of ``T_t``.

    Converges like ``2^{-N(1-s)} zeta(s)/Gamma(1-s)``.
    """
    _check_fractional(s_exp)
    H = _as_hermitian(A)
    H.require_positive()
    pref = _fractional_prefactor(s_exp)

    def li(z):
        return np.array([polylog(s_exp, complex(v)) for v in z])

    def f(mu):
        acc = li(np.exp(-mu))
        for k in range(1, N + 1):
            c = 2.0 ** -k
            acc = acc - 2.0 ** (-k * (1.0 - s_exp)) * li(-np.exp(-mu * c))
        return pref * acc

    return H.apply(f)


def fractional_power_remainder(A, s_exp: float, N: int) -> np.ndarray:
    """Predicted ``dyadic_fractional_power - A^{s-1}``:
    ``prefactor 2^{-N(1-s)} Li_s(T_{2^{-N}}) - A^{s-1}``.

    The singular term ``Gamma(1-s) t^{s-1}`` of ``Li_s(e^{-t})`` cancels
    ``A^{s-1}`` exactly, so the remainder is summed from the regular part
    ``sum_n zeta(s-n) (-t)^n/n!`` when ``t = mu 2^{-N}`` is small.
    """
    _check_fractional(s_exp)
    H = _as_hermitian(A)
    H.require_positive()
    pref = _fractional_prefactor(s_exp)
    c = 2.0 ** -N

    def f(mu):
        out = np.empty(len(mu))
        for i, v in enumerate(mu):
            t = v * c
            if t < 1.0:
                acc, term, n = 0.0, 1.0, 0
                while True:
                    add = float(_riemann_zeta(s_exp - n)) * term
                    acc += add
                    if n > 2 and abs(add) <= 1e-17 * max(abs(acc), 1e-300):
                        break
                    n += 1
                    term *= -t / n
                out[i] = pref * c ** (1.0 - s_exp) * acc
            else:
                out[i] = (pref * c ** (1.0 - s_exp) * polylog(s_exp, cmath.exp(-t))).real - v ** (s_exp - 1.0)
        return out

    return H.apply(f)
