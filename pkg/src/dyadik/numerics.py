"""Scalar primitives shared by every other module.

Complex arguments are plain Python ``complex`` values.  Logarithms and
powers use the principal branch with the cut along the negative real axis.
The log-gamma function is the analytic continuation from the positive real
axis (it is *not* ``log(gamma(x))``), so its imaginary part is continuous
off the negative real axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Union

Number = Union[int, float, complex]

#: Orders below this use the running product for rising factorials.
POCHHAMMER_PRODUCT_THRESHOLD = 24

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)

# B_{2k} / (2k (2k-1)) for k = 1..10
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
_STIRLING_MIN_RE = 8.0


class DyadikError(Exception):
    """Base class for errors raised by the library."""


class DomainError(DyadikError, ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(DomainError):
    """Argument sits on (or numerically at) a pole."""


class ConvergenceError(DyadikError, RuntimeError):
    """An iterative or quadrature procedure missed its tolerance.

    Attributes
    ----------
    achieved : float
        Best error estimate reached before giving up.
    """

    def __init__(self, message: str, achieved: float = math.inf):
        super().__init__(message)
        self.achieved = achieved


def as_complex(x: Number) -> complex:
    """Coerce a scalar to ``complex`` and reject non-finite input."""
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {x!r}")
    return z


def is_nonpositive_integer(x: Number, tol: float = 0.0) -> bool:
    """True when ``x`` is (within ``tol``) one of 0, -1, -2, ..."""
    z = complex(x)
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def _stirling_series(z: complex) -> complex:
    inv = 1.0 / z
    inv2 = inv * inv
    acc = 0.0j
    power = inv
    for c in _STIRLING_COEFFS:
        acc += c * power
        power *= inv2
    return (z - 0.5) * cmath.log(z) - z + LOG_SQRT_2PI + acc


def _sinpi(z: complex) -> complex:
    # reduce the real part so sin stays accurate for large |Re z|
    r = z.real - 2.0 * math.floor(0.5 * z.real)
    return cmath.sin(math.pi * complex(r, z.imag))


def _log_sinpi(z: complex) -> complex:
    """Principal ``log(sin(pi z))`` without overflow for large ``|Im z|``."""
    r = z.real - 2.0 * math.floor(0.5 * z.real)
    w = complex(r, z.imag)
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * w))
    # sin(pi w) = e^{-i pi w} (1 - e^{2 i pi w})/(-2i) for Im w > 0, conjugate form below
    if z.imag > 0:
        v = -1j * math.pi * w + cmath.log(1.0 - cmath.exp(2j * math.pi * w)) - cmath.log(-2j)
    else:
        v = 1j * math.pi * w + cmath.log(1.0 - cmath.exp(-2j * math.pi * w)) - cmath.log(2j)
    im = math.remainder(v.imag, 2.0 * math.pi)
    if im <= -math.pi:
        im += 2.0 * math.pi
    return complex(v.real, im)


def log_gamma(x: Number) -> complex:
    """Principal-branch log-gamma of a complex argument.

    Parameters
    ----------
    x : complex
        Any point except 0, -1, -2, ...

    Returns
    -------
    complex
        ``L`` with ``exp(L) == gamma(x)`` and ``L(x + 1) = L(x) + log(x)``.

    Raises
    ------
    PoleError
        At nonpositive integers.
    """
    z = as_complex(x)
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z}")
    if z.real >= _STIRLING_MIN_RE or abs(z.imag) >= max(_STIRLING_MIN_RE, 0.25 * abs(z)):
        # the series is accurate for large |z| away from the negative axis
        return _stirling_series(z)
    if z.real > -20.0:
        shift = int(math.ceil(_STIRLING_MIN_RE - z.real))
        acc = 0.0j
        w = z
        for _ in range(shift):
            acc += cmath.log(w)
            w += 1.0
        return _stirling_series(w) - acc
    # reflection with an explicit branch correction
    if z.imag == 0.0:
        # limit from the upper half plane
        turns = math.floor(0.5 * z.real + 0.25)
        correction = 2.0 * math.pi * turns
    else:
        correction = math.copysign(2.0 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
    return complex(LOG_PI, correction) - _log_sinpi(z) - log_gamma(1.0 - z)


def log_abs_gamma(x: Number) -> float:
    """``log|gamma(x)|``, cheaper to reason about than the complex branch."""
    return log_gamma(x).real


def pochhammer(x: Number, k: int) -> complex:
    """Rising factorial ``(x)_k = x (x+1) ... (x+k-1)``.

    A direct product is used for ``k`` below
    :data:`POCHHAMMER_PRODUCT_THRESHOLD` (and whenever the gamma ratio would
    hit a pole); larger orders go through :func:`log_gamma`.
    """
    if k < 0:
        raise DomainError("pochhammer order must be nonnegative")
    z = as_complex(x)
    if k == 0:
        return 1.0 + 0.0j
    if (
        k < POCHHAMMER_PRODUCT_THRESHOLD
        or is_nonpositive_integer(z)
        or is_nonpositive_integer(z + k)
    ):
        acc = 1.0 + 0.0j
        for j in range(k):
            acc *= z + j
        return acc
    return cmath.exp(log_gamma(z + k) - log_gamma(z))


def pochhammer_ratio(k: int, x: Number) -> complex:
    """Factorial-series weight ``k! / (x)_{k+1}``.

    Evaluated in log space for large ``k`` so that neither factor overflows.
    For large ``k`` the value behaves like ``gamma(x) k**(-x)``.

    Raises
    ------
    PoleError
        If ``x`` is a nonpositive integer.
    """
    if k < 0:
        raise DomainError("order must be nonnegative")
    z = as_complex(x)
    if is_nonpositive_integer(z):
        raise PoleError(f"(x)_(k+1) vanishes at x = {z}")
    if k < POCHHAMMER_PRODUCT_THRESHOLD or is_nonpositive_integer(z + k + 1):
        acc = 1.0 / z
        for j in range(1, k + 1):
            acc *= j / (z + j)
        return acc
    return cmath.exp(math.lgamma(k + 1.0) + log_gamma(z) - log_gamma(z + k + 1))


def log_abs_pochhammer_ratio(k: int, x: Number) -> float:
    """``log|k! / (x)_{k+1}|`` without forming the ratio."""
    z = as_complex(x)
    if is_nonpositive_integer(z):
        raise PoleError(f"(x)_(k+1) vanishes at x = {z}")
    if k < POCHHAMMER_PRODUCT_THRESHOLD or is_nonpositive_integer(z + k + 1):
        acc = -math.log(abs(z))
        for j in range(1, k + 1):
            acc += math.log(j) - math.log(abs(z + j))
        return acc
    return math.lgamma(k + 1.0) + log_abs_gamma(z) - log_abs_gamma(z + k + 1)


@dataclass(frozen=True)
class StirlingTable:
    """Signed Stirling numbers of the first kind, stored exactly.

    ``table(k, j)`` returns s(k, j); entries with ``j > k`` are zero.
    """

    max_k: int
    entries: tuple

    def __call__(self, k: int, j: int) -> int:
        if not 0 <= k <= self.max_k:
            raise DomainError(f"row {k} outside table of size {self.max_k}")
        if j < 0 or j > k:
            return 0
        return self.entries[k][j]

    def row(self, k: int) -> List[int]:
        return list(self.entries[k])


def stirling_first_kind(max_k: int) -> StirlingTable:
    """Fill the table s(k, j), 0 <= j <= k <= max_k, by the recurrence
    s(k+1, j) = -k s(k, j) + s(k, j-1).

    Python integers are unbounded, so no entry can saturate.
    """
    if max_k < 0:
        raise DomainError("max_k must be nonnegative")
    rows = [[1]]
    for k in range(max_k):
        prev = rows[-1]
        new = [0] * (k + 2)
        for j in range(k + 2):
            left = prev[j] if j <= k else 0
            down = prev[j - 1] if j >= 1 else 0
            new[j] = -k * left + down
        rows.append(new)
    return StirlingTable(max_k, tuple(tuple(r) for r in rows))


def expm1(z: Number) -> complex:
    """``exp(z) - 1`` without cancellation for small ``|z|``."""
    z = complex(z)
    x, y = z.real, z.imag
    half = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * half * half, math.exp(x) * math.sin(y))


def taylor_recip_minus_bose(q: complex) -> complex:
    """``1/q - 1/(1 - exp(-q))`` by its Taylor series (for small ``|q|``).

    The series is ``-1/2 + q/12 - q^3/720 + q^5/30240 - ...``
    """
    q2 = q * q
    return -0.5 + q * (1.0 / 12.0 - q2 * (1.0 / 720.0 - q2 / 30240.0))


def recip_minus_bose(q: complex) -> complex:
    """``g(q) = 1/q - 1/(1 - exp(-q))`` with the removable point at 0 handled.

    Raises
    ------
    PoleError
        Near the poles ``q = 2 pi i m``, ``m != 0``.
    """
    if abs(q) < 1e-3:
        return taylor_recip_minus_bose(q)
    den = -expm1(-q)
    if abs(den) < 1e-12 * 2.0:
        raise PoleError(f"1/(1 - exp(-q)) is singular at q = {q}")
    return 1.0 / q - 1.0 / den
