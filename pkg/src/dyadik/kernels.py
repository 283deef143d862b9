"""Dyadic identities for ``1/p`` and for the Cauchy kernel ``1/(s - p)``.

Halving the argument repeatedly in ``1/(1 - e^{-p})`` telescopes into

    1/p = 1/(1 - e^{-p}) - sum_{k=1}^{n} 2^{-k}/(1 + e^{-p/2^k}) + rho_{n+1}(p),

with ``rho_{n+1}(p) = 2^{-n} g(p/2^n)`` and ``g(q) = 1/q - 1/(1 - e^{-q})``.
The remainder halves with each added term.  Rotating and shifting
``p -> beta (p - s)`` gives the same structure for ``1/(s - p)``.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .lerch import polylog
from .numerics import DomainError, expm1, PoleError, as_complex, log_gamma, recip_minus_bose

_POLE_RTOL = 1e-12


@dataclass(frozen=True)
class DyadicKernelParams:
    """Rotation ``beta`` and truncation depth ``n`` of a Cauchy-kernel split."""

    beta: complex
    n: int

    def __post_init__(self):
        if complex(self.beta) == 0:
            raise DomainError("beta must be nonzero")
        if self.n < 0:
            raise DomainError("n must be nonnegative")


@dataclass(frozen=True)
class KernelRemainder:
    """Exact remainder of a truncated dyadic identity.

    Attributes
    ----------
    value : complex
        The remainder itself.
    apriori_bound : float
        ``a0 * scale * 2^{-n}``; dominates ``|value|`` when ``bound_applies``.
    bound_applies : bool
        Whether the argument lies in the disk where the bound is proven.
    """

    value: complex
    apriori_bound: float
    bound_applies: bool = True


def _safe_div(num: complex, den: complex) -> complex:
    if abs(den) < _POLE_RTOL * (1.0 + abs(num)):
        raise PoleError("a denominator of the dyadic identity vanishes")
    return num / den


def dyadic_partial_sum(p: complex, n: int) -> complex:
    """``1/(1 - e^{-p}) - sum_{k=1}^{n} 2^{-k}/(1 + e^{-p/2^k})``."""
    acc = _safe_div(1.0, -expm1(-p))
    scale = 1.0
    for k in range(1, n + 1):
        scale *= 0.5
        acc -= _safe_div(scale, 1.0 + cmath.exp(-p * scale))
    return acc


def dyadic_remainder(p: complex, n: int) -> complex:
    """``rho_{n+1}(p) = 2^{-n} g(p/2^n)`` with the removable point handled."""
    scale = 2.0**-n
    try:
        return scale * recip_minus_bose(p * scale)
    except PoleError:
        raise PoleError(f"p = {p} lies on the pole lattice of the remainder") from None


def dyadic_reciprocal(p, n: int) -> Tuple[complex, KernelRemainder]:
    """Split ``1/p`` into ``n + 1`` dyadic terms and an exact remainder.

    Parameters
    ----------
    p : complex
        Nonzero point off the pole lattice ``2 pi i m`` and
        ``2^k i pi (2m + 1)``.
    n : int
        Number of halving steps.

    Returns
    -------
    partial_sum : complex
    remainder : KernelRemainder
        ``partial_sum + remainder.value == 1/p`` up to roundoff.

    Raises
    ------
    PoleError
        When a denominator vanishes or ``p == 0``.
    """
    p = as_complex(p)
    if p == 0:
        raise PoleError("1/p is singular at p = 0")
    if n < 0:
        raise DomainError("n must be nonnegative")
    partial = dyadic_partial_sum(p, n)
    value = dyadic_remainder(p, n)
    bound = a0_constant() * 2.0**-n
    return partial, KernelRemainder(value, bound, abs(p) <= 2.0**n)


_A0_LOCK = threading.Lock()
_A0_VALUE: Optional[float] = None


def _abs_g_on_circle(phi: np.ndarray) -> np.ndarray:
    q = np.exp(1j * phi)
    return np.abs(1.0 / q + 1.0 / np.expm1(-q))


def _golden_max(f, a: float, b: float, tol: float = 1e-10) -> float:
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    return max(fc, fd)


def _compute_a0() -> float:
    grid = np.linspace(-math.pi, math.pi, 4097)
    vals = _abs_g_on_circle(grid)
    best = 0.0
    h = grid[1] - grid[0]
    # refine around every local maximum, not just the global one
    for i in np.flatnonzero((vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))):
        phi0 = grid[i]
        best = max(
            best,
            _golden_max(lambda t: float(_abs_g_on_circle(np.array([t]))[0]), phi0 - h, phi0 + h),
        )
    return max(best, float(vals.max()))


def a0_constant() -> float:
    """``max_{|q| <= 1} |1/q - 1/(1 - e^{-q})|``.

    The function is analytic in the closed unit disk, so the maximum sits on
    the circle.  A 4096-point grid locates the local maxima and golden-section
    search refines each.  The value is computed once per process.
    """
    global _A0_VALUE
    if _A0_VALUE is None:
        with _A0_LOCK:
            if _A0_VALUE is None:
                _A0_VALUE = _compute_a0()
    return _A0_VALUE


def dyadic_cauchy(p, s, params: DyadicKernelParams) -> Tuple[complex, KernelRemainder]:
    """Dyadic split of the Cauchy kernel ``1/(s - p)``.

    The retained part is

        -beta e^{-beta s}/(e^{-beta s} - e^{-beta p})
            + sum_{k=1}^{n} 2^{-k} beta e^{-beta s/2^k}/(e^{-beta s/2^k} + e^{-beta p/2^k}),

    each ratio evaluated after dividing through by ``e^{-beta s/2^k}`` so
    that large ``|beta s|`` cannot overflow.  The remainder equals
    ``-beta rho_{n+1}(beta (p - s))``.

    Raises
    ------
    PoleError
        If ``p == s`` or a denominator vanishes.
    """
    p = as_complex(p)
    s = as_complex(s)
    beta = complex(params.beta)
    n = params.n
    if p == s:
        raise PoleError("p coincides with s")
    q = beta * (p - s)
    partial = -beta * _safe_div(1.0, -expm1(-q))
    scale = 1.0
    for k in range(1, n + 1):
        scale *= 0.5
        partial += _safe_div(scale * beta, 1.0 + cmath.exp(-q * scale))
    value = -beta * dyadic_remainder(q, n)
    bound = abs(beta) * a0_constant() * 2.0**-n
    return partial, KernelRemainder(value, bound, abs(p - s) < 2.0**n / abs(beta))


def dyadic_cauchy_terms(p, s, beta, k_from: int, k_to: int) -> np.ndarray:
    """The ``k``-th dyadic Cauchy terms for ``k_from <= k <= k_to``."""
    q = as_complex(beta) * (as_complex(p) - as_complex(s))
    ks = np.arange(k_from, k_to + 1)
    scale = 2.0 ** (-ks.astype(float))
    return scale * complex(beta) / (1.0 + np.exp(-q * scale))


def cauchy_c0(p, s, beta, k_max: int = 60) -> float:
    """Smallest denominator modulus ``|1 + e^{beta (s - p)/2^k}|`` over
    ``1 <= k <= k_max`` together with ``|1 - e^{beta (s - p)}|``."""
    q = as_complex(beta) * (as_complex(s) - as_complex(p))
    ks = np.arange(1, k_max + 1)
    dens = np.abs(1.0 + np.exp(q * 2.0 ** (-ks.astype(float))))
    return float(min(dens.min(), abs(1.0 - cmath.exp(q))))


def dyadic_cauchy_tail_bound(p, s, params: DyadicKernelParams, c0: float) -> float:
    """Geometric tail bound ``2^{-n} |beta| / c0``.

    Valid when every dyadic denominator ``|1 + e^{beta s/2^k} e^{-beta p/2^k}|``
    and ``|1 - e^{beta s} e^{-beta p}|`` exceeds ``c0``.
    """
    if not c0 > 0.0:
        raise DomainError("c0 must be positive")
    return 2.0**-params.n * abs(complex(params.beta)) / c0


def ramified_dyadic_identity(p, s_exp: float, n: int) -> Tuple[complex, complex]:
    """Both sides of the ramified dyadic identity for ``s < 1``.

    Returns
    -------
    lhs : complex
        ``pi p^{s-1}``.
    rhs_partial : complex
        ``Gamma(s) sin(pi s) [Li_s(e^{-p}) - sum_{k=1}^{n} 2^{-k(1-s)} Li_s(-e^{-p/2^k})]``.
        The difference to ``lhs`` shrinks by ``2^{-(1-s)}`` per added term.

    Raises
    ------
    DomainError
        For ``p`` on ``(-inf, 0]``, ``s >= 1`` or integer ``s`` other than 0.
    """
    p = as_complex(p)
    if p.imag == 0.0 and p.real <= 0.0:
        raise DomainError("p on the cut (-inf, 0]")
    if s_exp >= 1.0:
        raise DomainError("exponent must be below 1")
    lhs = math.pi * cmath.exp((s_exp - 1.0) * cmath.log(p))
    if s_exp == 0.0:
        # Gamma(s) sin(pi s) -> pi and Li_0(z) = z/(1 - z)
        pref = math.pi
    elif s_exp == round(s_exp):
        raise DomainError("integer exponents other than 0 are excluded")
    else:
        pref = cmath.exp(log_gamma(s_exp)) * math.sin(math.pi * s_exp)
    acc = polylog(s_exp, cmath.exp(-p))
    scale = 1.0
    for k in range(1, n + 1):
        scale *= 0.5
        acc -= scale ** (1.0 - s_exp) * polylog(s_exp, -cmath.exp(-p * scale))
    return lhs, pref * acc
