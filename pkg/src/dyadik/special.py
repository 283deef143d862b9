"""Dyadic expansions of named special functions.

* ``e^{-x} Ei^+(x)`` with the cut along ``-i[0, inf)`` and
  ``e^y Ei^+(-y)`` for ``Re y > 0``;
* the digamma function ``Psi`` and half-differences of it;
* normalized Bessel functions ``h(u) = K_nu(u/2) e^{u/2}/sqrt(pi u)``, with
  Airy as ``nu = 1/3``;
* ``Gamma(1 - s) e^x x^{-s} Gamma(s, x)`` and ``erfc``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate

from . import oracle
from .engine import (
    BoundMeasure,
    DyadicExpansion,
    EvalResult,
    FunctionElement,
    PoleTerm,
    TruncationPlan,
    build_expansion,
    evaluate,
    pole_element,
)
from .lerch import factorial_tail_majorant, lerch_phi_direct, polylog, polylog_derivative
from .numerics import ConvergenceError, DomainError, as_complex

EI_BETA = 1j * math.pi
EI_LEFT_BETA = -1.0 + 0.0j

_TAIL_TERMS = 20000
_K_LADDER = 60


def _series_tail(first: complex, ratio, start: int, stop_rel: float = 1e-18) -> complex:
    """Sum ``a_start + a_{start+1} + ...`` given ``a_start`` and ``a_{j+1}/a_j = ratio(j)``."""
    acc = 0.0j
    term = first
    for j in range(start, start + _TAIL_TERMS):
        acc += term
        nxt = term * ratio(j)
        if abs(nxt) < stop_rel * max(abs(acc), 1e-300) and abs(ratio(j)) < 0.99:
            return acc
        term = nxt
    raise ConvergenceError("tail summation did not settle", achieved=abs(term))


# ---------------------------------------------------------------------------
# exponential integral
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EiRemainders:
    """Remainders of a truncated ``Ei`` expansion.

    Attributes
    ----------
    rho_n0 : complex
        Tail ``sum_{m>n}`` of the first series (as added to the partial sum).
    rho_lk : list of complex
        Tails of series ``k = 1..N-1``.
    R_N : float
        Certified bound on all series ``k >= N``.
    """

    rho_n0: complex
    rho_lk: List[complex]
    R_N: float


def ei_sheet(x) -> float:
    """Argument of ``x`` on the continuation range ``(-pi/2, 3 pi/2)``."""
    x = as_complex(x)
    a = cmath.phase(x)
    if a <= -0.5 * math.pi:
        a += 2.0 * math.pi
    return a


def ei_coefficients(beta: complex, m_max: int, k: int) -> np.ndarray:
    """``d_{m,k}`` of ``1/(1 - p)``: ``E^{m-1}/(E - 1)^m`` for ``k = 0`` and
    ``E_k^{m-1}/(E_k + 1)^m`` otherwise, ``E_k = e^{beta/2^k}``."""
    m = np.arange(m_max)
    E = cmath.exp(beta * 2.0**-k)
    den = E - 1.0 if k == 0 else E + 1.0
    # powers of the ratio stay bounded where the separate powers overflow
    return (E / den) ** m / den


def _ei_expansion(beta: complex, plan: TruncationPlan, label: str) -> DyadicExpansion:
    d0 = ei_coefficients(beta, plan.n, 0)
    dk = [ei_coefficients(beta, ell, k) for k, ell in enumerate(plan.ell, start=1)]
    measure = BoundMeasure(np.array([1.0 + 0j]), np.array([1.0]))
    return DyadicExpansion(beta, d0, dk, measure, target_accuracy=plan.target_accuracy, label=label)


def ei_element() -> FunctionElement:
    """``1/(1 - p)`` as a function element (pole only)."""
    return pole_element(1.0, "ei_plus")


def ei_plus(x, plan: TruncationPlan) -> EvalResult:
    """``e^{-x} Ei^+(x)`` from its dyadic expansion with ``beta = i pi``.

    The first series has terms ``-(m-1)!/(2^m (y)_m)`` and series ``k`` has
    ``(m-1)! e^{-i pi/2^k}/((1 + e^{-i pi/2^k})^m (2^k y)_m)``, where
    ``y = x/(i pi)``.  Valid on ``C \\ -i[0, inf)``, where ``arg x`` runs
    over ``(-pi/2, 3 pi/2)``.

    Raises
    ------
    PoleRayError
        For ``x`` on ``-i[0, inf)``.
    """
    return evaluate(_ei_expansion(EI_BETA, plan, "ei_plus"), x)


def ei_plus_sheet_range(beta) -> Tuple[float, float]:
    """Open interval of continuously tracked ``arg x`` covered by the
    expansion with cut ``beta (-inf, 0]``; ``arg x = 0`` is the Stokes ray."""
    b = cmath.phase(as_complex(beta))
    if b < 0.5 * math.pi - 1e-12:
        b += 2.0 * math.pi
    return b - math.pi, b + math.pi


def ei_plus_beta(x, beta, plan: TruncationPlan, arg: Optional[float] = None) -> EvalResult:
    """``e^{-x} Ei^+(x)`` from the expansion with any admissible ``beta``.

    Every ``beta`` with ``arg beta`` in ``[pi/2, 3 pi/2]`` represents the
    same function; only the cut moves.  ``arg`` (continuously tracked from
    the Stokes ray) selects the sheet and must lie in
    :func:`ei_plus_sheet_range`.

    Raises
    ------
    DomainError
        If ``arg`` is outside the sheet of this cut.
    """
    beta = as_complex(beta)
    x = as_complex(x)
    if arg is not None:
        lo, hi = ei_plus_sheet_range(beta)
        if not lo < arg < hi:
            raise DomainError(f"arg x = {arg:.6g} outside ({lo:.6g}, {hi:.6g}) covered by this cut")
    return evaluate(_ei_expansion(beta, plan, "ei_plus"), x)


def ei_left(y, plan: TruncationPlan) -> EvalResult:
    """``e^y Ei^+(-y) = -e^y E_1(y)`` from the expansion with ``beta = -1``.

    Coefficients: ``(-1)^m e/(e - 1)^m`` for the first series and
    ``e^{2^{-k}}/(e^{2^{-k}} + 1)^m`` for series ``k``.

    Raises
    ------
    DomainError
        Unless ``|arg y| < pi/2``.
    """
    y = as_complex(y)
    if y == 0 or not abs(cmath.phase(y)) < 0.5 * math.pi:
        raise DomainError("ei_left needs |arg y| < pi/2")
    return evaluate(_ei_expansion(EI_LEFT_BETA, plan, "ei_left"), -y)


def ei_remainders(x, plan: TruncationPlan, left: bool = False) -> EiRemainders:
    """Tails of the truncated ``Ei`` series, summed to convergence."""
    beta = EI_LEFT_BETA if left else EI_BETA
    xx = -as_complex(x) if left else as_complex(x)
    exp = _ei_expansion(beta, plan, "ei")
    res = evaluate(exp, xx)
    Y = xx / beta
    tails = []
    for k, count in enumerate([plan.n] + list(plan.ell)):
        d_next = complex(ei_coefficients(beta, count + 1, k)[count])
        if k == 0:
            w = cmath.exp(beta) / (cmath.exp(beta) - 1.0)
        else:
            E = cmath.exp(beta * 2.0**-k)
            w = E / (E + 1.0)
        Yk = Y * 2.0**k
        # term m = count + 1 and ratio w m/(Yk + m)
        fw = factorial_weight(Yk, count + 1)
        tails.append(_series_tail(d_next * fw, lambda j, w=w, Yk=Yk: w * j / (Yk + j), count + 1))
    return EiRemainders(tails[0], tails[1:], res.per_series_remainders[-1])


def factorial_weight(Y: complex, m: int) -> complex:
    """``(m-1)!/(Y)_m`` by the ratio recurrence."""
    r = 1.0 / Y
    for j in range(1, m):
        r *= j / (Y + j)
    return r


def ei_plus_lerch_form(x, K: int) -> complex:
    """``-Phi(-1, 1, y) + sum_{k=1}^{K} Phi(-e^{i pi/2^k}, 1, 2^k y)`` with ``y = x/(i pi)``."""
    y = as_complex(x) / EI_BETA
    acc = -lerch_phi_direct(-1.0, y)
    for k in range(1, K + 1):
        acc += lerch_phi_direct(-cmath.exp(1j * math.pi * 2.0**-k), y * 2.0**k)
    return acc


def ei_left_lerch_form(y, K: int) -> complex:
    """``-Phi(e^{-1}, 1, y) + sum_{k=1}^{K} Phi(-e^{-2^{-k}}, 1, 2^k y)``."""
    y = as_complex(y)
    acc = -lerch_phi_direct(math.exp(-1.0), y)
    for k in range(1, K + 1):
        acc += lerch_phi_direct(-math.exp(-(2.0**-k)), y * 2.0**k)
    return acc


# ---------------------------------------------------------------------------
# digamma
# ---------------------------------------------------------------------------


def _check_psi_x(x: complex) -> None:
    if x.imag == 0.0 and x.real <= 0.0:
        raise DomainError("x on the cut (-inf, 0]")


def _half_series(X: complex, count: int) -> Tuple[complex, float]:
    """``sum_{j=1}^{count} (j-1)!/(2^j (X)_j)`` and the sum of moduli."""
    acc = 0.0j
    mod = 0.0
    r = 0.5 / X
    for j in range(1, count + 1):
        acc += r
        mod += abs(r)
        r *= 0.5 * j / (X + j)
    return acc, mod


def psi_dyadic(x, k_max: int, j_max: int) -> EvalResult:
    """``Psi(x + 1) ~ ln x + sum_{k=1}^{k_max} sum_{j=1}^{j_max} (j-1)!/(2^j (2^k x + 1)_j)``.

    The bound adds the factorial-series tail of every kept ``k`` and the
    complete series for ``k > k_max``.

    Raises
    ------
    DomainError
        For ``x`` on ``(-inf, 0]``.
    """
    x = as_complex(x)
    _check_psi_x(x)
    if k_max < 0 or j_max < 0:
        raise DomainError("k_max and j_max must be nonnegative")
    value = cmath.log(x)
    mod = abs(value)
    rem = []
    for k in range(1, k_max + 1):
        X = x * 2.0**k + 1.0
        s, m = _half_series(X, j_max)
        value += s
        mod += m
        rem.append(0.5 * factorial_tail_majorant(0.5, X, j_max))
    ladder = 0.0
    last = 0.0
    for k in range(k_max + 1, k_max + 1 + _K_LADDER):
        last = 0.5 * factorial_tail_majorant(0.5, x * 2.0**k + 1.0, 0)
        ladder += last
    ladder += last
    rem.append(ladder)
    roundoff = 8.0 * np.finfo(float).eps * mod
    return EvalResult(complex(value), float(sum(rem) + roundoff), k_max * j_max, rem, {"roundoff": roundoff})


def psi_lerch_form(x, K: int) -> complex:
    """``ln x + sum_{k=1}^{K} Phi(-1, 1, 2^k x + 1)``."""
    x = as_complex(x)
    acc = cmath.log(x)
    for k in range(1, K + 1):
        acc += lerch_phi_direct(-1.0, x * 2.0**k + 1.0)
    return acc


def psi_half_difference(x, n_terms: int, alternating: bool = False) -> complex:
    """``Psi(x/2 + 1/2)/2 - Psi(x/2)/2`` as ``sum_{m=1}^{n} (m-1)!/(2^m (x)_m)``.

    Parameters
    ----------
    alternating : bool
        Use the alternating signs ``(-1)^{m-1}`` instead; this variant does
        not represent the half-difference and is kept for comparison only.
    """
    x = as_complex(x)
    _check_psi_x(x)
    acc = 0.0j
    r = 0.5 / x
    for m in range(1, n_terms + 1):
        acc += -r if alternating and m % 2 == 0 else r
        r *= 0.5 * m / (x + m)
    return acc


def psi_half_difference_integral(x) -> complex:
    """``int_0^1 t^{x-1}/(1 + t) dt`` for ``Re x > 0``."""
    x = as_complex(x)
    if x.real <= 0.0:
        raise DomainError("integral form needs Re x > 0")
    a = x.real - 1.0

    def f(t: float, part: int) -> float:
        v = cmath.exp(1j * x.imag * math.log(t)) / (1.0 + t) if t > 0 else 1.0 / (1.0 + t)
        return v.real if part == 0 else v.imag

    opts = dict(weight="alg", wvar=(a, 0.0), epsabs=1e-15, epsrel=1e-13, limit=200)
    re = integrate.quad(f, 0.0, 1.0, args=(0,), **opts)[0]
    im = integrate.quad(f, 0.0, 1.0, args=(1,), **opts)[0]
    return complex(re, im)


def psi_identity_check(x, k_max: int) -> float:
    """Residual ``|Psi(x+1) - ln x - (1/2) sum_{k=0}^{k_max} [Psi(2^k x + 1) - Psi(2^k x + 1/2)]|``
    with reference digamma values; it shrinks like ``2^{-k_max}``."""
    x = as_complex(x)
    _check_psi_x(x)
    acc = oracle.digamma(x + 1.0) - cmath.log(x)
    for k in range(0, k_max + 1):
        X = x * 2.0**k
        acc -= 0.5 * (oracle.digamma(X + 1.0) - oracle.digamma(X + 0.5))
    return abs(acc)


# ---------------------------------------------------------------------------
# Bessel and Airy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BesselNormalization:
    """Order ``nu`` and the number of integrations by parts.

    ``h(u) = int_0^inf e^{-pu} F(p) dp`` with ``F(p) = P_{nu-1/2}(1 + 2p)``
    decays like ``p^{|nu| - 1/2}``; after ``K`` integrations by parts the
    integrand ``F^{(K)}`` decays faster than ``1/p``.
    """

    nu: float
    integration_by_parts_count: int

    @classmethod
    def for_order(cls, nu: float) -> "BesselNormalization":
        nu = abs(float(nu))
        K = 0
        while nu - 0.5 - K >= -1.0:
            K += 1
        return cls(nu, K)

    @property
    def decay_exponent(self) -> float:
        return self.integration_by_parts_count + 0.5 - self.nu

    @property
    def jump_scale(self) -> float:
        """``cos(pi nu)``; the jump of ``F`` is ``-2i cos(pi nu)`` times ``F`` reflected."""
        return math.cos(math.pi * self.nu)

    def taylor(self, j: int) -> float:
        """``F^{(j)}(0) = (-1)^j ((1/2 + nu)_j (1/2 - nu)_j)/j!``."""
        return legendre(self.nu).taylor_at_zero(j)

    def pole_coefficients(self) -> List[Tuple[int, float]]:
        """Principal parts ``a_r/(1 - q)^r`` of ``F^{(K)}(-q)`` at ``q = 1``."""
        K = self.integration_by_parts_count
        cn = self.jump_scale
        out = []
        for r in range(1, K + 1):
            A = -(cn / math.pi) * (-1.0) ** (K - r) * self.taylor(K - r)
            acc = 0.0
            for i in range(r, K + 1):
                acc += math.comb(K, i) * (-1.0) ** (i - 1) * math.factorial(i - 1) / math.factorial(i - r)
            out.append((r, A * acc))
        return out


def legendre(nu: float):
    """``P_{nu-1/2}(1 + 2p)`` with derivatives on ``[0, inf)`` (ODE-based)."""
    return oracle.legendre_borel(abs(nu))


def _decay_constant(F, K: int, alpha: float, scale: float) -> float:
    ps = np.geomspace(1e2, 1e14, 40)
    vals = np.abs(F.derivatives(ps, K)[K]) * ps**alpha
    return 1.5 * abs(scale) * float(vals.max())


@lru_cache(maxsize=16)
def bessel_k_element(nu: float) -> FunctionElement:
    """Function element of ``q -> F^{(K)}(-q)`` with its singularity at ``q = 1``.

    The cut is ``[1, inf)`` (``theta = 0``); it pairs with ``beta = -1``.
    On the cut the coefficient density is
    ``cos(pi nu) (-1)^K F^{(K)}(t)/pi`` and ``K`` pole terms come from the
    logarithmic singularity differentiated ``K`` times.

    Raises
    ------
    DomainError
        For ``|nu| >= 2``.
    """
    if not abs(nu) < 2.0:
        raise DomainError(f"unsupported Bessel order |nu| = {abs(nu)} >= 2")
    norm = BesselNormalization.for_order(nu)
    K = norm.integration_by_parts_count
    cn = norm.jump_scale
    F = legendre(norm.nu)
    name = f"bessel_nu={norm.nu:.6g}"
    if abs(cn) < 1e-15:
        elem = FunctionElement(0.0, None, norm.decay_exponent, 0.0, name=name)
    else:
        sign = (-1.0) ** K

        def jump(t, F=F):
            return 2j * cn * sign * F.derivatives(np.asarray(t, dtype=float), K)[K]

        def direct(q, F=F):
            q = complex(q)
            if q.imag != 0.0 or q.real > 0.0:
                raise DomainError("direct evaluation only on q <= 0")
            return float(F.derivatives(-q.real, K)[K, 0])

        elem = FunctionElement(
            0.0,
            jump,
            norm.decay_exponent,
            _decay_constant(F, K, norm.decay_exponent, cn),
            direct_eval=direct,
            pole_terms=[PoleTerm(r, a) for r, a in norm.pole_coefficients()],
            vectorized=True,
            name=name,
        )
    elem.normalization = norm
    return elem


@lru_cache(maxsize=64)
def _bessel_expansion(nu: float, plan: TruncationPlan) -> DyadicExpansion:
    return build_expansion(bessel_k_element(nu), -1.0, plan)


def bessel_h(nu: float, u, plan: TruncationPlan) -> EvalResult:
    """Normalized Bessel function ``h(u) = K_nu(u/2) e^{u/2}/sqrt(pi u)``.

    ``h(u) = sum_{j<K} F^{(j)}(0)/u^{j+1} - u^{-K} f(-u)``, where ``f`` is
    the dyadic expansion of the element of :func:`bessel_k_element` with
    ``beta = -1``.

    Raises
    ------
    PoleRayError
        For ``u`` on ``(-inf, 0]``.
    """
    u = as_complex(u)
    exp = _bessel_expansion(abs(float(nu)), plan)
    res = evaluate(exp, -u)
    norm = BesselNormalization.for_order(nu)
    K = norm.integration_by_parts_count
    head = sum(norm.taylor(j) / u ** (j + 1) for j in range(K))
    scale = abs(u) ** -K
    value = head - res.value / u**K
    rnd = 8.0 * np.finfo(float).eps * abs(head)
    diag = dict(res.diagnostics, head=abs(head))
    return EvalResult(
        complex(value),
        res.certified_bound * scale + rnd,
        res.terms_used,
        [r * scale for r in res.per_series_remainders],
        diag,
    )


def airy_element() -> FunctionElement:
    """:func:`bessel_k_element` at ``nu = 1/3``."""
    return bessel_k_element(1.0 / 3.0)


def airy_h(u, plan: TruncationPlan) -> EvalResult:
    """Normalized Airy function ``h(u)``; ``Ai(x) = (2/(3 sqrt(pi))) f(x)``
    with ``f(x) = x^{5/4} e^{-2x^{3/2}/3} h(4 x^{3/2}/3)``."""
    return bessel_h(1.0 / 3.0, u, plan)


def airy_from_h(x: float, h_value: complex) -> complex:
    """``x^{5/4} e^{-(2/3) x^{3/2}} h`` (proportional to ``Ai(x)``)."""
    return x**1.25 * math.exp(-2.0 / 3.0 * x**1.5) * h_value


def airy_u(x: float) -> float:
    """``u = 4 x^{3/2}/3`` for real ``x > 0``."""
    return 4.0 * x**1.5 / 3.0


def airy_coefficient_direct(m: int) -> float:
    """``int_0^inf F'(t) e^{1+t}/(e^{1+t} - 1)^m dt`` by adaptive quadrature."""
    if m < 1:
        raise DomainError("m must be at least 1")
    F = legendre(1.0 / 3.0)

    def f(t: float) -> float:
        E = math.exp(-(1.0 + t))
        # e^{1+t}/(e^{1+t}-1)^m = E^{m-1}/(1 - E)^m
        return float(F.derivatives(t, 1)[1, 0]) * E ** (m - 1) / (1.0 - E) ** m

    total = 0.0
    edges = [0.0, 1.0, 5.0, 20.0, 60.0]
    for a, b in zip(edges[:-1], edges[1:]):
        total += integrate.quad(f, a, b, epsabs=1e-15, epsrel=1e-12, limit=400)[0]
    # beyond t = 60 the kernel is 1 + O(e^{-61}) for m = 1 and O(e^{-61}) otherwise,
    # and int_T^inf F' dt = -F(T) since F vanishes at infinity
    if m == 1:
        total -= float(F(edges[-1])[0])
    return total


def airy_coefficient_xdomain_check(m: int, j_max: int) -> complex:
    """``e^{1-m} sum_{j=0}^{j_max} e^{-j} C(m+j-1, j) [(m+j-1) h(m+j-1) - 1]``.

    ``h`` is the reference Laplace integral; at ``m + j - 1 = 0`` the
    product ``u h(u)`` is replaced by its limit 0.  The result equals
    :func:`airy_coefficient_direct` in the limit ``j_max -> inf``.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    acc = 0.0j
    for j in range(j_max + 1):
        n = m + j - 1
        uh = 0.0 if n == 0 else n * oracle.airy_h_oracle(float(n))
        acc += math.exp(-j) * math.comb(m + j - 1, j) * (uh - 1.0)
    return math.exp(1 - m) * acc


# ---------------------------------------------------------------------------
# incomplete gamma and erfc
# ---------------------------------------------------------------------------

_FFT_POINTS = 128


def polylog_factorial_coefficients(s_exp: float, z0: complex, count: int) -> np.ndarray:
    """``c_j = (-1)^j d^j/dt^j Li_s(z0 t)`` at ``t = 1``, ``j < count``.

    Computed as ``j!`` times the Taylor coefficients of ``Li_s(z0 (1 - u))``
    by a Cauchy integral on ``|u| = 1`` (trapezoid rule with 128 nodes).
    The nearest singularity sits at ``|u| = |1 - 1/z0| >= e - 1``, so the
    aliasing error is below ``1.72^{-128}``.
    """
    if count > _FFT_POINTS // 2:
        raise DomainError(f"at most {_FFT_POINTS // 2} coefficients")
    u = np.exp(2j * math.pi * np.arange(_FFT_POINTS) / _FFT_POINTS)
    g = np.array([polylog(s_exp, z0 * (1.0 - v)) for v in u])
    a = np.fft.fft(g) / _FFT_POINTS
    fact = np.array([math.factorial(j) for j in range(count)], dtype=float)
    return a[:count] * fact


def polylog_factorial_coefficients_stirling(s_exp: float, z0: complex, count: int) -> np.ndarray:
    """The same coefficients from ``sum_i s(j, i) Li_{s-i}(z0)``.

    Cancellation between the Stirling terms limits this to small ``j``.
    """
    return np.array([(-1.0) ** j * z0**j * polylog_derivative(s_exp, z0, j) for j in range(count)])


@lru_cache(maxsize=512)
def _ig_coefficients(s_exp: float, k: int, count: int) -> np.ndarray:
    c = 2.0**-k
    z0 = math.exp(-c) if k == 0 else -math.exp(-c)
    return polylog_factorial_coefficients(s_exp, z0, count)


def _zeta(s: float) -> float:
    from scipy.special import zeta

    if s > 1.0:
        return float(zeta(s))
    # functional equation for s < 1 (s not an even negative integer)
    return float(
        2.0**s * math.pi ** (s - 1.0) * math.sin(0.5 * math.pi * s) * math.gamma(1.0 - s) * zeta(1.0 - s)
    )


def incomplete_gamma_dyadic(s_exp: float, x, depth: int, k_max: int = 40) -> EvalResult:
    """``Gamma(1 - s) e^x x^{-s} Gamma(s, x)`` as a sum of factorial series.

    Series ``k`` is the Laplace transform of ``Li_s(+-e^{-2^{-k}(p + 1)})``:
    ``2^k sum_{j<depth} c_j/(2^k x)_{j+1}`` with :func:`polylog_factorial_coefficients`.
    Series ``k >= 1`` enter with weight ``-2^{-k(1-s)}``.  The series
    beyond ``k_max`` sum to ``2^{-k_max(1-s)} [zeta(s)/x - 2^{-k_max} zeta(s-1)(1/x + 1/x^2) + ...]``;
    the two displayed terms are subtracted and the next one is reported.

    Returns
    -------
    EvalResult
        ``certified_bound`` is an error estimate: geometric extrapolation
        of the last factorial terms plus the first omitted ladder term.

    Raises
    ------
    DomainError
        Unless ``s < 1`` non-integer and ``Re x > 0``.
    """
    x = as_complex(x)
    s = float(s_exp)
    if not s < 1.0 or s == round(s):
        raise DomainError("need s < 1 and s not an integer")
    if not x.real > 0.0:
        raise DomainError("need Re x > 0")
    if depth < 1 or k_max < 0:
        raise DomainError("depth must be positive and k_max nonnegative")
    value = 0.0j
    remainders = []
    mod = 0.0
    for k in range(0, k_max + 1):
        c = 2.0**-k
        X = x / c
        coef = _ig_coefficients(s, k, depth)
        terms = np.empty(depth, dtype=complex)
        r = 1.0 / X
        for j in range(depth):
            terms[j] = coef[j] * r
            r /= X + j + 1
        weight = 1.0 if k == 0 else -(c ** (1.0 - s))
        value += weight / c * terms.sum()
        mod += abs(weight / c) * float(np.abs(terms).sum())
        last = abs(terms[-1])
        prev = abs(terms[-2]) if depth > 1 else 2.0 * last
        q = min(last / prev, 0.9) if prev > 0 else 0.5
        remainders.append(abs(weight / c) * last * q / (1.0 - q))
    t = 2.0 ** (-k_max * (1.0 - s))
    mu = 2.0**-k_max
    value -= t * (_zeta(s) / x - mu * _zeta(s - 1.0) * (1.0 / x + 1.0 / x**2))
    z2 = _zeta(s - 2.0)
    nxt = t * mu * mu * 0.5 * abs(z2) * abs(1.0 / x + 2.0 / x**2 + 2.0 / x**3)
    remainders.append(nxt)
    rnd = 8.0 * np.finfo(float).eps * mod
    return EvalResult(
        complex(value), float(sum(remainders) + rnd), depth * (k_max + 1), remainders, {"roundoff": rnd}
    )


def erfc_dyadic(z, depth: int, k_max: int = 40) -> EvalResult:
    """``erfc(z)`` for ``|arg z| < pi/4`` from the ``s = 1/2`` expansion:
    ``pi e^{X} X^{-1/2} erfc(sqrt X)`` with ``X = z^2``."""
    z = as_complex(z)
    X = z * z
    res = incomplete_gamma_dyadic(0.5, X, depth, k_max)
    scale = z * cmath.exp(-X) / math.pi
    return EvalResult(
        res.value * scale,
        res.certified_bound * abs(scale),
        res.terms_used,
        [r * abs(scale) for r in res.per_series_remainders],
        res.diagnostics,
    )
