"""Lerch transcendent Phi(z, 1, x) and polylogarithms.

The central object is the factorial series

    Phi(z/(z-1), 1, x) = (1 - z) * sum_j z**j * j! / (x)_{j+1},   |z| < 1,

which converges geometrically for every ``x`` off the nonpositive integers.
The module also carries a reference evaluator of Phi by direct summation or
by its Laplace integral, Li_s in several regimes, and a cheap majorant of
factorial-series tails that the expansion engine uses for certified bounds.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.special import zeta as _riemann_zeta

from .numerics import (
    ConvergenceError,
    DomainError,
    PoleError,
    as_complex,
    expm1,
    is_nonpositive_integer,
    log_abs_pochhammer_ratio,
    log_gamma,
    pochhammer_ratio,
    stirling_first_kind,
)

#: Largest derivative order for which Stirling numbers are tabulated.
MAX_DERIVATIVE_ORDER = 30
_STIRLING = stirling_first_kind(MAX_DERIVATIVE_ORDER)

_DIRECT_PHI_RADIUS = 0.9
_POLYLOG_SERIES_RADIUS = 0.75
_POLYLOG_LOG_RADIUS = 3.8


class RemainderRegime(str, enum.Enum):
    LARGE_N_ASYMPTOTIC = "large_n_asymptotic"
    INTEGRAL_EXACT = "integral_exact"
    LEADING_ASYMPTOTIC = "leading_asymptotic"


@dataclass(frozen=True)
class LerchSeriesState:
    """Parameters of one factorial series and its contraction data.

    Attributes
    ----------
    z : complex
        Transformed variable, ``|z| <= lam < 1``.
    x : complex
        Shift, not a nonpositive integer.
    lam : float
        Majorant of ``|z|``.
    M : int
        Index floor after which the tail recurrence contracts.
    """

    z: complex
    x: complex
    lam: float
    M: int

    def __post_init__(self):
        if not abs(self.z) <= self.lam < 1.0:
            raise DomainError("need |z| <= lambda < 1")
        if is_nonpositive_integer(self.x):
            raise PoleError(f"x = {self.x} is a nonpositive integer")
        if self.M < 1:
            raise DomainError("index floor must be at least 1")


@dataclass(frozen=True)
class LerchRemainder:
    """Tail estimate of a truncated factorial series."""

    value_estimate: complex
    regime: RemainderRegime


def _check_z(z: complex) -> None:
    if abs(z) >= 1.0:
        raise DomainError(f"|z| = {abs(z)} must be below 1")


def _check_x(x: complex) -> None:
    if is_nonpositive_integer(x):
        raise PoleError(f"x = {x} is a nonpositive integer")


def lerch_factorial_terms(z: complex, x: complex, n: int) -> np.ndarray:
    """Terms ``(1 - z) z**j j!/(x)_{j+1}`` for ``j = 0..n``, built by the
    ratio recurrence so that no factorial is formed explicitly."""
    out = np.empty(n + 1, dtype=complex)
    t = (1.0 - z) / x
    out[0] = t
    for j in range(1, n + 1):
        t *= z * j / (x + j)
        out[j] = t
    return out


def lerch_phi_factorial(z, x, n: int, exact_remainder: bool = False):
    """Truncated factorial series for ``Phi(z/(z-1), 1, x)``.

    Parameters
    ----------
    z : complex
        ``|z| < 1``.
    x : complex
        Not a nonpositive integer.
    n : int
        Last retained index.
    exact_remainder : bool
        Force the integral representation of the tail.

    Returns
    -------
    value : complex
        ``(1 - z) sum_{j<=n} z**j j!/(x)_{j+1}``.
    remainder : LerchRemainder
        Estimate of the discarded tail.
    """
    z = as_complex(z)
    x = as_complex(x)
    _check_z(z)
    _check_x(x)
    if n < 0:
        raise DomainError("n must be nonnegative")
    value = complex(np.sum(lerch_factorial_terms(z, x, n)))
    return value, lerch_tail_estimate(z, x, n, exact=exact_remainder)


def lerch_tail_estimate(z: complex, x: complex, n: int, exact: bool = False) -> LerchRemainder:
    """Pick a regime and estimate the tail beyond index ``n``.

    Before the index floor (``x`` deep in the left half plane) the tail is
    computed from its integral representation.  Well past the floor and for
    ``n`` large against ``|x|`` the power-law asymptotic is used; in between
    the leading term of the contracting recurrence.
    """
    if z == 0:
        return LerchRemainder(0.0j, RemainderRegime.LEADING_ASYMPTOTIC)
    lam = max(0.5, 0.5 * (1.0 + abs(z)))
    try:
        M = lerch_index_floor(z, x, lam)
    except DomainError:
        M = math.inf
    if exact or n < M or x.real <= 0 and n < 4.0 * abs(x):
        if x.imag == 0.0 and x.real <= 0.0:
            # tail sum directly: nothing else is defined on the negative axis
            return LerchRemainder(_explicit_tail(z, x, n), RemainderRegime.INTEGRAL_EXACT)
        return LerchRemainder(lerch_remainder_integral(z, x, n), RemainderRegime.INTEGRAL_EXACT)
    if n >= 10.0 * abs(x) + 20:
        est = z ** (n + 1) * cmath.exp(log_gamma(x) - x * math.log(n + 1))
        return LerchRemainder(est, RemainderRegime.LARGE_N_ASYMPTOTIC)
    est = z ** (n + 1) * pochhammer_ratio(n, x)
    return LerchRemainder(est, RemainderRegime.LEADING_ASYMPTOTIC)


def _explicit_tail(z: complex, x: complex, n: int, max_terms: int = 100000) -> complex:
    t = (1.0 - z) * z ** (n + 1) * pochhammer_ratio(n + 1, x)
    acc = 0.0j
    j = n + 1
    for _ in range(max_terms):
        acc += t
        t *= z * (j + 1) / (x + j + 1)
        j += 1
        if abs(t) < 1e-18 * max(abs(acc), 1e-300):
            return acc
    raise ConvergenceError("explicit tail did not settle", abs(t))


def lerch_index_floor(z, x, lam: Optional[float] = None) -> int:
    """Smallest index after which the tail recurrence is a contraction.

    With ``x = |x| e^{i alpha}`` and ``r = |z|/lam``, when ``cos alpha < 0``
    and ``cos^2 alpha - 1 + r^2 >= 0`` the floor is the first integer above
    ``|x| / (-cos alpha - sqrt(cos^2 alpha - 1 + r^2))``; otherwise it is 1.

    Raises
    ------
    DomainError
        If ``|z| > lam`` or ``lam >= 1``, or if ``lam == |z|`` leaves no
        finite floor (the denominator above vanishes).
    """
    z = as_complex(z)
    x = as_complex(x)
    if lam is None:
        lam = max(abs(z), 0.5)
    if not abs(z) <= lam < 1.0:
        raise DomainError("need |z| <= lambda < 1")
    if x == 0:
        raise PoleError("x = 0")
    cos_a = x.real / abs(x)
    disc = cos_a * cos_a - 1.0 + (abs(z) / lam) ** 2
    if disc >= 0.0 and cos_a < 0.0:
        den = -cos_a - math.sqrt(disc)
        if den <= 0.0:
            raise DomainError("no finite index floor for lambda = |z|; take lambda > |z|")
        return max(1, int(math.floor(abs(x) / den)) + 1)
    return 1


def lerch_un_bound(z, x, n: int, lam: float, M: int) -> float:
    """Bound on ``|u_n|`` in ``rho_{n+1} = z^n n!/(x)_{n+1} (z - u_n)``.

    Valid for ``n >= M``; the supremum over ``m > M`` of
    ``(m - 1)/|x + m|`` is taken in closed form.
    """
    z = as_complex(z)
    x = as_complex(x)
    if n < M:
        raise DomainError("bound holds only past the index floor")
    # (m-1)/|x+m| is unimodal in m; check the endpoints and the turning point
    a, b = x.real, x.imag
    candidates = [M + 1]
    # derivative of ((m-1)/|x+m|)^2 vanishes where m = (|x|^2 + a)/(a + 1)
    if a + 1.0 != 0.0:
        m_star = (a * a + b * b + a) / (a + 1.0)
        if m_star > M + 1:
            candidates += [math.floor(m_star), math.ceil(m_star)]
    sup = max((m - 1.0) / abs(x + m) for m in candidates)
    sup = max(sup, 1.0)  # limit as m -> infinity
    return abs(x * z) * sup / (n * (1.0 - lam))


def lerch_remainder_integral(z, x, n: int) -> complex:
    """Tail ``(1 - z) sum_{k>n} z**k k!/(x)_{k+1}`` from its Laplace integral.

    The integral runs along ``[0, inf)`` when ``Re x > 0``.  Otherwise it
    runs to a point ``p_z`` beyond every pole of the integrand and then
    along a ray tilted so that ``Re(x e^{i phi}) > 0``.

    Raises
    ------
    DomainError
        For ``x`` on ``(-inf, 0]``, where no admissible ray exists.
    """
    z = as_complex(z)
    x = as_complex(x)
    _check_z(z)
    if x.imag == 0.0 and x.real <= 0.0:
        raise DomainError("x on the cut (-inf, 0]: no admissible contour")
    if z == 0:
        return 0.0j
    pref = z ** (n + 1) * (n + 1) * pochhammer_ratio(n, x) * (1.0 - z)
    if pref == 0:
        return 0.0j
    shift = x + n + 1
    log_pref = cmath.log(pref)

    def integrand(p: complex) -> complex:
        den = 1.0 - z + z * cmath.exp(-p)
        return cmath.exp(log_pref - p * shift - (n + 2) * cmath.log(den))

    if x.real > 0.0:
        return _ray_integral(integrand, 0.0j, 1.0 + 0.0j, shift)
    pz = 0.0
    if abs(z) > 0.5:
        pz = -math.log(1.0 / abs(z) - 1.0)
    pz = max(pz, 0.0) + 1.0
    phi = -0.5 * cmath.phase(x)
    direction = cmath.exp(1j * phi)
    seg = _segment_integral(integrand, 0.0j, complex(pz, 0.0))
    return seg + _ray_integral(integrand, complex(pz, 0.0), direction, shift)


def _complex_quad(f, a: float, b: float, **kw) -> complex:
    opts = dict(limit=400, epsabs=1e-15, epsrel=1e-13)
    opts.update(kw)
    with warnings.catch_warnings():
        # the default tolerances sit at the roundoff floor on purpose
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re = integrate.quad(lambda t: f(t).real, a, b, **opts)[0]
        im = integrate.quad(lambda t: f(t).imag, a, b, **opts)[0]
    return complex(re, im)


def _segment_integral(f, start: complex, end: complex) -> complex:
    d = end - start
    return d * _complex_quad(lambda t: f(start + d * t), 0.0, 1.0)


def _ray_integral(f, start: complex, direction: complex, rate: complex) -> complex:
    """Integrate ``f`` on ``start + direction * [0, inf)``.

    ``rate`` is the exponential decay coefficient: ``|f|`` falls like
    ``exp(-Re(rate * direction) t)``.  The range is cut where that factor
    drops below ``1e-19`` and split into panels of a few decay lengths.
    """
    decay = (rate * direction).real
    if decay <= 0:
        raise DomainError("integrand does not decay along the chosen ray")
    T = 44.0 / decay
    edges = np.linspace(0.0, T, 9)
    acc = 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        acc += _complex_quad(lambda t: f(start + direction * t), a, b)
    return direction * acc


def lerch_phi_direct(zeta, x) -> complex:
    """Reference value of ``Phi(zeta, 1, x) = sum_n zeta**n/(x + n)``.

    For ``|zeta| <= 0.9`` the series is summed directly with a geometric
    tail check.  Otherwise the Laplace integral
    ``int_0^inf e^{-xp}/(1 - zeta e^{-p}) dp`` is used, which needs
    ``Re x > 0``.

    Raises
    ------
    DomainError
        For ``zeta`` on ``[1, inf)`` or an unsupported region.
    PoleError
        At nonpositive integer ``x``.
    """
    zeta = as_complex(zeta)
    x = as_complex(x)
    _check_x(x)
    if zeta.imag == 0.0 and zeta.real >= 1.0:
        raise DomainError("zeta on the cut [1, inf)")
    if abs(zeta) <= _DIRECT_PHI_RADIUS:
        return _phi_series(zeta, x)
    if x.real <= 0.0:
        raise DomainError("|zeta| > 0.9 needs Re x > 0 (integral representation)")
    return lerch_phi_integral(zeta, x)


def _phi_series(zeta: complex, x: complex) -> complex:
    acc = 0.0j
    power = 1.0 + 0.0j
    r = abs(zeta)
    for k in range(20000):
        term = power / (x + k)
        acc += term
        power *= zeta
        # remaining terms are bounded by |zeta|^k / min|x+j| times 1/(1-r)
        if k > abs(x) and abs(power) / ((k + 1 - abs(x)) * (1.0 - r)) < 1e-17 * max(abs(acc), 1e-300):
            return acc
        if power == 0:
            return acc
    raise ConvergenceError("direct Lerch series did not settle", abs(power))


def lerch_phi_integral(zeta, x) -> complex:
    """``Phi(zeta, 1, x)`` by quadrature of its Laplace integral (``Re x > 0``)."""
    zeta = as_complex(zeta)
    x = as_complex(x)
    if x.real <= 0.0:
        raise DomainError("integral representation needs Re x > 0")
    if zeta.imag == 0.0 and zeta.real >= 1.0:
        raise DomainError("zeta on the cut [1, inf)")

    # p = u/Re x keeps the integrand of order one for any size of x
    scale = 1.0 / x.real

    def f(u: float) -> complex:
        p = u * scale
        return cmath.exp(-x * p) / -_zeta_exp_minus_one(zeta, p)

    T = 44.0
    # resolve the near-singular bump at p = 0 when zeta is close to 1
    edges = np.concatenate(([0.0], np.geomspace(min(1e-4, 1e-4 / scale), T, 40)))
    osc = abs(x.imag) * scale * T / (2.0 * math.pi)
    if osc > 40:
        edges = np.union1d(edges, np.linspace(0.0, T, int(osc) + 2))
    acc = 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        acc += _complex_quad(f, a, b)
    return acc * scale


def _zeta_exp_minus_one(zeta: complex, p: float) -> complex:
    """``zeta e^{-p} - 1`` without cancellation for small ``p``."""
    return zeta * expm1(-p) + (zeta - 1.0)


def lerch_phi_accelerated(zeta, x, max_terms: int = 400, tol: float = 1e-12) -> complex:
    """Partial sums of ``sum zeta**n/(x + n)`` under iterated Aitken steps.

    Meant for unit-modulus ``zeta != 1``, where the plain series converges
    slowly or only in the Abel sense.  Iteration stops when successive
    extrapolants stagnate below ``tol``.
    """
    zeta = as_complex(zeta)
    x = as_complex(x)
    _check_x(x)
    sums = []
    acc = 0.0j
    power = 1.0 + 0.0j
    for k in range(max_terms):
        acc += power / (x + k)
        power *= zeta
        sums.append(acc)
    best = sums[-1]
    prev = None
    seq = sums
    while len(seq) >= 3:
        nxt = []
        for a, b, c in zip(seq[:-2], seq[1:-1], seq[2:]):
            den = c - 2.0 * b + a
            nxt.append(c if den == 0 else c - (c - b) ** 2 / den)
        seq = nxt
        cur = seq[-1]
        if prev is not None and abs(cur - prev) < tol * max(abs(cur), 1.0):
            return cur
        prev = cur
        best = cur
    return best


def _polylog_series(s: complex, z: complex) -> complex:
    acc = 0.0j
    power = z
    r = abs(z)
    for k in range(1, 200000):
        term = power * cmath.exp(-s * math.log(k))
        acc += term
        power *= z
        if k > 8 and abs(term) * r / (1.0 - r) < 1e-17 * max(abs(acc), 1e-300):
            return acc
    raise ConvergenceError("polylog series did not settle", abs(term))


def _polylog_log_series(s: float, z: complex) -> complex:
    # Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!, |mu| < 2 pi
    mu = cmath.log(z)
    acc = cmath.exp(log_gamma(1.0 - s) + (s - 1.0) * cmath.log(-mu))
    power = 1.0 + 0.0j
    inv_fact = 1.0
    for k in range(0, 200):
        term = float(_riemann_zeta(s - k)) * power * inv_fact
        acc += term
        if k > 4 and abs(term) < 1e-17 * max(abs(acc), 1e-300):
            return acc
        power *= mu
        inv_fact /= k + 1
    raise ConvergenceError("log-series of the polylog did not settle", abs(term))


def _polylog_integral(s: complex, z: complex) -> complex:
    # Li_s(z) = z/Gamma(s) int_0^inf x^(s-1)/(e^x - z) dx, Re s > 0
    a = s.real - 1.0
    b = s.imag

    def smooth(t: float) -> complex:
        tw = cmath.exp(1j * b * math.log(t)) if b != 0.0 and t > 0 else 1.0
        return tw / (math.exp(t) - z)

    opts = dict(limit=400, epsabs=1e-16, epsrel=1e-13)
    re = integrate.quad(lambda t: smooth(t).real, 0.0, 1.0, weight="alg", wvar=(a, 0.0), **opts)[0]
    im = integrate.quad(lambda t: smooth(t).imag, 0.0, 1.0, weight="alg", wvar=(a, 0.0), **opts)[0]
    head = complex(re, im)

    def full(t: float) -> complex:
        return cmath.exp((s - 1.0) * math.log(t)) / (math.exp(t) - z)

    tail = 0.0j
    for lo, hi in ((1.0, 8.0), (8.0, 40.0), (40.0, 120.0)):
        tail += _complex_quad(full, lo, hi)
    return z * cmath.exp(-log_gamma(s)) * (head + tail)


def _polylog_negative_integer(n: int, z: complex) -> complex:
    # Li_{-n}(z) = sum_{k=0}^{n} k! S2(n+1, k+1) (z/(1-z))^{k+1}
    w = z / (1.0 - z)
    s2 = [[0] * (n + 2) for _ in range(n + 2)]
    s2[0][0] = 1
    for i in range(1, n + 2):
        for j in range(1, i + 1):
            s2[i][j] = j * s2[i - 1][j] + s2[i - 1][j - 1]
    return sum(math.factorial(k) * s2[n + 1][k + 1] * w ** (k + 1) for k in range(n + 1))


def polylog(s_param, z) -> complex:
    """Polylogarithm ``Li_s(z) = sum_{k>=1} z**k / k**s``.

    Evaluation route:

    * ``|z| <= 0.75``: the defining series;
    * real non-integer ``s`` with ``|log z| < 3.8``: expansion in powers of
      ``log z`` with Riemann zeta coefficients;
    * integer ``s <= 1``: closed rational/logarithmic forms;
    * ``Re s > 0`` and ``z`` off ``[1, inf)``: the Bose-type integral;
    * any other ``|z| < 1``: the defining series.

    Raises
    ------
    DomainError
        Outside all of the above.
    """
    s = as_complex(s_param)
    z = as_complex(z)
    if z == 0:
        return 0.0j
    if abs(z) <= _POLYLOG_SERIES_RADIUS:
        return _polylog_series(s, z)
    s_int = s.imag == 0.0 and s.real == round(s.real)
    if s_int and s.real <= 1.0:
        if z == 1:
            raise PoleError("Li_s(1) diverges for s <= 1")
        n = int(round(s.real))
        if n == 1:
            return -cmath.log(1.0 - z)
        return _polylog_negative_integer(-n, z)
    on_cut = z.imag == 0.0 and z.real >= 1.0
    if s.imag == 0.0 and not s_int and not on_cut and abs(cmath.log(z)) < _POLYLOG_LOG_RADIUS:
        return _polylog_log_series(s.real, z)
    if s.real > 0.0 and not on_cut:
        return _polylog_integral(s, z)
    if abs(z) < 1.0:
        return _polylog_series(s, z)
    raise DomainError(f"Li_s(z) not supported at s = {s}, z = {z}")


def polylog_integral(s_param, z) -> complex:
    """``Li_s(z)`` by quadrature only (``Re s > 0``, ``z`` off ``[1, inf)``)."""
    s = as_complex(s_param)
    z = as_complex(z)
    if s.real <= 0.0:
        raise DomainError("integral form needs Re s > 0")
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError("z on the cut [1, inf)")
    return _polylog_integral(s, z)


def polylog_derivative(s_param, z, k: int) -> complex:
    """``k``-th derivative of ``Li_s`` in ``z``.

    Uses ``d^k/dz^k Li_s(z) = z^{-k} sum_j s(k, j) Li_{s-j}(z)`` with
    signed Stirling numbers of the first kind.

    Raises
    ------
    DomainError
        For ``k`` beyond the Stirling table, ``z = 0`` or ``|z| >= 1``.
    """
    s = as_complex(s_param)
    z = as_complex(z)
    if k < 0 or k > MAX_DERIVATIVE_ORDER:
        raise DomainError(f"derivative order {k} exceeds table size {MAX_DERIVATIVE_ORDER}")
    if z == 0:
        raise DomainError("z = 0 excluded")
    if abs(z) >= 1.0:
        raise DomainError("|z| < 1 required")
    if k == 0:
        return polylog(s, z)
    acc = 0.0j
    for j in range(k + 1):
        c = _STIRLING(k, j)
        if c:
            acc += c * polylog(s - j, z)
    return acc / z**k


def factorial_tail_majorant(w: float, Y, n: int) -> float:
    """Upper bound for ``sum_{j>=n} w**j j! / |(Y)_{j+1}|``.

    Parameters
    ----------
    w : float
        Geometric weight, ``0 <= w < 1``.
    Y : complex
        Pochhammer shift, not a nonpositive integer.
    n : int
        First index of the tail.

    Returns
    -------
    float
        A rigorous majorant computed in O(1).  Consecutive terms have ratio
        ``w u/|Y + u|`` with ``u = j + 1``; once that ratio is below
        ``(1 + w)/2`` the tail is geometric, and the finite stretch before
        that point is bounded by its length times its largest term.
    """
    Y = as_complex(Y)
    if not 0.0 <= w < 1.0:
        raise DomainError("weight must lie in [0, 1)")
    _check_x(Y)
    if w == 0.0:
        return math.exp(log_abs_pochhammer_ratio(0, Y)) if n == 0 else 0.0

    lw = math.log(w)

    def log_term(j: int) -> float:
        return j * lw + log_abs_pochhammer_ratio(j, Y)

    a, b = Y.real, Y.imag
    abs2 = a * a + b * b
    if a >= 0.0:
        return math.exp(log_term(n)) / (1.0 - w)
    # f(u) = u/|Y+u| peaks at u* = |Y|^2/(-a)
    u_star = abs2 / (-a)
    if b != 0.0:
        sup = (abs2 ** 0.5) / abs(b) if n + 1 <= u_star else (n + 1) / abs(Y + n + 1)
        q = w * sup
        if q < 1.0:
            return math.exp(log_term(n)) / (1.0 - q)
    rho = 0.5 * (1.0 + w)
    A = rho * rho - w * w
    disc = rho**4 * a * a - A * rho * rho * abs2
    disc = max(disc, 0.0)
    u_c = (-rho * rho * a + math.sqrt(disc)) / A
    J = max(n, int(math.ceil(u_c)) - 1)
    tail = math.exp(log_term(J)) / (1.0 - rho)
    if J == n:
        return tail
    # terms rise while w f(u) > 1; the largest sits at the last rise
    candidates = {n, J}
    A1 = 1.0 - w * w
    disc1 = a * a - A1 * abs2
    if disc1 >= 0.0:
        u1 = (-a + math.sqrt(disc1)) / A1
        for u in (math.floor(u1), math.ceil(u1), math.ceil(u1) + 1):
            j = int(u) - 1
            if n <= j <= J:
                candidates.add(j)
    if b == 0.0:
        # terms also jump where Y + j + 1 passes near zero
        j0 = int(round(-a)) - 1
        for j in (j0 - 1, j0, j0 + 1):
            if n <= j <= J:
                candidates.add(j)
    peak = max(log_term(j) for j in candidates)
    return (J - n) * math.exp(peak) + tail
