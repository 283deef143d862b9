"""Dyadic expansions of Laplace transforms of function elements.

A function element ``F`` is analytic off a single cut ``1 + t e^{i theta}``
(``t >= 0``) and decays like ``|p|^{-alpha}``.  Its Laplace transform along
``e^{-ib}[0, inf)`` expands as

    f(x) = sum_m d_{m,0} (m-1)!/(x/beta)_m
           + sum_{k>=1} sum_m d_{m,k} (m-1)!/(2^k x/beta)_m,

with ``b = arg beta`` and coefficients given by integrals of the branch jump
against the kernels ``E^{m-1}/(E - 1)^m`` (``k = 0``) and
``E_k^{m-1}/(E_k + 1)^m``, where ``E_k = exp(beta s/2^k)`` and
``s = 1 + t e^{i theta}``.  On the cut ``beta s = beta - |beta| t``, so the
kernels are smooth and decay in ``t`` once ``m >= 2``.

Poles at ``p = 1`` are accepted alongside the jump as explicit principal
parts ``a_j/(1 - p)^j``.

The certified bound comes from the exact representation of every remainder
as a weighted integral of factorial-series tails.  The weight ``|omega|`` is
stored as a discrete measure (quadrature nodes plus point masses), which is
all ``evaluate`` and ``plan_truncation`` need.
"""

from __future__ import annotations

import cmath
import json
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .lerch import factorial_tail_majorant
from .numerics import ConvergenceError, DomainError, DyadikError, PoleError, as_complex

SERIALIZATION_VERSION = 1

#: Relative distance to the pole ray below which ``evaluate`` refuses.
POLE_RAY_RTOL = 1e-9

_NEAR_LEVELS = 60
_FAR_STEP = 0.5
_FAR_MAX_LOG = 300.0
_TAIL_TARGET = 1e-18
_R_N_TERMS = 60
_CIRCLE_POINTS = 16
_CIRCLE_RADIUS = 0.25
_COEF_ABS_TOL = 1e-12
_COEF_REL_TOL = 1e-10


class InvalidBetaError(DomainError):
    """``beta`` violates the sector, size or ``c_beta`` condition."""


class PoleRayError(PoleError):
    """``x`` lies on the ray ``beta (-inf, 0]`` where the series has poles."""


class InfeasibleTargetError(DyadikError):
    """The requested accuracy cannot be reached with the available terms."""


class ContourOverlapError(DomainError):
    """The strips around two singularities intersect."""


# ---------------------------------------------------------------------------
# beta geometry
# ---------------------------------------------------------------------------


def validate_beta(beta) -> Tuple[float, float, float]:
    """Check a rotation ``beta`` and return ``(b, theta, c_beta)``.

    Parameters
    ----------
    beta : complex
        Nonzero, ``|beta| <= pi``, ``arg beta`` in ``[pi/2, 3 pi/2]``.

    Returns
    -------
    b : float
        ``arg beta`` normalized to ``[pi/2, 3 pi/2]``.
    theta : float
        Cut direction ``pi - b`` in ``[-pi/2, pi/2]``.
    c_beta : float
        ``exp(-Re beta) - 2 cos(Im beta)``, positive.

    Raises
    ------
    InvalidBetaError
        Naming the violated condition.
    """
    beta = as_complex(beta)
    if beta == 0:
        raise InvalidBetaError("beta must be nonzero")
    b = math.atan2(beta.imag, beta.real)
    if b < 0.0:
        b += 2.0 * math.pi
    eps = 1e-14
    if not (0.5 * math.pi - eps <= b <= 1.5 * math.pi + eps):
        raise InvalidBetaError(f"arg beta = {b:.6g} lies outside [pi/2, 3pi/2]")
    b = min(max(b, 0.5 * math.pi), 1.5 * math.pi)
    if abs(beta) > math.pi * (1.0 + 1e-14):
        raise InvalidBetaError(f"|beta| = {abs(beta):.6g} exceeds pi")
    c_beta = math.exp(-beta.real) - 2.0 * math.cos(beta.imag)
    if not c_beta > 0.0:
        raise InvalidBetaError(f"c_beta = {c_beta:.6g} is not positive")
    return b, math.pi - b, c_beta


def contraction_constants(beta) -> Tuple[float, float]:
    """The denominator floor ``c_0`` and the contraction rate ``c_1``.

    ``c_0`` follows the case analysis on ``alpha = |beta| sin b``:
    ``1`` when ``|alpha| >= pi/2``, otherwise the smaller of
    ``|sin alpha|`` (dropped when ``alpha = 0``) and ``1 - exp(-|beta|)``.
    ``c_1 = max(1/sqrt(1 + c_beta), 1/sqrt(2))``.
    """
    b, _, c_beta = validate_beta(beta)
    mod = abs(complex(beta))
    alpha = mod * math.sin(b)
    if abs(alpha) >= 0.5 * math.pi:
        c0 = 1.0
    else:
        c00 = 1.0 - math.exp(-mod)
        c0 = c00 if abs(alpha) < 1e-15 else min(abs(math.sin(alpha)), c00)
    c0 = min(c0, 1.0)
    c1 = max(1.0 / math.sqrt(1.0 + c_beta), 1.0 / math.sqrt(2.0))
    return c0, c1


def _check_pole_ray(x: complex, beta: complex) -> complex:
    """Return ``Y = x/beta`` after rejecting ``x`` on ``beta (-inf, 0]``."""
    if x == 0:
        raise PoleRayError("x = 0 lies on the pole ray beta*(-inf, 0]")
    Y = x / beta
    dist = abs(Y.imag) if Y.real <= 0.0 else abs(Y)
    if abs(beta) * dist < POLE_RAY_RTOL * abs(x):
        raise PoleRayError(f"x = {x} lies on the pole ray beta*(-inf, 0] with beta = {beta}")
    return Y


# ---------------------------------------------------------------------------
# function elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleTerm:
    """Principal part ``coefficient/(1 - p)^order`` at the singular point."""

    order: int
    coefficient: complex

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("pole order must be at least 1")


@dataclass(frozen=True)
class _CutRule:
    """Gauss-Legendre panels on ``[0, T]`` for two node counts."""

    t: Tuple[np.ndarray, np.ndarray]
    w: Tuple[np.ndarray, np.ndarray]
    T: float


def _panel_rule(edges: np.ndarray, order: int, log_scale: bool) -> Tuple[np.ndarray, np.ndarray]:
    xg, wg = np.polynomial.legendre.leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    u = (a + b) * 0.5 + half * xg[None, :]
    w = half * wg[None, :]
    if log_scale:
        t = np.exp(u)
        return t.ravel(), (w * t).ravel()
    return u.ravel(), w.ravel()


def _build_cut_rule(alpha: float, C: float) -> _CutRule:
    # tail beyond T: (2C/2pi) T^{1-alpha}/(alpha-1) below _TAIL_TARGET
    scale = max(C / math.pi / (alpha - 1.0), 1e-300)
    log_T = math.log(scale / _TAIL_TARGET) / (alpha - 1.0)
    log_T = min(max(log_T, 4.0), _FAR_MAX_LOG)
    near = np.concatenate(([0.0], 2.0 ** -np.arange(_NEAR_LEVELS, -1, -1, dtype=float)))
    n_far = max(int(math.ceil(log_T / _FAR_STEP)), 1)
    far = np.linspace(0.0, n_far * _FAR_STEP, n_far + 1)
    ts, ws = [], []
    for order in (16, 24):
        t1, w1 = _panel_rule(near, order, False)
        t2, w2 = _panel_rule(far, order, True)
        ts.append(np.concatenate((t1, t2)))
        ws.append(np.concatenate((w1, w2)))
    return _CutRule((ts[0], ts[1]), (ws[0], ws[1]), math.exp(n_far * _FAR_STEP))


class FunctionElement:
    """A Borel-plane function with one singular point at ``p = 1``.

    Parameters
    ----------
    cut_angle_theta : float
        Direction of the cut ``1 + t e^{i theta}``, ``|theta| <= pi/2``.
    branch_jump : callable or None
        ``t -> F(s+) - F(s-)`` at ``s = 1 + t e^{i theta}``.  ``None`` for a
        purely meromorphic element.
    decay_exponent_alpha : float
        ``alpha > 1`` with ``|F(p)| <= C |p|^{-alpha}`` for large ``|p|``.
    decay_constant : float
        The constant ``C``.
    direct_eval : callable, optional
        ``p -> F(p)`` for independent checks.
    pole_terms : sequence of PoleTerm
        Principal parts at ``p = 1``.
    vectorized : bool
        Whether ``branch_jump`` accepts numpy arrays.
    name : str
        Label used in reports.
    singular_point, exponential_shift : complex
        Location of the singularity and an exponential factor
        ``exp(shift p)``; elements produced by :func:`decompose_elements`
        carry them and must be normalized before expansion.
    """

    def __init__(
        self,
        cut_angle_theta: float,
        branch_jump: Optional[Callable] = None,
        decay_exponent_alpha: float = 2.0,
        decay_constant: float = 1.0,
        direct_eval: Optional[Callable] = None,
        pole_terms: Sequence[PoleTerm] = (),
        vectorized: bool = False,
        name: str = "",
        singular_point: complex = 1.0,
        exponential_shift: complex = 0.0,
    ):
        if not abs(cut_angle_theta) <= 0.5 * math.pi + 1e-14:
            raise DomainError("cut angle must lie in [-pi/2, pi/2]")
        if not decay_exponent_alpha > 1.0:
            raise DomainError("decay exponent alpha must exceed 1")
        if not decay_constant >= 0.0:
            raise DomainError("decay constant must be nonnegative")
        self.cut_angle_theta = float(cut_angle_theta)
        self.branch_jump = branch_jump
        self.decay_exponent_alpha = float(decay_exponent_alpha)
        self.decay_constant = float(decay_constant)
        self.direct_eval = direct_eval
        self.pole_terms = tuple(
            p if isinstance(p, PoleTerm) else PoleTerm(int(p[0]), complex(p[1])) for p in pole_terms
        )
        self.vectorized = vectorized
        self.name = name
        self.singular_point = complex(singular_point)
        self.exponential_shift = complex(exponential_shift)
        self._lock = threading.Lock()
        self._rule: Optional[_CutRule] = None
        self._omega: Optional[Tuple[np.ndarray, np.ndarray]] = None
        self._jump_l1: Optional[float] = None

    @property
    def has_cut(self) -> bool:
        return self.branch_jump is not None

    def _jump_values(self, t: np.ndarray) -> np.ndarray:
        if self.vectorized:
            out = np.asarray(self.branch_jump(t), dtype=complex)
            if out.shape == t.shape:
                return out
        return np.array([complex(self.branch_jump(float(v))) for v in t])

    def omega(self, t) -> np.ndarray:
        """Coefficient density ``e^{i theta} Delta F(1 + t e^{i theta})/(2 pi i)``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if not self.has_cut:
            return np.zeros_like(t, dtype=complex)
        return cmath.exp(1j * self.cut_angle_theta) / (2j * math.pi) * self._jump_values(t)

    def cut_rule(self) -> Tuple[_CutRule, Tuple[np.ndarray, np.ndarray]]:
        """Quadrature nodes on the cut and ``omega`` there, computed once."""
        if not self.has_cut:
            raise DomainError("element has no cut")
        if self._omega is None:
            with self._lock:
                if self._omega is None:
                    rule = _build_cut_rule(self.decay_exponent_alpha, self.decay_constant)
                    om = tuple(self.omega(t) for t in rule.t)
                    if not all(np.all(np.isfinite(o)) for o in om):
                        raise ConvergenceError("branch jump returned non-finite values")
                    self._rule = rule
                    self._omega = om
        return self._rule, self._omega

    def tail_mass(self) -> float:
        """Bound on ``int_T^inf |omega| dt`` beyond the last quadrature node."""
        rule, _ = self.cut_rule()
        a = self.decay_exponent_alpha
        return self.decay_constant / math.pi * rule.T ** (1.0 - a) / (a - 1.0)

    def jump_l1(self) -> float:
        """``int_0^inf |Delta F| dt`` (cached)."""
        if self._jump_l1 is None:
            if not self.has_cut:
                self._jump_l1 = 0.0
            else:
                rule, om = self.cut_rule()
                val = float(np.sum(np.abs(om[1]) * rule.w[1]) + self.tail_mass()) * 2.0 * math.pi
                self._jump_l1 = val
        return self._jump_l1

    def __repr__(self) -> str:
        return f"FunctionElement({self.name or 'anonymous'}, theta={self.cut_angle_theta:.4g}, poles={len(self.pole_terms)})"


def pole_element(coefficient: complex = 1.0, name: str = "pole") -> FunctionElement:
    """The meromorphic element ``coefficient/(1 - p)``."""
    c = complex(coefficient)
    return FunctionElement(
        0.0,
        None,
        2.0,
        0.0,
        direct_eval=lambda p: c / (1.0 - p),
        pole_terms=(PoleTerm(1, c),),
        name=name,
    )


def _require_normalized(elem: FunctionElement, beta: complex) -> float:
    b, theta, _ = validate_beta(beta)
    if elem.singular_point != 1.0 or elem.exponential_shift != 0.0:
        raise DomainError("element must be normalized: singularity at p = 1 and no exponential factor")
    if elem.has_cut:
        diff = (elem.cut_angle_theta - theta + math.pi) % (2.0 * math.pi) - math.pi
        if abs(diff) > 1e-12:
            raise InvalidBetaError(
                f"cut angle {elem.cut_angle_theta:.6g} of the element does not match pi - arg beta = {theta:.6g}"
            )
    return theta


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def _kernel_parts(beta_s: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """``(K_1, w)`` with ``K_m = K_1 w^{m-1}`` for series ``k``."""
    E = np.exp(beta_s * 2.0**-k)
    if k == 0:
        K1 = 1.0 / _cexpm1(beta_s)
    else:
        K1 = 1.0 / (E + 1.0)
    return K1, E * K1


def _cexpm1(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    half = np.sin(0.5 * y)
    return (np.expm1(x) * np.cos(y) - 2.0 * half * half) + 1j * np.exp(x) * np.sin(y)


def _series_exp(c: complex, lead: complex, order: int) -> np.ndarray:
    """Taylor coefficients of ``lead * exp(c delta)``."""
    out = np.empty(order + 1, dtype=complex)
    acc = complex(lead)
    for i in range(order + 1):
        out[i] = acc
        acc *= c / (i + 1)
    return out


def _series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _series_inv(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for i in range(1, len(a)):
        out[i] = -np.dot(a[1 : i + 1], out[i - 1 :: -1][:i]) / a[0]
    return out


def _pole_kernel_series(beta: complex, k: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Taylor series at ``s = 1`` of ``K_1`` and ``w`` for series ``k``."""
    bk = beta * 2.0**-k
    E = _series_exp(bk, cmath.exp(bk), order)
    den = E.copy()
    if k == 0:
        den[0] = complex(_cexpm1(np.array([bk]))[0])
    else:
        den[0] += 1.0
    K1 = _series_inv(den)
    return K1, _series_mul(E, K1)


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientRow:
    values: np.ndarray
    errors: np.ndarray


def coefficient_rows(elem: FunctionElement, beta, m_max: int, k: int) -> CoefficientRow:
    """``d_{m,k}`` for ``m = 1..m_max`` with per-coefficient error estimates.

    The error is the gap between 24- and 16-point panel rules plus the
    analytic bound on the truncated tail of the cut.
    """
    beta = as_complex(beta)
    _require_normalized(elem, beta)
    if m_max < 0 or k < 0:
        raise DomainError("need m_max >= 0 and k >= 0")
    vals = np.zeros(m_max, dtype=complex)
    errs = np.zeros(m_max)
    if m_max == 0:
        return CoefficientRow(vals, errs)
    if elem.has_cut:
        rule, om = elem.cut_rule()
        mod = abs(beta)
        q = []
        for t, w, o in zip(rule.t, rule.w, om):
            K1, wk = _kernel_parts(beta - mod * t, k)
            weights = o * w
            row = np.empty(m_max, dtype=complex)
            Km = K1
            for m in range(m_max):
                row[m] = np.dot(weights, Km)
                Km = Km * wk
            q.append(row)
        vals += q[1]
        errs += np.abs(q[1] - q[0])
        # kernel beyond T: |K_m| <= |E_T|^{m-1}/(1 - |E_T|)^m for k = 0, <= 1 for m = 1, k >= 1
        ET = abs(cmath.exp((beta - mod * rule.T) * 2.0**-k))
        tail = elem.tail_mass()
        if ET < 1.0:
            m_idx = np.arange(m_max)
            if k == 0:
                errs += tail * ET**m_idx / (1.0 - ET) ** (m_idx + 1)
            else:
                errs += tail * np.minimum(1.0, (ET / (1.0 - ET)) ** m_idx / (1.0 - ET))
        else:
            errs += tail
    for pt in elem.pole_terms:
        j = pt.order
        K1, wk = _pole_kernel_series(beta, k, j - 1)
        Km = K1
        sign = (-1.0) ** (j - 1)
        for m in range(m_max):
            vals[m] += pt.coefficient * sign * Km[j - 1]
            Km = _series_mul(Km, wk)
    return CoefficientRow(vals, errs)


def coefficient(elem: FunctionElement, beta, m: int, k: int) -> complex:
    """Single coefficient ``d_{m,k}``.

    Raises
    ------
    ConvergenceError
        When the quadrature error estimate exceeds both ``1e-12`` absolute
        and ``1e-10`` relative; ``achieved`` carries the estimate.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    row = coefficient_rows(elem, beta, m, k)
    val, err = row.values[m - 1], float(row.errors[m - 1])
    if err > max(_COEF_ABS_TOL, _COEF_REL_TOL * abs(val)):
        raise ConvergenceError(f"coefficient d_({m},{k}) quadrature error {err:.3g}", achieved=err)
    return complex(val)


# ---------------------------------------------------------------------------
# bound measure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundMeasure:
    """Discrete majorant of ``|omega| dt`` plus pole point masses.

    Each point ``s`` carries a mass; the tail of series ``k`` after ``n``
    terms is bounded by ``sum mass |K_1(s)| |w(s)|^n`` times a factorial-series
    majorant.
    """

    points: np.ndarray
    masses: np.ndarray

    def total(self) -> float:
        return float(np.sum(self.masses))

    def to_dict(self) -> dict:
        return {
            "points_re": [_fmt(v) for v in self.points.real],
            "points_im": [_fmt(v) for v in self.points.imag],
            "masses": [_fmt(v) for v in self.masses],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundMeasure":
        re = np.array([float(v) for v in d["points_re"]])
        im = np.array([float(v) for v in d["points_im"]])
        return cls(re + 1j * im, np.array([float(v) for v in d["masses"]]))


def bound_measure(elem: FunctionElement) -> BoundMeasure:
    """The measure used by all remainder bounds of ``elem``."""
    pts: List[np.ndarray] = []
    mass: List[np.ndarray] = []
    if elem.has_cut:
        rule, om = elem.cut_rule()
        direction = cmath.exp(1j * elem.cut_angle_theta)
        pts.append(1.0 + direction * rule.t[1])
        mass.append(np.abs(om[1]) * rule.w[1])
        pts.append(np.array([1.0 + direction * rule.T]))
        mass.append(np.array([elem.tail_mass()]))
    for pt in elem.pole_terms:
        if pt.order == 1:
            pts.append(np.array([1.0 + 0j]))
            mass.append(np.array([abs(pt.coefficient)]))
        else:
            # Cauchy estimate on a circle; every sample carries the full weight
            phi = 2.0 * math.pi * np.arange(_CIRCLE_POINTS) / _CIRCLE_POINTS
            pts.append(1.0 + _CIRCLE_RADIUS * np.exp(1j * phi))
            mass.append(np.full(_CIRCLE_POINTS, abs(pt.coefficient) * _CIRCLE_RADIUS ** (1 - pt.order)))
    if not pts:
        return BoundMeasure(np.zeros(0, dtype=complex), np.zeros(0))
    p = np.concatenate(pts)
    m = np.concatenate(mass)
    keep = m > 0.0
    return BoundMeasure(p[keep], m[keep])


class _SeriesBounds:
    """Caches ``G_k(n) = sum mass |K_1| (|w|/W_k)^n`` and ``W_k``."""

    def __init__(self, measure: BoundMeasure, beta: complex):
        self.measure = measure
        self.beta = beta
        self._cache: Dict[int, Tuple[np.ndarray, np.ndarray, float]] = {}
        self._lock = threading.Lock()

    def _parts(self, k: int):
        hit = self._cache.get(k)
        if hit is None:
            K1, w = _kernel_parts(self.beta * self.measure.points, k)
            a = self.measure.masses * np.abs(K1)
            aw = np.abs(w)
            W = float(aw.max()) if aw.size else 0.0
            if W >= 1.0:
                raise DomainError(f"contraction |w| = {W:.6g} >= 1 in series {k}; beta is not admissible")
            hit = (a, aw / W if W > 0 else aw, W)
            with self._lock:
                self._cache[k] = hit
        return hit

    def series(self, k: int, n: int, Y: complex) -> float:
        """Bound on the tail of series ``k`` after ``n`` terms at shift ``Y``."""
        a, ratio, W = self._parts(k)
        if a.size == 0:
            return 0.0
        G = float(np.dot(a, ratio**n)) if n else float(a.sum())
        if G == 0.0:
            return 0.0
        return G * factorial_tail_majorant(W, Y * 2.0**k, n) * (1.0 + 1e-12)

    def ladder(self, N: int, Y: complex) -> float:
        """Bound on the sum of complete series ``k >= N``."""
        acc = 0.0
        last = 0.0
        for k in range(N, N + _R_N_TERMS):
            last = self.series(k, 0, Y)
            acc += last
        # later series shrink at least geometrically with ratio 1/2
        return acc + last


# ---------------------------------------------------------------------------
# plans, expansions, results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationPlan:
    """Orders ``n`` (series 0), ``ell[k-1]`` (series ``k``) and ``N`` series."""

    n: int
    ell: Tuple[int, ...]
    N: int
    target_accuracy: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(int(v) for v in self.ell))
        if self.n < 1 or self.N < 1:
            raise DomainError("plan needs n >= 1 and N >= 1")
        if len(self.ell) != self.N - 1:
            raise DomainError(f"ell must have N - 1 = {self.N - 1} entries")
        if any(v < 0 for v in self.ell):
            raise DomainError("ell entries must be nonnegative")
        if any(b > a for a, b in zip(self.ell, self.ell[1:])):
            raise DomainError("ell must be nonincreasing in k")

    @property
    def total_terms(self) -> int:
        return self.n + sum(self.ell)

    def to_dict(self) -> dict:
        return {"n": self.n, "ell": list(self.ell), "N": self.N, "target_accuracy": _fmt(self.target_accuracy)}

    @classmethod
    def from_dict(cls, d: dict) -> "TruncationPlan":
        return cls(int(d["n"]), tuple(d["ell"]), int(d["N"]), float(d.get("target_accuracy", "inf")))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TruncationPlan":
        return cls.from_dict(json.loads(text))


@dataclass
class EvalResult:
    """Value of a truncated expansion with its certified error bound.

    Attributes
    ----------
    value : complex
    certified_bound : float
        Sum of the series-tail bounds, the ladder bound, the propagated
        coefficient error and a roundoff allowance.
    terms_used : int
    per_series_remainders : list of float
        ``[series 0, series 1, ..., series N-1, ladder k >= N]``.
    diagnostics : dict
        Coarse bounds in terms of ``c_0``, ``c_1`` (infinite when
        ``Re(x/beta) <= 0``) and the individual contributions.
    """

    value: complex
    certified_bound: float
    terms_used: int
    per_series_remainders: List[float]
    diagnostics: Dict[str, float] = field(default_factory=dict)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _factorial_weights(Y: complex, count: int) -> np.ndarray:
    """``(m-1)!/(Y)_m`` for ``m = 1..count`` by the stable ratio recurrence."""
    out = np.empty(count, dtype=complex)
    r = 1.0 / Y
    for m in range(count):
        out[m] = r
        r = r * (m + 1) / (Y + m + 1)
    return out


class DyadicExpansion:
    """Immutable coefficient table with the data needed for bounds.

    Parameters
    ----------
    beta : complex
    d0 : array of complex
        ``d_{m,0}``, ``m = 1..n``.
    dk : list of arrays
        ``dk[k-1][m-1] = d_{m,k}`` for ``k = 1..N-1``.
    measure : BoundMeasure
    errors0, errorsk : arrays
        Absolute error estimates of the coefficients.
    target_accuracy : float
    """

    def __init__(
        self,
        beta,
        d0: Sequence[complex],
        dk: Sequence[Sequence[complex]],
        measure: BoundMeasure,
        errors0: Optional[Sequence[float]] = None,
        errorsk: Optional[Sequence[Sequence[float]]] = None,
        target_accuracy: float = math.inf,
        label: str = "",
    ):
        self.beta = as_complex(beta)
        validate_beta(self.beta)
        self.d0 = np.asarray(d0, dtype=complex)
        self.dk = [np.asarray(r, dtype=complex) for r in dk]
        self.errors0 = np.zeros(len(self.d0)) if errors0 is None else np.asarray(errors0, dtype=float)
        self.errorsk = [np.zeros(len(r)) for r in self.dk] if errorsk is None else [np.asarray(e, dtype=float) for e in errorsk]
        if len(self.d0) < 1:
            raise DomainError("the first series needs at least one coefficient")
        if not (np.all(np.isfinite(self.d0)) and all(np.all(np.isfinite(r)) for r in self.dk)):
            raise DomainError("coefficients must be finite")
        self.measure = measure
        self.plan = TruncationPlan(len(self.d0), tuple(len(r) for r in self.dk), len(self.dk) + 1, target_accuracy)
        self.label = label
        self._bounds = _SeriesBounds(measure, self.beta)

    @property
    def n(self) -> int:
        return self.plan.n

    @property
    def N(self) -> int:
        return self.plan.N

    def evaluate(self, x) -> EvalResult:
        return evaluate(self, x)

    def to_dict(self) -> dict:
        def arr(a):
            return {"re": [_fmt(v) for v in np.real(a)], "im": [_fmt(v) for v in np.imag(a)]}

        return {
            "version": SERIALIZATION_VERSION,
            "label": self.label,
            "beta": {"re": _fmt(self.beta.real), "im": _fmt(self.beta.imag)},
            "plan": self.plan.to_dict(),
            "d0": arr(self.d0),
            "dk": [arr(r) for r in self.dk],
            "errors0": [_fmt(v) for v in self.errors0],
            "errorsk": [[_fmt(v) for v in e] for e in self.errorsk],
            "measure": self.measure.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "DyadicExpansion":
        if d.get("version") != SERIALIZATION_VERSION:
            raise DomainError(f"unsupported serialization version {d.get('version')!r}")

        def arr(a):
            return np.array([float(v) for v in a["re"]]) + 1j * np.array([float(v) for v in a["im"]])

        plan = TruncationPlan.from_dict(d["plan"])
        out = cls(
            complex(float(d["beta"]["re"]), float(d["beta"]["im"])),
            arr(d["d0"]),
            [arr(r) for r in d["dk"]],
            BoundMeasure.from_dict(d["measure"]),
            [float(v) for v in d["errors0"]],
            [[float(v) for v in e] for e in d["errorsk"]],
            plan.target_accuracy,
            d.get("label", ""),
        )
        return out

    @classmethod
    def from_json(cls, text: str) -> "DyadicExpansion":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"DyadicExpansion(beta={self.beta}, n={self.n}, ell={list(self.plan.ell)}, N={self.N})"


def build_expansion(elem: FunctionElement, beta, plan: TruncationPlan) -> DyadicExpansion:
    """Compute every coefficient the plan asks for.

    Raises
    ------
    ConvergenceError
        If any coefficient misses the quadrature tolerance.
    """
    beta = as_complex(beta)
    _require_normalized(elem, beta)
    rows = [coefficient_rows(elem, beta, plan.n, 0)]
    for k, ell in enumerate(plan.ell, start=1):
        rows.append(coefficient_rows(elem, beta, ell, k))
    worst = 0.0
    for r in rows:
        if len(r.values):
            excess = r.errors - np.maximum(_COEF_ABS_TOL, _COEF_REL_TOL * np.abs(r.values))
            worst = max(worst, float(excess.max()))
    if worst > 0.0:
        achieved = max(float(r.errors.max()) for r in rows if len(r.values))
        raise ConvergenceError("coefficient quadrature missed its tolerance", achieved=achieved)
    return DyadicExpansion(
        beta,
        rows[0].values,
        [r.values for r in rows[1:]],
        bound_measure(elem),
        rows[0].errors,
        [r.errors for r in rows[1:]],
        plan.target_accuracy,
        elem.name,
    )


def _coarse_bounds(exp: DyadicExpansion, Y: complex) -> Dict[str, float]:
    c0, c1 = contraction_constants(exp.beta)
    mass = exp.measure.total()
    out = {"c0": c0, "c1": c1, "measure_total": mass}
    if Y.real <= 0.0:
        out.update(coarse_rho0=math.inf, coarse_ladder=math.inf, coarse_total=math.inf)
        return out
    n = exp.n
    r0 = c1**n / c0 / Y.real * abs(_factorial_weights(Y, n + 1)[n]) * n
    total = r0
    for k, ell in enumerate(exp.plan.ell, start=1):
        Yk = Y * 2.0**k
        if ell:
            total += c1**ell / c0 * 2.0**-k / Y.real * abs(_factorial_weights(Yk, ell + 1)[ell]) * ell
        else:
            total += 2.0**-k * abs(exp.beta) / c0 / Y.real
    ladder = 2.0 ** (1 - exp.N) * abs(exp.beta) / c0 / abs(Y * exp.beta) * (abs(Y) / Y.real)
    out.update(coarse_rho0=r0 * mass, coarse_ladder=ladder * mass, coarse_total=(total + ladder) * mass)
    return out


def evaluate(exp: DyadicExpansion, x) -> EvalResult:
    """Sum the truncated expansion at ``x`` and certify the error.

    Raises
    ------
    PoleRayError
        When ``x`` is within ``1e-9 |x|`` of ``beta (-inf, 0]``.
    """
    x = as_complex(x)
    Y = _check_pole_ray(x, exp.beta)
    remainders: List[float] = []
    value = 0.0j
    abs_sum = 0.0
    quad_err = 0.0
    rows = [(exp.d0, exp.errors0)] + list(zip(exp.dk, exp.errorsk))
    for k, (d, e) in enumerate(rows):
        Yk = Y * 2.0**k
        if len(d):
            fw = _factorial_weights(Yk, len(d))
            terms = d * fw
            value += terms.sum()
            abs_sum += float(np.abs(terms).sum())
            quad_err += float(np.dot(e, np.abs(fw)))
        remainders.append(exp._bounds.series(k, len(d), Y))
    remainders.append(exp._bounds.ladder(exp.N, Y))
    roundoff = 8.0 * np.finfo(float).eps * (abs_sum + abs(value))
    bound = float(sum(remainders) + quad_err + roundoff)
    diag = _coarse_bounds(exp, Y)
    diag.update(quadrature=quad_err, roundoff=roundoff)
    return EvalResult(complex(value), bound, exp.plan.total_terms, remainders, diag)


def series_terms(exp: DyadicExpansion, x) -> List[np.ndarray]:
    """Individual terms ``d_{m,k} (m-1)!/(2^k x/beta)_m`` of every series."""
    Y = _check_pole_ray(as_complex(x), exp.beta)
    out = []
    for k, d in enumerate([exp.d0] + exp.dk):
        out.append(d * _factorial_weights(Y * 2.0**k, len(d)) if len(d) else np.zeros(0, dtype=complex))
    return out


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


def _region_samples(x_region, beta: complex, n_args: int = 9) -> List[complex]:
    r_min, (lo, hi) = x_region
    if not r_min > 0:
        raise DomainError("minimum |x| must be positive")
    args = np.linspace(lo, hi, n_args) if hi > lo else np.array([lo])
    pts = []
    for a in args:
        x = r_min * cmath.exp(1j * a)
        pts.append(_check_pole_ray(x, beta))
    return pts


def plan_from_bounds(
    bounds: _SeriesBounds,
    Ys: Sequence[complex],
    target: float,
    max_terms: int = 4000,
) -> TruncationPlan:
    """Greedy plan: repeatedly add the single term that lowers the worst-case
    total bound the most, until it falls below ``target``."""
    if not target > 0:
        raise DomainError("target must be positive")
    Ys = list(Ys)
    cache: Dict[Tuple[int, int], np.ndarray] = {}

    def S(k: int, n: int) -> np.ndarray:
        key = (k, n)
        if key not in cache:
            cache[key] = np.array([bounds.series(k, n, Y) for Y in Ys])
        return cache[key]

    ladder_cache: Dict[int, np.ndarray] = {}

    def L(N: int) -> np.ndarray:
        if N not in ladder_cache:
            ladder_cache[N] = np.array([bounds.ladder(N, Y) for Y in Ys])
        return ladder_cache[N]

    n, ell, N = 1, [], 1

    def total(n, ell, N) -> np.ndarray:
        acc = S(0, n) + L(N)
        for k, e in enumerate(ell, start=1):
            acc = acc + S(k, e)
        return acc

    current = total(n, ell, N)
    stall = 0
    while current.max() > target:
        if n + sum(ell) >= max_terms:
            raise InfeasibleTargetError(
                f"bound {current.max():.3g} still above target {target:.3g} after {max_terms} terms"
            )
        options = [("n", total(n + 1, ell, N))]
        for k in range(1, N):
            cap = n if k == 1 else ell[k - 2]
            if ell[k - 1] + 1 <= cap:
                trial = ell.copy()
                trial[k - 1] += 1
                options.append((k, total(n, trial, N)))
        if (ell[-1] if ell else n) >= 1:
            options.append(("N", total(n, ell + [1], N + 1)))
        name, best = min(options, key=lambda o: float(o[1].max()))
        gain = current.max() - best.max()
        stall = stall + 1 if gain <= 1e-6 * current.max() else 0
        if stall > 200:
            raise InfeasibleTargetError(
                f"term bounds stagnate at {current.max():.3g} above target {target:.3g}; x may be too close to the pole ray"
            )
        if name == "n":
            n += 1
        elif name == "N":
            ell.append(1)
            N += 1
        else:
            ell[name - 1] += 1
        current = best
    return TruncationPlan(n, tuple(ell), N, target)


def plan_truncation(exp_params, x_region, target: float, max_terms: int = 4000) -> TruncationPlan:
    """Choose orders ``(n, ell, N)`` meeting ``target`` on a region of ``x``.

    Parameters
    ----------
    exp_params : (FunctionElement, complex) or (BoundMeasure, complex)
    x_region : (float, (float, float))
        Minimum ``|x|`` and the range of ``arg x`` (radians).  The bound is
        enforced at ``|x| = r_min`` on nine arguments spanning the range;
        remainders decrease with ``|x|`` along each ray.
    target : float

    Returns
    -------
    TruncationPlan
        ``ell`` nonincreasing and ``N`` as small as the greedy order allows.

    Raises
    ------
    InfeasibleTargetError
        When the bounds stagnate above ``target``.
    """
    src, beta = exp_params
    beta = as_complex(beta)
    if isinstance(src, FunctionElement):
        _require_normalized(src, beta)
        measure = bound_measure(src)
    else:
        validate_beta(beta)
        measure = src
    bounds = _SeriesBounds(measure, beta)
    return plan_from_bounds(bounds, _region_samples(x_region, beta), target, max_terms)


# ---------------------------------------------------------------------------
# decomposition into elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Strip:
    center: complex
    direction: complex  # unit vector along which the strip runs to infinity
    half_width: float
    length: float
    mu: complex

    def contains(self, p: complex) -> bool:
        local = (p - self.center) / self.direction
        return abs(local.imag) < self.half_width and local.real > -self.half_width

    def rule(self, order: int = 32) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes and weights (``ds``) of the clockwise strip boundary."""
        h, L = self.half_width, self.length
        fine = np.arange(-h, 2.0 * h + 1e-15, 0.25 * h)
        coarse = np.geomspace(2.0 * h + 0.25 * h, L, 14) if L > 2.25 * h else np.array([])
        up = np.concatenate((fine, coarse))
        bottom = np.linspace(-h, h, 9)
        xg, wg = np.polynomial.legendre.leggauss(order)

        def seg(z0: complex, z1: complex, edges: np.ndarray):
            # edges in [0, 1] along the segment z0 -> z1
            a, b = edges[:-1, None], edges[1:, None]
            u = 0.5 * (a + b) + 0.5 * (b - a) * xg[None, :]
            w = 0.5 * (b - a) * wg[None, :]
            return (z0 + (z1 - z0) * u).ravel(), ((z1 - z0) * w).ravel()

        d = self.direction
        perp = 1j * d
        c = self.center
        # clockwise around the strip: down the left edge of the picture,
        # across the cap, back out along the other edge
        right_top = c - perp * h + d * L
        right_bottom = c - perp * h - d * h
        left_bottom = c + perp * h - d * h
        left_top = c + perp * h + d * L
        span = L + h
        e1 = np.sort(1.0 - (up + h) / span)
        parts = [
            seg(right_top, right_bottom, np.clip(e1, 0.0, 1.0)),
            seg(right_bottom, left_bottom, (bottom + h) / (2.0 * h)),
            seg(left_bottom, left_top, np.clip((up + h) / span, 0.0, 1.0)),
        ]
        s = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
        return s, w


class DecomposedElement(FunctionElement):
    """One element ``F_i`` of a decomposition, evaluated by contour quadrature.

    Two nested strip boundaries (half-widths ``h`` and ``h/2``) realize the
    same function; each evaluation uses the one farther from ``p`` so the
    Cauchy kernel stays resolved by the quadrature.
    """

    def __init__(self, F: Callable, strip: _Strip, residue: complex, index: int):
        self._F = F
        self.strip = strip
        self.residue = residue
        inner = _Strip(strip.center, strip.direction, 0.5 * strip.half_width, strip.length, strip.mu)
        self._contours = []
        for st in (strip, inner):
            nodes, weights = st.rule()
            g = np.array([complex(F(v)) for v in nodes]) * np.exp(-st.mu * nodes)
            self._contours.append((st, nodes, weights * g))
        super().__init__(
            0.0,
            None,
            2.0,
            0.0,
            direct_eval=self.__call__,
            pole_terms=(PoleTerm(1, -residue),),
            name=f"element_{index}",
            singular_point=strip.center,
            exponential_shift=strip.mu,
        )

    def _pick(self, p: complex):
        return max(self._contours, key=lambda c: float(np.min(np.abs(c[1] - p))))

    def cauchy_integral(self, p: complex, contour: int = 0) -> complex:
        """Raw ``(e^{mu p}/2 pi i) int g(s)/(s - p) ds`` over one strip boundary."""
        p = complex(p)
        st, nodes, gw = self._contours[contour]
        return cmath.exp(st.mu * p) / (2j * math.pi) * complex(np.sum(gw / (nodes - p)))

    def __call__(self, p) -> complex:
        """``F_i(p)``, continued analytically into the strip."""
        p = complex(p)
        st, nodes, gw = self._pick(p)
        val = cmath.exp(st.mu * p) / (2j * math.pi) * complex(np.sum(gw / (nodes - p)))
        if st.contains(p):
            val += complex(self._F(p))
        return val


@dataclass
class Decomposition:
    """Elements of ``F`` and the entire remainder ``G = F - sum F_i``."""

    elements: List[DecomposedElement]
    F: Callable

    def entire_part(self, p) -> complex:
        p = complex(p)
        return complex(self.F(p)) - sum(e(p) for e in self.elements)

    def __iter__(self):
        yield self.elements
        yield self.entire_part


def _residue_by_circle(F: Callable, center: complex, radius: float, nodes: int = 64) -> complex:
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    z = center + radius * np.exp(1j * phi)
    vals = np.array([complex(F(v)) for v in z])
    return complex(np.mean(vals * (z - center)))


def decompose_elements(
    F: Callable,
    singularities: Sequence[complex],
    mu_magnitude: float,
    nu: float,
) -> Decomposition:
    """Split a meromorphic ``F`` into one element per singularity plus an
    entire part.

    Each element is ``F_i(p) = (e^{mu_i p}/2 pi i) int_{C_i} F(s) e^{-mu_i s}/(s - p) ds``
    over the boundary of a half-strip around ``omega_i``.  Strips run
    perpendicular to the singular ray (rotated counterclockwise), have
    half-width ``0.2`` times the smallest gap, and ``arg mu_i`` makes
    ``mu_i s`` real positive far out along the strip.

    Parameters
    ----------
    F : callable
        Meromorphic with simple poles at ``singularities``.
    singularities : sequence of complex
        At most four points on at most two rays from the origin.
    mu_magnitude : float
        ``|mu_i|``; must exceed ``nu``.
    nu : float
        Exponential growth rate of ``F``.

    Returns
    -------
    Decomposition
        Iterable as ``(elements, entire_part)``.

    Raises
    ------
    ContourOverlapError
        If two strips intersect.
    """
    sing = [as_complex(w) for w in singularities]
    if not 1 <= len(sing) <= 4:
        raise DomainError("between one and four singularities are supported")
    if any(w == 0 for w in sing):
        raise DomainError("singularities must be away from the origin")
    if not mu_magnitude > nu >= 0.0:
        raise DomainError("need mu > nu >= 0")
    rays = {round(math.atan2(w.imag, w.real), 9) for w in sing}
    if len(rays) > 2:
        raise DomainError("at most two singular rays are supported")
    gaps = [abs(a - b) for i, a in enumerate(sing) for b in sing[i + 1 :]]
    gaps.append(min(abs(w) for w in sing))
    h = 0.2 * min(gaps)
    length = 45.0 / mu_magnitude + 3.0 * h
    strips = []
    for w in sing:
        direction = 1j * w / abs(w)
        mu = mu_magnitude / direction
        strips.append(_Strip(w, direction, h, length, mu))
    for i, a in enumerate(strips):
        for b in strips[i + 1 :]:
            if _strips_intersect(a, b):
                raise ContourOverlapError(f"strips around {a.center} and {b.center} intersect")
    elements = []
    for i, st in enumerate(strips):
        res = _residue_by_circle(F, st.center, 0.5 * h)
        elements.append(DecomposedElement(F, st, res, i))
    return Decomposition(elements, F)


def _strips_intersect(a: _Strip, b: _Strip) -> bool:
    s, _ = b.rule(8)
    if any(a.contains(z) for z in s):
        return True
    s, _ = a.rule(8)
    return any(b.contains(z) for z in s)


def jump_across(G: Callable, p: complex, normal: complex, eps: float = 1e-5) -> float:
    """Size of a discontinuity of ``G`` across a curve through ``p``.

    With ``D(a) = G(p + a n) - G(p - a n)`` the combination
    ``1.5 (D(eps) - D(3 eps)/3)`` cancels the smooth linear part and returns
    the jump up to ``O(eps^3)``.
    """
    n = complex(normal) / abs(complex(normal))
    p = complex(p)

    def D(a: float) -> complex:
        return complex(G(p + a * n)) - complex(G(p - a * n))

    return abs(1.5 * (D(eps) - D(3.0 * eps) / 3.0))


def measured_growth_rate(G: Callable, radii: Sequence[float] = (0.7, 1.7, 2.7), n_angles: int = 48) -> float:
    """Slope of ``log max_{|p| = r} |G|`` against ``r`` (least squares)."""
    phi = 2.0 * math.pi * np.arange(n_angles) / n_angles
    logs = []
    for r in radii:
        vals = [abs(complex(G(r * cmath.exp(1j * a)))) for a in phi]
        logs.append(math.log(max(max(vals), 1e-300)))
    slope = np.polyfit(np.asarray(radii, dtype=float), np.asarray(logs), 1)[0]
    return float(slope)
