"""Padé approximants of Borel transforms and their dyadic expansions.

A rational approximant is split into partial fractions
``sum_i c_i/(p - p_i)`` plus a polynomial.  Each simple pole has explicit
dyadic coefficients: the Cauchy kernel evaluated at ``s = p_i``, i.e. the
exponential-integral coefficients with ``beta p_i`` in place of ``beta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .engine import (
    BoundMeasure,
    DyadicExpansion,
    EvalResult,
    TruncationPlan,
    _kernel_parts,
    evaluate,
    validate_beta,
)
from .numerics import DomainError, DyadikError, PoleError, as_complex

FROISSART_TOL = 1e-7
REPEATED_POLE_RTOL = 1e-8
RANK_RTOL = 1e-13
#: below this scaled singular-value ratio the float solve is replaced by an exact one
FLOAT_SOLVE_RTOL = 1e-10
TAYLOR_NODES = 256


class DegeneratePadeError(DyadikError):
    """The denominator system is rank deficient; a lower ``M`` is needed."""


class RepeatedPoleError(DyadikError):
    """Two poles coincide to within the relative tolerance."""


@dataclass
class PadeApproximant:
    """``[L/M]`` approximant ``P(p)/Q(p)`` with monic ``Q``.

    Attributes
    ----------
    numerator, denominator : ndarray
        Coefficients in increasing powers of ``p``; ``denominator[-1] == 1``.
    poles, residues : ndarray
        Simple poles and the ``c_i`` of ``c_i/(p - p_i)``, after removing
        Froissart doublets.
    polynomial : ndarray
        Polynomial part (increasing powers), empty when ``L < M``.
    discarded : list of complex
        Poles removed as pole-zero doublets.
    """

    numerator: np.ndarray
    denominator: np.ndarray
    poles: np.ndarray
    residues: np.ndarray
    polynomial: np.ndarray
    discarded: List[complex] = field(default_factory=list)

    @property
    def L(self) -> int:
        return len(self.numerator) - 1

    @property
    def M(self) -> int:
        return len(self.denominator) - 1

    def __call__(self, p) -> complex:
        """The rational function ``P(p)/Q(p)``."""
        p = complex(p)
        return complex(np.polyval(self.numerator[::-1], p) / np.polyval(self.denominator[::-1], p))

    def partial_fractions(self, p) -> complex:
        """``polynomial(p) + sum_i c_i/(p - p_i)`` (doublets dropped)."""
        p = complex(p)
        acc = complex(np.polyval(self.polynomial[::-1], p)) if len(self.polynomial) else 0.0j
        return acc + complex(np.sum(self.residues / (p - self.poles)))

    def taylor(self, count: int) -> np.ndarray:
        """First ``count`` Taylor coefficients of ``P/Q`` at 0."""
        q = self.denominator
        out = np.zeros(count, dtype=complex)
        for i in range(count):
            acc = self.numerator[i] if i < len(self.numerator) else 0.0
            for j in range(1, min(i, len(q) - 1) + 1):
                acc -= q[j] * out[i - j]
            out[i] = acc / q[0]
        return out


def _companion_roots(monic: np.ndarray) -> np.ndarray:
    """Roots of ``sum monic[j] p^j`` with ``monic[-1] == 1``."""
    deg = len(monic) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    C = np.zeros((deg, deg), dtype=complex)
    C[1:, :-1] = np.eye(deg - 1)
    C[:, -1] = -monic[:-1]
    return np.linalg.eigvals(C)


def _poly_divmod(num: np.ndarray, den: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder of polynomials in increasing powers (``den`` monic)."""
    num = num.astype(complex).copy()
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return np.zeros(0, dtype=complex), num
    quot = np.zeros(len(num) - dn, dtype=complex)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / den[-1]
        quot[i - dn] = c
        num[i - dn : i + 1] -= c * den
    return quot, num[:dn]


def _solve_exact(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``A q = rhs`` in exact rational arithmetic of the float entries.

    Complex systems use the real ``2M x 2M`` embedding.
    """
    M = A.shape[0]
    re = [[Fraction(float(v.real)) for v in row] for row in A]
    im = [[Fraction(float(v.imag)) for v in row] for row in A]
    rows = []
    for i in range(M):
        rows.append(re[i] + [-v for v in im[i]] + [Fraction(float(rhs[i].real))])
    for i in range(M):
        rows.append(im[i] + re[i] + [Fraction(float(rhs[i].imag))])
    n = 2 * M
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise DegeneratePadeError(f"denominator system of order {M} is singular; try a smaller M")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        pr = [v * inv for v in rows[col]]
        rows[col] = pr
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
    sol = [float(rows[i][n]) for i in range(n)]
    return np.array(sol[:M]) + 1j * np.array(sol[M:])


def _coincide(a: complex, b: complex, q: np.ndarray) -> bool:
    """Whether two computed roots of ``q`` are one double root.

    Rounding splits a double root by about ``sqrt(eps)`` relative, wider
    than the distance tolerance, so a nearby pair whose midpoint is a root of
    ``q`` to roundoff is also treated as coincident.
    """
    scale = max(abs(a), abs(b), 1e-300)
    if abs(a - b) <= REPEATED_POLE_RTOL * scale:
        return True
    if abs(a - b) > 1e-4 * scale:
        return False
    mid = 0.5 * (a + b)
    size = np.polyval(np.abs(q[::-1]), abs(mid))
    return abs(np.polyval(q[::-1], mid)) <= 64 * np.finfo(float).eps * size


def pade_from_taylor(coeffs: Sequence[complex], L: int, M: int) -> PadeApproximant:
    """``[L/M]`` Padé approximant matching ``coeffs`` through order ``L + M``.

    The denominator solves the Toeplitz system with column scaling (in exact
    rational arithmetic when the scaled system is numerically singular); its
    roots are the eigenvalues of the companion matrix and the residues are
    ``P(p_i)/Q'(p_i)``.  Poles within ``1e-7`` of a zero of ``P`` are
    dropped as Froissart doublets.

    Raises
    ------
    DegeneratePadeError
        When the system is rank deficient.
    RepeatedPoleError
        When two poles agree to ``1e-8`` relative.
    """
    a = np.asarray(coeffs, dtype=complex)
    if L < 0 or M < 0:
        raise DomainError("L and M must be nonnegative")
    if len(a) < L + M + 1:
        raise DomainError(f"need at least L + M + 1 = {L + M + 1} coefficients")

    def coef(i: int) -> complex:
        return a[i] if i >= 0 else 0.0

    if M > 0:
        # sum_{j=0}^{M} q_j a_{L+i-j} = 0, i = 1..M, q_0 = 1
        A = np.array([[coef(L + i - j) for j in range(1, M + 1)] for i in range(1, M + 1)])
        rhs = -np.array([coef(L + i) for i in range(1, M + 1)])
        scale = np.linalg.norm(A, axis=0)
        scale[scale == 0] = 1.0
        As = A / scale
        sv = np.linalg.svd(As, compute_uv=False)
        if sv[0] == 0:
            raise DegeneratePadeError(f"denominator system of [{L}/{M}] is zero; try a smaller M")
        if sv[-1] > FLOAT_SOLVE_RTOL * sv[0]:
            q_tail = np.linalg.solve(As, rhs) / scale
        else:
            # Hankel systems of Stieltjes-type series lose all digits in
            # floating point; solve exactly in the binary input values
            q_tail = _solve_exact(A, rhs)
        q = np.concatenate(([1.0], q_tail))
    else:
        q = np.array([1.0 + 0j])
    p = np.array([sum(q[j] * coef(i - j) for j in range(0, min(i, M) + 1)) for i in range(L + 1)])
    # trim vanishing leading denominator coefficients, then make it monic
    while len(q) > 1 and abs(q[-1]) <= 1e-14 * np.max(np.abs(q)):
        q = q[:-1]
    lead = q[-1]
    q = q / lead
    p = p / lead
    poles = _companion_roots(q)
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if _coincide(poles[i], poles[j], q):
                raise RepeatedPoleError(f"poles {poles[i]} and {poles[j]} coincide")
    dq = q[1:] * np.arange(1, len(q))
    residues = np.array([np.polyval(p[::-1], z) / np.polyval(dq[::-1], z) for z in poles], dtype=complex)
    quot, _ = _poly_divmod(p, q)
    zeros = _companion_roots(p / p[-1]) if len(p) > 1 and p[-1] != 0 else np.zeros(0, dtype=complex)
    keep = np.ones(len(poles), dtype=bool)
    discarded = []
    for i, z in enumerate(poles):
        if len(zeros) and np.min(np.abs(zeros - z)) < FROISSART_TOL:
            keep[i] = False
            discarded.append(complex(z))
    return PadeApproximant(p, q, poles[keep], residues[keep], quot, discarded)


def taylor_from_evaluator(F: Callable[[complex], complex], count: int, radius: float = 0.5) -> np.ndarray:
    """Taylor coefficients ``a_j = (1/2 pi i) oint F(p)/p^{j+1} dp`` by the
    trapezoid rule with 256 nodes on ``|p| = radius``."""
    if count > TAYLOR_NODES // 2:
        raise DomainError(f"at most {TAYLOR_NODES // 2} coefficients")
    z = radius * np.exp(2j * math.pi * np.arange(TAYLOR_NODES) / TAYLOR_NODES)
    vals = np.array([complex(F(v)) for v in z])
    return np.array([np.mean(vals * z ** (-j)) for j in range(count)])


def read_taylor_file(path: str) -> np.ndarray:
    """Coefficients from a text file with one ``re im`` pair per line."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            out.append(complex(float(parts[0]), float(parts[1]) if len(parts) > 1 else 0.0))
    return np.array(out)


def _check_pole(pole: complex, beta: complex) -> None:
    b = cmath.phase(beta)
    direction = cmath.exp(-1j * b)
    rel = pole / direction
    if abs(rel.imag) <= 1e-12 * abs(pole) and rel.real >= 0.0:
        raise PoleError(f"pole {pole} lies on the Laplace contour")
    K1, w = _kernel_parts(np.array([beta * pole]), 0)
    if not np.isfinite(K1[0]) or abs(w[0]) >= 1.0:
        raise PoleError(f"pole {pole} is not admissible for beta = {beta}: first-series ratio {abs(w[0]):.3g}")
    for k in range(1, 64):
        K1, w = _kernel_parts(np.array([beta * pole]), k)
        if not np.isfinite(K1[0]) or abs(w[0]) >= 1.0:
            raise PoleError(f"pole {pole} is not admissible for beta = {beta} in series {k}")


def pole_coefficients(pole: complex, beta: complex, m_max: int, k: int) -> np.ndarray:
    """Dyadic coefficients of ``1/(p - pole)``: ``-K_{m,k}(pole)``."""
    K1, w = _kernel_parts(np.array([beta * pole]), k)
    return -K1[0] * w[0] ** np.arange(m_max)


def dyadic_from_pade(approx: PadeApproximant, beta, plan: TruncationPlan) -> DyadicExpansion:
    """Dyadic expansion of the Laplace transform of ``sum_i c_i/(p - p_i)``.

    The polynomial part is not included; see :func:`pade_laplace`.

    Raises
    ------
    PoleError
        If a pole lies on the contour ``e^{-i arg beta} [0, inf)`` or makes a
        series diverge.
    """
    beta = as_complex(beta)
    validate_beta(beta)
    for z in approx.poles:
        _check_pole(complex(z), beta)
    d0 = np.zeros(plan.n, dtype=complex)
    dk = [np.zeros(ell, dtype=complex) for ell in plan.ell]
    for c, z in zip(approx.residues, approx.poles):
        d0 += c * pole_coefficients(z, beta, plan.n, 0)
        for k, ell in enumerate(plan.ell, start=1):
            dk[k - 1] += c * pole_coefficients(z, beta, ell, k)
    measure = BoundMeasure(np.asarray(approx.poles, dtype=complex), np.abs(np.asarray(approx.residues)))
    return DyadicExpansion(beta, d0, dk, measure, target_accuracy=plan.target_accuracy, label="pade")


def pade_laplace(approx: PadeApproximant, beta, plan: TruncationPlan, x) -> EvalResult:
    """Laplace transform of the whole approximant along ``e^{-i arg beta}[0, inf)``:
    the dyadic expansion plus ``sum_j j! poly_j/x^{j+1}``."""
    x = as_complex(x)
    res = evaluate(dyadic_from_pade(approx, beta, plan), x)
    poly = sum(math.factorial(j) * c / x ** (j + 1) for j, c in enumerate(approx.polynomial))
    return EvalResult(res.value + poly, res.certified_bound, res.terms_used, res.per_series_remainders, res.diagnostics)


def airy_taylor_flipped(count: int, nu: float = 1.0 / 3.0) -> np.ndarray:
    """Taylor coefficients of ``F(-q) = 2F1(1/2 + nu, 1/2 - nu; 1; q)``."""
    a, b = 0.5 + nu, 0.5 - nu
    out = np.empty(count)
    out[0] = 1.0
    for j in range(1, count):
        out[j] = out[j - 1] * (a + j - 1) * (b + j - 1) / (j * j)
    return out


def airy_h_pade(u, L: int = 12, M: int = 12, plan: Optional[TruncationPlan] = None) -> EvalResult:
    """``h(u)`` from the ``[L/M]`` approximant of ``F(-q)``.

    ``h(u) = int_0^inf e^{-pu} F(p) dp = -f(-u)``, where ``f`` is the
    Laplace transform of the approximant with ``beta = -1``.
    """
    if plan is None:
        plan = TruncationPlan(60, (40, 30, 20, 15, 10, 8, 6, 5, 4, 3, 3, 2, 2) + (1,) * 30, 44)
    approx = pade_from_taylor(airy_taylor_flipped(L + M + 1), L, M)
    res = pade_laplace(approx, -1.0, plan, -as_complex(u))
    return EvalResult(-res.value, res.certified_bound, res.terms_used, res.per_series_remainders, res.diagnostics)
