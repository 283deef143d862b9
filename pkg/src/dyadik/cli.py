"""Command-line front end: evaluate, plan, scan and report.

Exit codes: 0 success, 1 tolerance not met, 2 domain error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import oracle, special
from .engine import (
    EvalResult,
    InfeasibleTargetError,
    TruncationPlan,
    decompose_elements,
    jump_across,
    measured_growth_rate,
    plan_truncation,
    series_terms,
    _residue_by_circle,
)
from .numerics import DomainError, DyadikError, as_complex

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_DOMAIN = 2

FUNCTIONS = ("ei_plus", "ei_left", "psi", "airy", "airy_h", "bessel_h", "erfc", "incomplete_gamma")
ROW_FIELDS = (
    "x_re",
    "x_im",
    "value_re",
    "value_im",
    "certified_bound",
    "oracle_re",
    "oracle_im",
    "abs_error",
    "terms_used",
)


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def parse_angle(text: str) -> float:
    """Angle with an explicit ``deg`` or ``rad`` suffix."""
    t = text.strip().lower()
    if t.endswith("deg"):
        return math.radians(float(t[:-3]))
    if t.endswith("rad"):
        return float(t[:-3])
    raise argparse.ArgumentTypeError(f"angle {text!r} needs a 'deg' or 'rad' suffix")


def parse_grid(text: str) -> Tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid is start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be at least 1")
    return start, stop, count


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("target must be positive")
    return v


@dataclass
class RunConfig:
    """Parsed options shared by the commands."""

    command: str
    function: str = "ei_plus"
    points: Sequence[Tuple[complex, Optional[float]]] = ()
    target: float = 1e-8
    beta: Optional[complex] = None
    plan: Optional[TruncationPlan] = None
    out: Optional[str] = None
    fmt: str = "csv"
    nu: float = 0.25
    s_exp: float = 0.5


def grid_points(args) -> List[Tuple[complex, Optional[float]]]:
    """``(x, arg)`` pairs; ``arg`` is the continuously tracked argument when
    given explicitly and ``None`` otherwise."""
    if args.x is not None:
        return [(as_complex(complex(args.x.replace("i", "j"))), None)]
    arg = args.x_arg if args.x_arg is not None else 0.0
    if args.x_mag is not None:
        mags = [args.x_mag]
    elif args.x_grid is not None:
        a, b, n = args.x_grid
        mags = list(np.linspace(a, b, n))
    else:
        raise DomainError("give --x, --x-mag or --x-grid")
    return [(complex(m * cmath.exp(1j * arg)), arg) for m in mags]


# ---------------------------------------------------------------------------
# per-function evaluation
# ---------------------------------------------------------------------------


def _ei_plan(beta: complex, x: complex, arg: float, target: float) -> TruncationPlan:
    return plan_truncation((special.ei_element(), beta), (abs(x), (arg, arg)), target)


def _bessel_plan(nu: float, u: complex, target_h: float) -> TruncationPlan:
    elem = special.bessel_k_element(nu)
    K = special.BesselNormalization.for_order(nu).integration_by_parts_count
    a = cmath.phase(u) + math.pi
    return plan_truncation((elem, -1.0), (abs(u), (a, a)), target_h * abs(u) ** K)


def _auto(fn: Callable[[int], EvalResult], sizes: Sequence[int], target: float) -> EvalResult:
    res = None
    for n in sizes:
        res = fn(n)
        if res.certified_bound <= target:
            return res
    return res


def evaluate_function(cfg: RunConfig, x: complex, arg: Optional[float]) -> Tuple[EvalResult, Optional[complex]]:
    """Dyadic value and independent reference at one point.

    ``airy`` takes the Airy variable (real, positive) and its target is
    relative; every other function uses an absolute target.
    """
    f, t = cfg.function, cfg.target
    if f == "ei_plus":
        beta = cfg.beta if cfg.beta is not None else special.EI_BETA
        a = arg if arg is not None else oracle._sheet_arg(x, None)
        lo, hi = special.ei_plus_sheet_range(beta)
        if abs(a - lo) < 1e-12 or abs(a - hi) < 1e-12:
            raise DomainError(f"x = {x} lies on the pole ray beta*(-inf, 0] with beta = {beta}")
        if not lo < a < hi:
            raise DomainError(f"arg x = {a:.6g} outside ({lo:.6g}, {hi:.6g}) covered by the cut of beta = {beta}")
        plan = cfg.plan or _ei_plan(beta, x, a, t)
        res = special.ei_plus_beta(x, beta, plan, a)
        try:
            ref = oracle.ei_plus_oracle(x, a)
        except DomainError:
            ref = None
        return res, ref
    if f == "ei_left":
        plan = cfg.plan or _ei_plan(special.EI_LEFT_BETA, -x, cmath.phase(-x), t)
        return special.ei_left(x, plan), oracle.ei_left_oracle(x)
    if f == "psi":
        res = _auto(lambda j: special.psi_dyadic(x, 60, j), (8, 16, 32, 64, 128, 256), t)
        return res, oracle.digamma(x + 1.0)
    if f in ("airy_h", "bessel_h"):
        nu = 1.0 / 3.0 if f == "airy_h" else cfg.nu
        plan = cfg.plan or _bessel_plan(nu, x, t)
        return special.bessel_h(nu, x, plan), oracle.bessel_h_oracle(nu, x)
    if f == "airy":
        if x.imag != 0.0 or not x.real > 0.0:
            raise DomainError("airy takes a real positive argument")
        X = x.real
        u = special.airy_u(X)
        # h(u) ~ 1/u, so a relative target becomes an absolute one on h
        plan = cfg.plan or _bessel_plan(1.0 / 3.0, u, 0.5 * t / u)
        res = special.airy_h(u, plan)
        scale = 2.0 / (3.0 * math.sqrt(math.pi)) * special.airy_from_h(X, 1.0)
        ref = scale.real * oracle.airy_h_oracle(u)
        val = EvalResult(
            res.value * scale,
            res.certified_bound * abs(scale),
            res.terms_used,
            [r * abs(scale) for r in res.per_series_remainders],
            res.diagnostics,
        )
        return val, ref
    if f == "erfc":
        res = _auto(lambda d: special.erfc_dyadic(x, d), (10, 20, 40, 80), t)
        return res, oracle.erfc_oracle(x)
    if f == "incomplete_gamma":
        s = cfg.s_exp
        res = _auto(lambda d: special.incomplete_gamma_dyadic(s, x, d), (10, 20, 40, 80), t)
        # convert Gamma(1 - s) e^x x^{-s} Gamma(s, x) to Gamma(s, x)
        scale = cmath.exp(s * cmath.log(x) - x) / math.gamma(1.0 - s)
        val = EvalResult(
            res.value * scale,
            res.certified_bound * abs(scale),
            res.terms_used,
            [r * abs(scale) for r in res.per_series_remainders],
            res.diagnostics,
        )
        return val, oracle.incomplete_gamma_oracle(s, x)
    raise DomainError(f"unknown function {f!r}")


def _meets(cfg: RunConfig, res: EvalResult, ref: Optional[complex]) -> Tuple[float, bool]:
    if ref is None:
        return math.nan, res.certified_bound <= cfg.target
    err = abs(res.value - ref)
    scale = abs(ref) if cfg.function == "airy" else 1.0
    return err, err <= cfg.target * scale


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def write_rows(rows: List[Dict], fields: Sequence[str], cfg: RunConfig, extra: Optional[Dict] = None) -> None:
    """CSV or JSON (same columns), to ``cfg.out`` or stdout."""
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    try:
        if cfg.fmt == "json":
            doc = {"columns": list(fields), "rows": [{k: r.get(k, "") for k in fields} for r in rows]}
            if extra:
                doc.update(extra)
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(fields)
            for r in rows:
                w.writerow([r.get(k, "") for k in fields])
    finally:
        if cfg.out:
            fh.close()


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DYADIK_THREADS", "0")) or (os.cpu_count() or 1))
    except ValueError:
        return 1


def _map(fn, items):
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_eval(cfg: RunConfig) -> int:
    """One row per grid point; exit 0 iff every row meets the target."""

    def row(pt):
        x, arg = pt
        res, ref = evaluate_function(cfg, x, arg)
        err, ok = _meets(cfg, res, ref)
        return ok, {
            "x_re": _fmt(x.real),
            "x_im": _fmt(x.imag),
            "value_re": _fmt(res.value.real),
            "value_im": _fmt(res.value.imag),
            "certified_bound": _fmt(res.certified_bound),
            "oracle_re": _fmt(ref.real) if ref is not None else "nan",
            "oracle_im": _fmt(ref.imag) if ref is not None else "nan",
            "abs_error": _fmt(err),
            "terms_used": res.terms_used,
        }

    out = _map(row, list(cfg.points))
    write_rows([r for _, r in out], ROW_FIELDS, cfg)
    return EXIT_OK if all(ok for ok, _ in out) else EXIT_TOLERANCE


def cmd_plan(cfg: RunConfig, region: Tuple[float, Tuple[float, float]]) -> int:
    """Print the truncation plan for an engine-backed function as JSON."""
    f = cfg.function
    if f in ("ei_plus", "ei_left"):
        beta = special.EI_LEFT_BETA if f == "ei_left" else (cfg.beta if cfg.beta is not None else special.EI_BETA)
        plan = plan_truncation((special.ei_element(), beta), region, cfg.target)
    elif f in ("airy_h", "bessel_h"):
        nu = 1.0 / 3.0 if f == "airy_h" else cfg.nu
        K = special.BesselNormalization.for_order(nu).integration_by_parts_count
        r, (lo, hi) = region
        plan = plan_truncation(
            (special.bessel_k_element(nu), -1.0), (r, (lo + math.pi, hi + math.pi)), cfg.target * r**K
        )
    else:
        raise DomainError(f"plan is available for ei_plus, ei_left, airy_h and bessel_h, not {f}")
    text = plan.to_json()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def antistokes_plan(n: int = 2000, N: int = 45) -> TruncationPlan:
    """Fixed generous plan for points next to the cut ``-i[0, inf)``."""
    ell = tuple(sorted((max(2, int(n * 0.75**k)) for k in range(1, N)), reverse=True))
    return TruncationPlan(n, ell, N)


STOKES_FIELDS = ("x", "re_f", "exp_x_im_f", "ln_minus_im_f", "certified_bound", "oracle_re", "oracle_im", "abs_error")
ANTISTOKES_FIELDS = (
    "t",
    "left_re",
    "left_im",
    "left_bound",
    "left_abs_error",
    "right_re",
    "right_im",
    "right_bound",
    "right_abs_error",
)


def stokes_rows(start: float, stop: float, count: int, target: float) -> List[Dict]:
    """``e^{-x} Ei^+(x)`` along the Stokes ray ``x > 0``."""
    plan = plan_truncation((special.ei_element(), special.EI_BETA), (start, (0.0, 0.0)), target)

    def row(x):
        res = special.ei_plus(x, plan)
        ref = oracle.ei_plus_oracle(x)
        f = res.value
        return {
            "x": _fmt(x),
            "re_f": _fmt(f.real),
            "exp_x_im_f": _fmt(math.exp(x) * f.imag),
            "ln_minus_im_f": _fmt(math.log(-f.imag)) if f.imag < 0 else "nan",
            "certified_bound": _fmt(res.certified_bound),
            "oracle_re": _fmt(ref.real),
            "oracle_im": _fmt(ref.imag),
            "abs_error": _fmt(abs(f - ref)),
        }

    return _map(row, list(np.linspace(start, stop, count)))


def antistokes_rows(start: float, stop: float, count: int, offset: float = 0.3) -> List[Dict]:
    """``e^{-x} Ei^+(x)`` on ``x = -it - offset`` (asymptotic side, ``arg x``
    near ``3 pi/2``) and ``x = -it + offset`` (oscillatory side, ``arg x``
    near ``-pi/2``).

    The left side uses the cut on the Stokes ray (``beta = -1``), far from
    the points.  The right side can only be reached with the cut along
    ``-i[0, inf)`` and is evaluated next to it with a fixed large plan.
    """
    plan_left = plan_truncation((special.ei_element(), -1.0 + 0j), (math.hypot(start, offset), (1.5 * math.pi - 0.5, 1.5 * math.pi)), 1e-10)
    plan_right = antistokes_plan()

    def row(t):
        xl = complex(-offset, -t)
        al = 2.0 * math.pi + cmath.phase(xl)
        xr = complex(offset, -t)
        ar = cmath.phase(xr)
        left = special.ei_plus_beta(xl, -1.0, plan_left, al)
        right = special.ei_plus_beta(xr, special.EI_BETA, plan_right, ar)
        ol = oracle.ei_plus_oracle(xl, al)
        orr = oracle.ei_plus_oracle(xr, ar)
        return {
            "t": _fmt(t),
            "left_re": _fmt(left.value.real),
            "left_im": _fmt(left.value.imag),
            "left_bound": _fmt(left.certified_bound),
            "left_abs_error": _fmt(abs(left.value - ol)),
            "right_re": _fmt(right.value.real),
            "right_im": _fmt(right.value.imag),
            "right_bound": _fmt(right.certified_bound),
            "right_abs_error": _fmt(abs(right.value - orr)),
        }

    return _map(row, list(np.linspace(start, stop, count)))


def cmd_stokes_scan(cfg: RunConfig, scan: str, grid: Tuple[float, float, int]) -> int:
    """Stokes-ray or antistokes scans of ``e^{-x} Ei^+(x)``."""
    if cfg.function != "ei_plus":
        raise DomainError("stokes-scan supports ei_plus only")
    a, b, n = grid
    if scan == "stokes":
        rows = stokes_rows(a, b, n, cfg.target)
        write_rows(rows, STOKES_FIELDS, cfg)
        ok = all(float(r["abs_error"]) <= cfg.target for r in rows)
    else:
        rows = antistokes_rows(a, b, n)
        write_rows(rows, ANTISTOKES_FIELDS, cfg)
        ok = all(float(r["left_abs_error"]) <= cfg.target for r in rows)
    return EXIT_OK if ok else EXIT_TOLERANCE


REPORT_FIELDS = ("section", "k", "m", "x", "magnitude", "rel_error", "certified_bound", "digits", "terms_used")


def cmd_accuracy_report(cfg: RunConfig) -> int:
    """Term magnitudes per series at the first grid point, then relative
    error and matching digits along the grid."""
    rows: List[Dict] = []
    x0, a0 = cfg.points[0]
    if cfg.function in ("ei_plus", "airy") and cfg.plan is not None:
        if cfg.function == "ei_plus":
            exp = special._ei_expansion(cfg.beta or special.EI_BETA, cfg.plan, "ei_plus")
            xt = x0
        else:
            exp = special._bessel_expansion(1.0 / 3.0, cfg.plan)
            xt = -special.airy_u(x0.real)
        for k, terms in enumerate(series_terms(exp, xt)):
            for m, v in enumerate(terms, start=1):
                rows.append({"section": "terms", "k": k, "m": m, "x": _fmt(x0.real), "magnitude": _fmt(abs(v))})

    def row(pt):
        x, arg = pt
        res, ref = evaluate_function(cfg, x, arg)
        rel = abs(res.value - ref) / abs(ref) if ref else math.nan
        digits = -math.log10(max(rel, 1e-17))
        _, meets = _meets(cfg, res, ref)
        return meets, {
            "section": "error",
            "x": _fmt(abs(x)),
            "rel_error": _fmt(rel),
            "certified_bound": _fmt(res.certified_bound),
            "digits": _fmt(digits),
            "terms_used": res.terms_used,
        }

    out = _map(row, list(cfg.points))
    rows.extend(r for _, r in out)
    write_rows(rows, REPORT_FIELDS, cfg)
    ok = all(meets for meets, _ in out)
    return EXIT_OK if ok else EXIT_TOLERANCE


RESOLVENT_FIELDS = ("N", "resolvent_error", "predicted_error", "positive_error", "positive_discrepancy", "fractional_error")


def cmd_resolvent_demo(cfg: RunConfig, matrix: Optional[str], dim: int, seed: int, lam: float, Ns: Sequence[int]) -> int:
    """Errors of the dyadic resolvent, inverse and square-root identities."""
    from . import resolvent

    if matrix:
        H = resolvent.HermitianMatrix.read(matrix)
    else:
        rng = np.random.default_rng(seed)
        B = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        H = resolvent.HermitianMatrix(0.5 * (B + B.conj().T))
    exact = np.linalg.inv(H.entries - 1j * lam * np.eye(H.dim))
    P = resolvent.HermitianMatrix(H.entries @ H.entries + np.eye(H.dim))
    P_inv = np.linalg.inv(P.entries)
    P_root = P.apply(lambda mu: mu**-0.5)
    rows = []
    for N in Ns:
        r = resolvent.dyadic_resolvent(H, lam, N)
        pred = resolvent.resolvent_remainder(H, lam, N)
        pos = resolvent.dyadic_inverse_positive(P, N)
        frac = resolvent.dyadic_fractional_power(P, 0.5, N)
        rows.append(
            {
                "N": N,
                "resolvent_error": _fmt(np.linalg.norm(r - exact, 2)),
                "predicted_error": _fmt(np.linalg.norm(pred, 2)),
                "positive_error": _fmt(np.linalg.norm(pos.resolvent_form - P_inv, 2)),
                "positive_discrepancy": _fmt(pos.discrepancy),
                "fractional_error": _fmt(np.linalg.norm(frac - P_root, 2)),
            }
        )
    write_rows(rows, RESOLVENT_FIELDS, cfg)
    return EXIT_OK if float(rows[-1]["resolvent_error"]) <= cfg.target else EXIT_TOLERANCE


DECOMPOSE_FIELDS = ("element", "location", "residue_re", "residue_im", "entire_part_residue", "entire_part_jump")


def cmd_decompose_demo(cfg: RunConfig, poles: Sequence[complex], residues: Sequence[complex], mu: float) -> int:
    """Split ``sum r_i/(p_i - p)`` into elements and report residues and jumps."""
    poles = [as_complex(p) for p in poles]
    residues = [as_complex(r) for r in residues]
    if len(residues) != len(poles):
        raise DomainError("need one residue per pole")

    def F(p):
        return sum(r / (w - p) for w, r in zip(poles, residues))

    elements, G = decompose_elements(F, poles, mu, 0.0)
    rows = []
    worst = 0.0
    for i, e in enumerate(elements):
        h = e.strip.half_width
        for w in poles:
            res = _residue_by_circle(e, w, 0.25 * h)
            g_res = abs(_residue_by_circle(G, w, 0.25 * h))
            jumps = [jump_across(G, w + h * d, d) for d in (1.0, -1.0)]
            jumps.append(jump_across(G, w - 1j * h * e.strip.direction, e.strip.direction))
            jump = max(jumps)
            rows.append(
                {
                    "element": i,
                    "location": f"{w.real:.17g}{w.imag:+.17g}j",
                    "residue_re": _fmt(res.real),
                    "residue_im": _fmt(res.imag),
                    "entire_part_residue": _fmt(g_res),
                    "entire_part_jump": _fmt(jump),
                }
            )
            worst = max(worst, g_res, jump)
    extra = {"growth_rate": measured_growth_rate(G)}
    write_rows(rows, DECOMPOSE_FIELDS, cfg, extra if cfg.fmt == "json" else None)
    return EXIT_OK if worst <= 1e-8 else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fn", default="ei_plus", choices=FUNCTIONS)
    p.add_argument("--x", help="single point, e.g. 5 or 3+2j")
    p.add_argument("--x-mag", type=float, help="modulus of a single point")
    p.add_argument("--x-grid", type=parse_grid, help="moduli start:stop:count")
    p.add_argument("--x-arg", type=parse_angle, help="continuously tracked argument, e.g. -90deg or 1.2rad")
    p.add_argument("--beta-re", type=float)
    p.add_argument("--beta-im", type=float)
    p.add_argument("--target", type=_positive, default=1e-8)
    p.add_argument("--plan-file", help="TruncationPlan JSON")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--nu", type=float, default=0.25, help="Bessel order for bessel_h")
    p.add_argument("--s", type=float, default=0.5, help="exponent for incomplete_gamma")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyadik", description="Dyadic factorial expansions")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("eval", "plan", "stokes-scan", "accuracy-report", "resolvent-demo", "decompose-demo"):
        p = sub.add_parser(name)
        _common(p)
        if name == "stokes-scan":
            p.add_argument("--scan", choices=("stokes", "antistokes"), default="stokes")
        if name == "resolvent-demo":
            p.add_argument("--matrix", help="plain-text matrix file")
            p.add_argument("--dim", type=int, default=8)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--lam", type=float, default=1.0)
            p.add_argument("--N", type=int, nargs="+", default=[10, 20, 30])
        if name == "decompose-demo":
            p.add_argument("--poles", default="1,2", help="comma-separated complex poles")
            p.add_argument("--residues", default="1,1")
            p.add_argument("--mu", type=float, default=2.0)
    return parser


def _config(args) -> RunConfig:
    beta = None
    if args.beta_re is not None or args.beta_im is not None:
        beta = complex(args.beta_re or 0.0, args.beta_im or 0.0)
    plan = None
    if args.plan_file:
        with open(args.plan_file) as fh:
            plan = TruncationPlan.from_json(fh.read())
    return RunConfig(
        command=args.command,
        function=args.fn,
        target=args.target,
        beta=beta,
        plan=plan,
        out=args.out,
        fmt=args.format,
        nu=args.nu,
        s_exp=args.s,
    )


def _complex_list(text: str) -> List[complex]:
    return [complex(t.strip().replace("i", "j")) for t in text.split(",") if t.strip()]


def _attach_negative_values(argv: Sequence[str]) -> List[str]:
    # "--x-arg -90deg" would otherwise be read as an unknown option
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--x-arg", "--x", "--beta-re", "--beta-im", "--poles", "--residues", "--s", "--nu"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_attach_negative_values(argv))
    try:
        cfg = _config(args)
        if args.command == "eval":
            cfg.points = grid_points(args)
            return cmd_eval(cfg)
        if args.command == "accuracy-report":
            cfg.points = grid_points(args)
            return cmd_accuracy_report(cfg)
        if args.command == "plan":
            pts = grid_points(args)
            r = min(abs(x) for x, _ in pts)
            a = [arg if arg is not None else cmath.phase(x) for x, arg in pts]
            return cmd_plan(cfg, (r, (min(a), max(a))))
        if args.command == "stokes-scan":
            grid = args.x_grid or ((1.0, 14.0, 27) if args.scan == "stokes" else (0.5, 12.0, 47))
            return cmd_stokes_scan(cfg, args.scan, grid)
        if args.command == "resolvent-demo":
            return cmd_resolvent_demo(cfg, args.matrix, args.dim, args.seed, args.lam, args.N)
        if args.command == "decompose-demo":
            return cmd_decompose_demo(cfg, _complex_list(args.poles), _complex_list(args.residues), args.mu)
    except (DomainError, InfeasibleTargetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DyadikError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
