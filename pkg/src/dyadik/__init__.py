"""Dyadic factorial expansions of Laplace transforms.

A Laplace transform ``f(x) = int e^{-xp} F(p) dp`` whose Borel transform
``F`` has one singularity is written as a base factorial series plus a
ladder of factorial series in ``2^k x``.  The expansions converge
geometrically on a plane cut along one ray.
"""

from .engine import (
    BoundMeasure,
    DyadicExpansion,
    EvalResult,
    FunctionElement,
    PoleTerm,
    TruncationPlan,
    build_expansion,
    coefficient,
    contraction_constants,
    decompose_elements,
    evaluate,
    plan_truncation,
    validate_beta,
)
from .numerics import ConvergenceError, DomainError, DyadikError, PoleError
from .pade import PadeApproximant, dyadic_from_pade, pade_from_taylor
from .resolvent import (
    HermitianMatrix,
    dyadic_fractional_power,
    dyadic_inverse_positive,
    dyadic_resolvent,
    unitary_evolution,
)
from .special import (
    airy_h,
    bessel_h,
    ei_left,
    ei_plus,
    erfc_dyadic,
    incomplete_gamma_dyadic,
    psi_dyadic,
)

__version__ = "0.1.0"

__all__ = [
    "BoundMeasure",
    "ConvergenceError",
    "DomainError",
    "DyadicExpansion",
    "DyadikError",
    "EvalResult",
    "FunctionElement",
    "HermitianMatrix",
    "PadeApproximant",
    "PoleError",
    "PoleTerm",
    "TruncationPlan",
    "airy_h",
    "bessel_h",
    "build_expansion",
    "coefficient",
    "contraction_constants",
    "decompose_elements",
    "dyadic_fractional_power",
    "dyadic_from_pade",
    "dyadic_inverse_positive",
    "dyadic_resolvent",
    "ei_left",
    "ei_plus",
    "erfc_dyadic",
    "evaluate",
    "incomplete_gamma_dyadic",
    "pade_from_taylor",
    "plan_truncation",
    "psi_dyadic",
    "unitary_evolution",
    "validate_beta",
]
