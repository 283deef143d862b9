import cmath
import math

import numpy as np
import pytest

from dyadik.engine import (
    BoundMeasure,
    DyadicExpansion,
    FunctionElement,
    InfeasibleTargetError,
    InvalidBetaError,
    PoleRayError,
    PoleTerm,
    TruncationPlan,
    _residue_by_circle,
    bound_measure,
    build_expansion,
    coefficient,
    coefficient_rows,
    contraction_constants,
    decompose_elements,
    evaluate,
    jump_across,
    measured_growth_rate,
    plan_truncation,
    pole_element,
    series_terms,
    validate_beta,
)
from dyadik.numerics import DomainError
from dyadik.oracle import ei_plus_oracle
from dyadik.special import airy_coefficient_direct, airy_element, ei_coefficients, ei_element


def test_validate_beta_examples():
    b, th, c = validate_beta(1j * math.pi)
    assert b == pytest.approx(math.pi / 2) and th == pytest.approx(math.pi / 2) and c == pytest.approx(3.0)
    b, th, c = validate_beta(-1.0)
    assert b == pytest.approx(math.pi) and th == pytest.approx(0.0) and c == pytest.approx(math.e - 2)


@pytest.mark.parametrize("beta", [1.0, 0.0, -4.0, 1j * 4])
def test_validate_beta_rejects(beta):
    with pytest.raises(InvalidBetaError):
        validate_beta(beta)


def test_contraction_constants_ranges():
    for beta in (1j * math.pi, -1.0, -2 + 1j, cmath.exp(1.2j * math.pi) * 2):
        c0, c1 = contraction_constants(beta)
        assert 0 < c0 <= 1
        assert 1 / math.sqrt(2) <= c1 < 1
    assert contraction_constants(1j * math.pi)[0] == 1.0
    assert contraction_constants(-1.0)[0] == pytest.approx(1 - math.exp(-1))


def test_pole_element_reproduces_ei_coefficients():
    elem = ei_element()
    for beta in (1j * math.pi, -1.0, -2 + 0.5j):
        for k in (0, 1, 3):
            row = coefficient_rows(elem, beta, 12, k).values
            assert np.max(np.abs(row - ei_coefficients(beta, 12, k))) < 1e-13


def _test_cut_element():
    # Delta F = 1/(1 + t)^3 along [1, inf), no poles
    return FunctionElement(0.0, lambda t: 1.0 / (1.0 + t) ** 3, 3.0, 1.0, name="cube")


def test_coefficient_large_k_limit():
    elem = _test_cut_element()
    # kernel -> 1/2 as beta s/2^k -> 0; int Delta F = 1/2
    limit = 1.0 / (2j * math.pi) * 0.5 * 0.5
    assert abs(coefficient(elem, -1.0, 1, 40) - limit) < 1e-10


def test_coefficient_matches_direct_quadrature():
    from scipy import integrate

    elem = _test_cut_element()
    for m in (1, 2, 5):
        def f(t):
            E = math.exp(-(1.0 + t))
            return E ** (m - 1) / (E - 1.0) ** m / (1.0 + t) ** 3

        ref = integrate.quad(f, 0, np.inf, epsabs=1e-15, epsrel=1e-13)[0] / (2j * math.pi)
        assert abs(coefficient(elem, -1.0, m, 0) - ref) < 1e-12


def test_airy_leading_coefficient_independent_quadrature():
    # the element adds the pole part -1/(2 pi (1 - p)) to the printed cut integral
    pole = -1.0 / (2 * math.pi) / (math.exp(-1.0) - 1.0)
    ref = airy_coefficient_direct(1) / (2 * math.pi) + pole
    assert abs(coefficient(airy_element(), -1.0, 1, 0) - ref) < 1e-8


def test_real_coefficients_for_real_cut():
    exp = build_expansion(airy_element(), -1.0, TruncationPlan(8, (6, 4, 2), 4))
    for row in [exp.d0] + exp.dk:
        assert np.max(np.abs(row.imag)) < 1e-12


def test_smallest_plan():
    elem = ei_element()
    exp = build_expansion(elem, 1j * math.pi, TruncationPlan(1, (), 1))
    x = 3 + 1j
    y = x / (1j * math.pi)
    assert abs(evaluate(exp, x).value - exp.d0[0] / y) < 1e-15
    assert evaluate(exp, x).terms_used == 1


def test_ei_expansion_against_oracle_at_stokes_point():
    plan = plan_truncation((ei_element(), 1j * math.pi), (5.0, (0.0, 0.0)), 1e-11)
    exp = build_expansion(ei_element(), 1j * math.pi, plan)
    res = evaluate(exp, 5.0)
    err = abs(res.value - ei_plus_oracle(5.0))
    assert err < 1e-10
    assert err <= res.certified_bound


def test_pole_ray_rejected():
    exp = build_expansion(ei_element(), 1j * math.pi, TruncationPlan(4, (2,), 2))
    with pytest.raises(PoleRayError):
        evaluate(exp, -3j)
    with pytest.raises(PoleRayError):
        evaluate(exp, 0.0)


def test_plan_trivial_target():
    plan = plan_truncation((ei_element(), 1j * math.pi), (4.0, (0.0, 0.0)), 10.0)
    assert (plan.n, plan.ell, plan.N) == (1, (), 1)


def test_plan_meets_target_on_region():
    elem = ei_element()
    plan = plan_truncation((elem, 1j * math.pi), (6.0, (-0.5, 2.0)), 1e-8)
    exp = build_expansion(elem, 1j * math.pi, plan)
    for a in np.linspace(-0.5, 2.0, 7):
        for r in (6.0, 9.0):
            res = evaluate(exp, r * cmath.exp(1j * a))
            assert res.certified_bound < 1e-8
    assert all(a >= b for a, b in zip(plan.ell, plan.ell[1:]))


def test_plan_infeasible():
    with pytest.raises(InfeasibleTargetError):
        plan_truncation((ei_element(), 1j * math.pi), (0.5, (0.0, 0.0)), 1e-14, max_terms=40)


def test_plan_validation():
    with pytest.raises(DomainError):
        TruncationPlan(3, (1, 2), 3)
    with pytest.raises(DomainError):
        TruncationPlan(3, (1,), 3)
    with pytest.raises(DomainError):
        TruncationPlan(0, (), 1)


def test_plan_json_roundtrip():
    plan = TruncationPlan(10, (5, 3, 2), 4, 1e-5)
    assert TruncationPlan.from_json(plan.to_json()) == plan


def test_expansion_serialization_roundtrip():
    exp = build_expansion(airy_element(), -1.0, TruncationPlan(6, (4, 2), 3))
    back = DyadicExpansion.from_json(exp.to_json())
    assert np.array_equal(back.d0, exp.d0)
    assert all(np.array_equal(a, b) for a, b in zip(back.dk, exp.dk))
    a, b = evaluate(exp, -7.5), evaluate(back, -7.5)
    assert a.value == b.value and a.certified_bound == b.certified_bound


def test_series_terms_sum_to_value():
    exp = build_expansion(ei_element(), 1j * math.pi, TruncationPlan(8, (4, 2), 3))
    x = 4 - 1j
    total = sum(t.sum() for t in series_terms(exp, x))
    assert abs(total - evaluate(exp, x).value) < 1e-15


def test_bound_measure_of_pole_element():
    m = bound_measure(pole_element(2.0))
    assert np.allclose(m.points, [1.0]) and np.allclose(m.masses, [2.0])
    assert BoundMeasure.from_dict(m.to_dict()).total() == 2.0


def test_higher_order_pole_element():
    # 1/(1 - p)^2 has Laplace transform along beta = -1 obtainable in closed form;
    # compare against direct quadrature of its transform on the negative axis
    from dyadik.oracle import ContourSpec, laplace_quadrature

    elem = FunctionElement(0.0, None, 2.0, 0.0, pole_terms=[PoleTerm(2, 1.0)], name="double")
    plan = plan_truncation((elem, -1.0), (4.0, (math.pi - 0.5, math.pi + 0.5)), 1e-9)
    exp = build_expansion(elem, -1.0, plan)
    x = -5.0 + 1j
    ref = laplace_quadrature(lambda p: 1.0 / (1.0 - p) ** 2, x, ContourSpec.ray(math.pi))[0]
    res = evaluate(exp, x)
    assert abs(res.value - ref) <= res.certified_bound
    assert res.certified_bound < 1e-9


def test_evaluation_error_decreases_with_plan_size():
    # sector of half-opening 0.77 around the cut -i[0, inf) excluded
    elem = ei_element()
    pts = [(r * cmath.exp(1j * a), a) for r in (3, 6, 12) for a in np.linspace(-0.8, 3.9, 10)]
    xs = [x for x, _ in pts]
    ref = [ei_plus_oracle(x, arg=a) for x, a in pts]
    worst = []
    for n, N in ((5, 3), (15, 8), (40, 20), (80, 30)):
        ell = tuple(max(n // 2**k, 1) for k in range(1, N))
        exp = build_expansion(elem, 1j * math.pi, TruncationPlan(n, ell, N))
        worst.append(max(abs(evaluate(exp, x).value - r) for x, r in zip(xs, ref)))
    assert all(a > b for a, b in zip(worst, worst[1:]))


def test_decomposition_single_pole():
    F = lambda p: 1.0 / (1.0 - p)
    elements, G = decompose_elements(F, [1.0], 2.0, 0.0)
    assert len(elements) == 1
    assert abs(elements[0].residue + 1.0) < 1e-12
    assert abs(_residue_by_circle(G, 1.0, 0.1)) < 1e-10


def test_decomposition_two_poles():
    F = lambda p: 1.0 / (1.0 - p) + 1.0 / (2.0 - p)
    dec = decompose_elements(F, [1.0, 2.0], 2.0, 0.0)
    e1, e2 = dec.elements
    assert abs(_residue_by_circle(e1, 1.0, 0.1) + 1) < 1e-8
    assert abs(_residue_by_circle(e1, 2.0, 0.1)) < 1e-8
    assert abs(_residue_by_circle(e2, 2.0, 0.1) + 1) < 1e-8
    assert abs(_residue_by_circle(e2, 1.0, 0.1)) < 1e-8
    for w in (1.0, 2.0):
        assert abs(_residue_by_circle(dec.entire_part, w, 0.1)) < 1e-8
    assert measured_growth_rate(dec.entire_part) < 2.0


def test_decomposition_overlap_and_limits():
    F = lambda p: 1.0 / (1.0 - p)
    with pytest.raises(DomainError):
        decompose_elements(F, [1.0], 1.0, 2.0)
    with pytest.raises(DomainError):
        decompose_elements(F, [1, 2, 3, 4, 5], 2.0, 0.0)
    with pytest.raises(DomainError):
        decompose_elements(F, [1, 1j, -1], 2.0, 0.0)


def test_jump_detector_sees_a_log_cut():
    # log has jump 2 pi i across the negative axis
    assert jump_across(lambda p: cmath.log(p), -1.0, 1j) == pytest.approx(2 * math.pi, rel=1e-8)
    assert jump_across(lambda p: cmath.exp(p), -1.0, 1j) < 1e-12
