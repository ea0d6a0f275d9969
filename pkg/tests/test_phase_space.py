import random

import pytest

from msplect.exterior import DegreeError, Form, MultiVec, _contract, ext_d, lie_derivative, schouten
from msplect.multisymplectic import check_nplectic, poisson_form, zeta
from msplect.parser import parse_expr
from msplect.phase_space import (
    BaseMultivector,
    build_phase_space,
    complete_lift,
    is_vertical,
    mixed_bracket_printed_residual,
    mixed_bracket_residual,
    momentum_bracket_printed_residual,
    momentum_bracket_residual,
    momentum_form,
    momentum_pair,
    position_bracket_residual,
    position_form,
    position_pair,
    random_kernel_element,
    verify_phase_brackets,
)
from msplect.polynomial import Chart
from msplect.random_gen import rand_form, rand_multivec


def base(n):
    return Chart([f"q{i}" for i in range(1, n + 1)])


def test_build_examples():
    ps = build_phase_space(base(3), 1)
    assert list(ps.chart.coord_names) == ["q1", "q2", "q3", "p1", "p2", "p3"]
    assert ps.theta == parse_expr(ps.chart, "p1*d(q1) + p2*d(q2) + p3*d(q3)")
    ps2 = build_phase_space(base(3), 2)
    assert list(ps2.chart.coord_names[3:]) == ["p12", "p13", "p23"]
    for ps in (build_phase_space(base(n), k) for n in (1, 2, 3, 4) for k in range(1, n + 1)):
        assert (ext_d(ps.theta) + ps.omega).is_zero()
        assert ps.chart.dim == ps.n + len(ps.fibre)
        assert check_nplectic(ps.system).status == "nplectic"
    with pytest.raises(DegreeError):
        build_phase_space(base(2), 3)


def test_lift_examples():
    ps = build_phase_space(base(3), 1)
    assert complete_lift(ps, parse_expr(ps.base, "@q1")) == parse_expr(ps.chart, "@q1")
    line = build_phase_space(Chart(["q"]), 1)
    assert complete_lift(line, parse_expr(line.base, "q*@q")) == parse_expr(line.chart, "q*@q - p1*@p1")


def test_lift_preserves_theta_and_is_natural():
    rng = random.Random(17)
    for n, k in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)]:
        ps = build_phase_space(base(n), k)
        for _ in range(4):
            Y = rand_multivec(rng, ps.base, 1, 2)
            Z = rand_multivec(rng, ps.base, 1, 2)
            LY, LZ = complete_lift(ps, Y), complete_lift(ps, Z)
            assert lie_derivative(LY, ps.theta).is_zero()
            assert complete_lift(ps, Y * 2 - Z * 3) == LY * 2 - LZ * 3
            assert complete_lift(ps, schouten(Y, Z)) == schouten(LY, LZ)


def test_momentum_examples():
    line = build_phase_space(Chart(["q"]), 1)
    # the classical momentum p comes out as -p under P(Y) = -ζ(2)·Y⌟θ
    assert momentum_form(line, parse_expr(line.base, "@q")) == -parse_expr(line.chart, "p1")
    assert momentum_form(line, MultiVec.zero(line.base, 1)).is_zero()
    ps = build_phase_space(base(2), 1)
    with pytest.raises(DegreeError):
        momentum_form(ps, parse_expr(ps.base, "@q1^@q2"))


def test_momentum_two_definitions_agree():
    rng = random.Random(23)
    for n, k in [(2, 1), (3, 2), (4, 2), (3, 3), (4, 3)]:
        ps = build_phase_space(base(n), k)
        for l in range(1, k + 1):
            for _ in range(3):
                Y = random_kernel_element(rng, ps.base, l)
                assert momentum_form(ps, Y, "pointwise") == momentum_form(ps, Y, "lift")
        Y = rand_multivec(rng, ps.base, 1, 2)
        assert momentum_form(ps, Y, "pointwise") == momentum_form(ps, Y, "lift")


def test_momentum_pair_is_hamiltonian():
    rng = random.Random(29)
    for n, k in [(3, 2), (4, 3)]:
        ps = build_phase_space(base(n), k)
        for l in range(1, k + 1):
            Y = random_kernel_element(rng, ps.base, l)
            pair = momentum_pair(ps, Y)
            assert pair.ok
            assert pair.x_alpha == complete_lift(ps, Y) * zeta(l)


def test_non_kernel_momentum_rejected():
    ps = build_phase_space(base(2), 2)
    X, Y = parse_expr(ps.base, "q2*@q1"), parse_expr(ps.base, "q1*@q2")
    with pytest.raises(ValueError):
        momentum_pair(ps, BaseMultivector.from_fields([X, Y]))


def test_position_forms():
    ps = build_phase_space(base(3), 2)
    assert position_form(ps, parse_expr(ps.base, "d(q1)")) == parse_expr(ps.chart, "d(q1)")
    rng = random.Random(41)
    for _ in range(5):
        a = position_pair(ps, rand_form(rng, ps.base, rng.randint(0, 1)))
        assert a.ok and is_vertical(ps, a.x_alpha)
    assert position_bracket_residual(ps, parse_expr(ps.base, "q1*d(q2)"), parse_expr(ps.base, "q2**2*d(q1)")).is_zero()
    with pytest.raises(DegreeError):
        position_form(ps, parse_expr(ps.base, "d(q1)^d(q2)^d(q3)"))


def _random_inputs(rng, ps):
    moms = [random_kernel_element(rng, ps.base, rng.randint(1, ps.k)) for _ in range(3)]
    poss = [rand_form(rng, ps.base, rng.randint(0, ps.k - 1), n_comps=2) for _ in range(2)]
    return moms, poss


def test_phase_bracket_relations_random():
    rng = random.Random(2718)
    total = 0
    for n in (1, 2, 3, 4):
        for k in range(1, min(n, 3) + 1):
            ps = build_phase_space(base(n), k)
            for _ in range(3):
                moms, poss = _random_inputs(rng, ps)
                rep = verify_phase_brackets(ps, moms, poss)
                assert rep.ok, [(e.relation, e.residual) for e in rep.entries if not e.ok]
                total += len(rep.entries)
    assert total > 100


def test_classical_reduction():
    # k = s = t = 1: {P(X),P(Y)} = P([X,Y]), {π*a, π*b} = 0, {π*h, P(X)} = -π*(X(h))
    ps = build_phase_space(base(3), 1)
    rng = random.Random(5)
    for _ in range(5):
        X, Y = rand_multivec(rng, ps.base, 1, 2), rand_multivec(rng, ps.base, 1, 2)
        assert momentum_bracket_residual(ps, X, Y).is_zero()
        lhs = poisson_form(ps.system, momentum_pair(ps, X), momentum_pair(ps, Y))
        assert lhs == momentum_form(ps, schouten(X, Y))
        h = rand_form(rng, ps.base, 0)
        hp = position_pair(ps, h)
        mixed = poisson_form(ps.system, hp, momentum_pair(ps, X))
        assert mixed == -position_form(ps, _contract(X, ext_d(h)))
        assert mixed_bracket_residual(ps, h, X).is_zero()


def test_momentum_relation_printed_coefficient_fails_for_s1_t2():
    ps = build_phase_space(base(3), 3)
    Y1 = BaseMultivector.from_fields([parse_expr(ps.base, "q2*@q1")])
    Y2 = BaseMultivector.from_fields([parse_expr(ps.base, "@q2"), parse_expr(ps.base, "@q3")])
    assert momentum_bracket_residual(ps, Y1, Y2).is_zero()
    assert not momentum_bracket_printed_residual(ps, Y1, Y2).is_zero()
    assert momentum_bracket_printed_residual(ps, Y2, Y1).is_zero()


def test_mixed_relation_printed_sign_fails_for_even_j():
    ps = build_phase_space(base(3), 3)
    alpha = parse_expr(ps.base, "q1*q3*d(q2)")
    Y = BaseMultivector.from_fields([parse_expr(ps.base, "@q1"), parse_expr(ps.base, "@q2")])
    assert mixed_bracket_residual(ps, alpha, Y).is_zero()
    assert not mixed_bracket_printed_residual(ps, alpha, Y).is_zero()
    ps2 = build_phase_space(base(2), 2)
    a2 = parse_expr(ps2.base, "q2**2*d(q1)")
    Y1 = parse_expr(ps2.base, "q1*@q2")
    assert mixed_bracket_printed_residual(ps2, a2, Y1).is_zero()


def test_commuting_constant_fields_d_term():
    ps = build_phase_space(base(3), 2)
    X, Y = parse_expr(ps.base, "@q1"), parse_expr(ps.base, "@q2")
    br = poisson_form(ps.system, momentum_pair(ps, X), momentum_pair(ps, Y))
    assert br == -parse_expr(ps.chart, "d(p12)")
    assert momentum_bracket_residual(ps, X, Y).is_zero()
    assert Form.zero(ps.chart, 1) == momentum_form(ps, schouten(X, Y))


def test_momentum_relation_printed_coefficient_fails_in_either_contraction_order():
    ps = build_phase_space(base(3), 3)
    Y1 = BaseMultivector.from_fields([parse_expr(ps.base, "q2*@q1")])
    Y2 = BaseMultivector.from_fields([parse_expr(ps.base, "@q2"), parse_expr(ps.base, "@q3")])
    head = poisson_form(ps.system, momentum_pair(ps, Y1), momentum_pair(ps, Y2))
    head = head + momentum_form(ps, schouten(Y1.value(), Y2.value())) * (-1) ** (2 + 1 + 2)
    L1, L2 = complete_lift(ps, Y1), complete_lift(ps, Y2)
    c = zeta(2) * zeta(3)
    assert not (head + ext_d(_contract(L1, _contract(L2, ps.theta))) * c).is_zero()
    assert not (head + ext_d(_contract(L2, _contract(L1, ps.theta))) * c).is_zero()
    assert (head + ext_d(_contract(L2, _contract(L1, ps.theta))) * (-c)).is_zero()
