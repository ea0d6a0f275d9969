import itertools
import random

import pytest

from msplect.exterior import MultiVec, schouten, wedge
from msplect.identities import extended_cartan
from msplect.lie import (
    ActionData,
    ActionError,
    LieAlgebraData,
    LieAlgebraError,
    WedgePower,
    basis_wedges,
    ce_differential,
    ce_differential_fields,
    ce_differential_generator,
    ce_matrix,
    in_lie_kernel,
    infinitesimal_generator,
    lemma_formula_residual,
    lie_kernel,
    so3_rotation_action,
    translation_action,
    wedge_bracket,
    wedge_lie,
)
from msplect.linalg import rank
from msplect.parser import parse_expr
from msplect.polynomial import Chart
from msplect.random_gen import rand_form

SO3 = LieAlgebraData.so3()
E = WedgePower.basis


def heisenberg():
    return LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}})


def affine_line():
    return LieAlgebraData.from_brackets(2, {(0, 1): {1: 1}})


ALGEBRAS = [LieAlgebraData.abelian(3), SO3, heisenberg(), affine_line(),
            LieAlgebraData.from_brackets(4, {(0, 1): {1: 1}, (0, 2): {2: 2}, (0, 3): {3: -1}})]


def rand_wedge(rng, g, k):
    idx = basis_wedges(g.dim, k)
    return WedgePower(k, {i: rng.randint(-3, 3) for i in rng.sample(idx, min(len(idx), 2))})


def test_structure_constants_checked():
    with pytest.raises(LieAlgebraError):
        LieAlgebraData(2, [[[0, 0], [1, 0]], [[1, 0], [0, 0]]])
    # [e1,e2]=e2, [e1,e3]=e1 violates Jacobi
    with pytest.raises(LieAlgebraError):
        LieAlgebraData.from_brackets(3, {(0, 1): {1: 1}, (0, 2): {0: 1}, (1, 2): {2: 1}})


def test_ce_examples():
    ab = LieAlgebraData.abelian(3)
    for k in range(4):
        for idx in basis_wedges(3, k):
            assert ce_differential(ab, WedgePower(k, {idx: 1})).is_zero()
    assert ce_differential(SO3, E(0, 1)) == -E(2)
    assert ce_differential(SO3, ce_differential(SO3, E(0, 1, 2))).is_zero()
    assert ce_differential(SO3, E(0)).is_zero()


def test_d_squared_zero_on_all_algebras():
    for g in ALGEBRAS:
        for k in range(2, g.dim + 1):
            for idx in basis_wedges(g.dim, k):
                p = WedgePower(k, {idx: 1})
                assert ce_differential(g, ce_differential(g, p)).is_zero()


def test_lie_kernel_examples():
    ab = LieAlgebraData.abelian(3)
    for k in range(4):
        assert sorted(next(iter(p.coeffs)) for p in lie_kernel(ab, k)) == basis_wedges(3, k)
    assert lie_kernel(SO3, 2) == []
    assert lie_kernel(SO3, 0) == [WedgePower.one()]
    assert [len(lie_kernel(SO3, k)) for k in range(1, 4)] == [3, 0, 1]


def test_lie_kernel_rank_nullity():
    for g in ALGEBRAS:
        for k in range(g.dim + 1):
            ker = lie_kernel(g, k)
            for p in ker:
                assert in_lie_kernel(g, p)
            n = len(basis_wedges(g.dim, k))
            r = rank(ce_matrix(g, k)) if k >= 1 else 0
            assert len(ker) == n - r


def test_wedge_bracket_examples():
    assert wedge_bracket(SO3, E(0), E(1)) == E(2)
    assert wedge_bracket(LieAlgebraData.abelian(3), E(0, 1), E(2)).is_zero()


def test_lemma_formula_random():
    rng = random.Random(11)
    for g in ALGEBRAS:
        for _ in range(25):
            k, l = rng.randint(1, g.dim), rng.randint(1, g.dim)
            if k + l > g.dim + 1:
                continue
            assert lemma_formula_residual(g, rand_wedge(rng, g, k), rand_wedge(rng, g, l)).is_zero()


def test_bracket_of_kernel_elements_is_boundary():
    g = ALGEBRAS[-1]
    for k, l in itertools.product(range(1, g.dim + 1), repeat=2):
        for p in lie_kernel(g, k):
            for q in lie_kernel(g, l):
                br = wedge_bracket(g, p, q)
                assert in_lie_kernel(g, br)
                sign = -1 if k % 2 else 1
                assert br * sign == ce_differential(g, wedge_lie(p, q))


def test_translation_generators():
    ch = Chart(["q1", "q2", "q3", "p1", "p2", "p3"])
    act = translation_action(ch, [0, 1, 2])
    assert infinitesimal_generator(act, E(0)) == parse_expr(ch, "@q1")
    assert infinitesimal_generator(act, E(0, 1)) == parse_expr(ch, "@q1^@q2")


def test_action_convention_is_checked():
    ch = Chart(["x", "y", "z"])
    act = so3_rotation_action(ch)
    assert act.homomorphism_defects() == []
    flipped = [-v for v in act.generators]
    with pytest.raises(ActionError):
        ActionData(SO3, ch, flipped)


def _so3_setup():
    ch = Chart(["a", "b", "c", "d"])
    return ch, so3_rotation_action(ch)


def test_generator_of_bracket_random():
    ch, act = _so3_setup()
    rng = random.Random(5)
    for _ in range(30):
        k, l = rng.randint(1, 3), rng.randint(1, 3)
        if k + l > 4:
            continue
        p, q = rand_wedge(rng, SO3, k), rand_wedge(rng, SO3, l)
        lhs = infinitesimal_generator(act, wedge_bracket(SO3, p, q))
        rhs = -schouten(infinitesimal_generator(act, p), infinitesimal_generator(act, q))
        assert lhs == rhs


def test_field_differential_is_minus_generator_of_boundary():
    ch, act = _so3_setup()
    for k in (1, 2, 3):
        for idx in basis_wedges(3, k):
            p = WedgePower(k, {idx: 1})
            dv = ce_differential_generator(act, p)
            assert dv == -infinitesimal_generator(act, ce_differential(SO3, p))


def test_extended_cartan_random_decomposable():
    ch, act = _so3_setup()
    rng = random.Random(9)
    for _ in range(40):
        k = rng.randint(1, 3)
        idx = tuple(sorted(rng.sample(range(3), k)))
        fields = [act.generators[i] for i in idx]
        tau = rand_form(rng, ch, rng.randint(k - 1, 4))
        vdp = infinitesimal_generator(act, ce_differential(SO3, WedgePower(k, {idx: 1})))
        assert extended_cartan(fields, tau).is_zero()
        assert extended_cartan(fields, tau, -vdp).is_zero()


def test_extended_cartan_printed_sign_fails_for_nonabelian():
    # with +V_∂p the identity needs [V_ξ,V_η] = +V_[ξ,η], the opposite of the action convention
    ch, act = _so3_setup()
    rng = random.Random(2)
    fails = 0
    for _ in range(10):
        tau = rand_form(rng, ch, 3)
        fields = [act.generators[0], act.generators[1]]
        vdp = infinitesimal_generator(act, ce_differential(SO3, E(0, 1)))
        fails += not extended_cartan(fields, tau, vdp).is_zero()
    assert fails >= 8


def test_field_ce_differential_degree_one_is_zero():
    ch = Chart(["x", "y"])
    assert ce_differential_fields([MultiVec.basis(ch, (0,))]).is_zero()
    X, Y = parse_expr(ch, "y*@x"), parse_expr(ch, "x*@y")
    assert ce_differential_fields([X, Y]) == -schouten(X, Y)
    assert wedge(X, Y) == -wedge(Y, X)
