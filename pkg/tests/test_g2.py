import random
from fractions import Fraction

import pytest

from msplect.exterior import DegreeError, Form, MultiVec, _contract, ext_d, is_closed, schouten, wedge
from msplect.g2 import (
    G2Data,
    G2Error,
    PHI0_SPLIT_TERMS,
    TORUS_NAMES,
    cross,
    cross_coordinates,
    curl,
    curl_coordinates,
    curl_cross_printed_residual,
    curl_cross_residual,
    flat,
    g2_algebra_basis,
    g2_hamiltonian_check,
    g2_torus_example,
    gram_matrix,
    hamiltonian_one_form,
    hodge_star,
    metric_identity_defects,
    phi0,
    pi14,
    pi7,
    sharp,
    split2,
    standard_g2,
    torus_expr,
    torus_phi,
)
from msplect.multisymplectic import Convention, DEFINITION, NotHamiltonian, check_nplectic
from msplect.parser import parse_expr
from msplect.polynomial import Chart
from msplect.random_gen import rand_form, rand_multivec, rand_scalar

G2 = standard_g2()
CH = G2.chart


def e(i):
    return MultiVec.basis(CH, (i - 1,))


def test_phi0_examples():
    phi = phi0(CH)
    assert phi[(0, 1, 2)].constant_term() == 1
    assert len(phi.comps) == 7
    assert ext_d(phi).is_zero()
    with pytest.raises(DegreeError):
        phi0(Chart(["x", "y", "z"]))


def test_metric_identity_all_pairs():
    assert metric_identity_defects(G2) == []
    G = gram_matrix(G2.phi)
    assert all(G[i][j] == (-6 if i == j else 0) for i in range(7) for j in range(7))
    assert G2.orientation == 1


def test_printed_sign_variant_is_split_signature():
    split = phi0(CH, PHI0_SPLIT_TERMS)
    diag = [gram_matrix(split)[i][i] for i in range(7)]
    assert diag == [-6, -6, -6, 6, 6, 6, 6]
    with pytest.raises(G2Error):
        G2Data(CH, split)


def test_phi_psi_closed_and_psi_components():
    assert ext_d(G2.phi).is_zero() and ext_d(G2.psi).is_zero()
    assert G2.psi[(3, 4, 5, 6)].constant_term() == 1
    assert check_nplectic(G2.system()).status == "nplectic"


def test_hodge_star():
    vol = Form.basis(CH, tuple(range(7)))
    assert hodge_star(G2, vol) == Form.scalar(CH, 1)
    rng = random.Random(7)
    for _ in range(20):
        m = rng.randint(0, 7)
        tau = rand_form(rng, CH, m, 1)
        assert hodge_star(G2, hodge_star(G2, tau)) == tau * (-1) ** (m * (7 - m))
    a = parse_expr(CH, "d(x1) + 2*d(x3)")
    assert wedge(a, hodge_star(G2, a)) == vol * 5


def test_cross_product():
    assert cross(G2, e(1), e(2)) == e(3)
    rng = random.Random(3)
    for _ in range(10):
        X, Y, Z = (rand_multivec(rng, CH, 1, 1) for _ in range(3))
        assert cross(G2, X, X).is_zero()
        assert cross(G2, X, Y) == -cross(G2, Y, X)
        assert cross(G2, X, Y) == cross_coordinates(G2, X, Y)
        lhs = _contract(Z, flat(G2, cross(G2, X, Y)))
        rhs = _contract(Z, _contract(Y, _contract(X, G2.phi)))
        assert lhs == rhs


def test_curl_dual_path():
    assert curl(G2, e(4) * 3).is_zero()
    rng = random.Random(5)
    for _ in range(15):
        X = rand_multivec(rng, CH, 1, 2)
        c = curl(G2, X)
        assert c == curl_coordinates(G2, X)
        # π7(dX♭) = curl(X)⌟φ / 3
        assert pi7(G2, ext_d(flat(G2, X))) * 3 == _contract(c, G2.phi)


def test_projector_algebra():
    rng = random.Random(11)
    for _ in range(15):
        a = rand_form(rng, CH, 2, 2)
        p7, p14 = pi7(G2, a), pi14(G2, a)
        assert pi7(G2, p7) == p7
        assert pi14(G2, p14) == p14
        assert pi7(G2, p14).is_zero() and pi14(G2, p7).is_zero()
        assert p7 + p14 == a
        s = split2(G2, a)
        assert wedge(G2.psi, s.part14).is_zero()
        assert _contract(s.vector, G2.phi) == s.part7


def test_split_examples():
    X = parse_expr(CH, "x2*@x1 + @x5")
    a = _contract(X, G2.phi)
    assert pi14(G2, a).is_zero()
    b = pi14(G2, parse_expr(CH, "d(x1)^d(x2) + x3*d(x4)^d(x7)"))
    assert wedge(G2.psi, b).is_zero()
    assert pi7(G2, b).is_zero()


def _random_hamiltonian_one_form(rng):
    basis = g2_algebra_basis(G2)
    assert len(basis) == 14
    n = 7
    xs = [CH.var(i) for i in range(n)]
    M = [[0] * n for _ in range(n)]
    for B in rng.sample(basis, 3):
        c = rand_scalar(rng)
        for r in range(n):
            for s in range(n):
                M[r][s] += c * B[r][s]
    comps = {}
    for r in range(n):
        f = sum((xs[s] * M[r][s] for s in range(n) if M[r][s]), CH.var(0) * 0)
        f = f + rng.randint(-2, 2)
        if f:
            comps[(r,)] = f
    V = MultiVec(CH, 1, comps)
    return hamiltonian_one_form(G2, V), V


def test_hamiltonian_check_and_curl_cross():
    rng = random.Random(13)
    for _ in range(10):
        a, Va = _random_hamiltonian_one_form(rng)
        b, Vb = _random_hamiltonian_one_form(rng)
        for conv in (DEFINITION, Convention(1, -1)):
            chk = g2_hamiltonian_check(G2, a, conv)
            assert chk.is_hamiltonian
            assert chk.factor in (Fraction(conv.hamiltonian_sign, 3), 0)
        assert curl(G2, sharp(G2, a)) == Va * 3
        p14, res = curl_cross_residual(G2, a, b)
        assert p14.is_zero() and res.is_zero()


def test_curl_cross_printed_relation_fails():
    rng = random.Random(17)
    fails = 0
    for _ in range(5):
        a, _ = _random_hamiltonian_one_form(rng)
        b, _ = _random_hamiltonian_one_form(rng)
        ca, cb = curl(G2, sharp(G2, a)), curl(G2, sharp(G2, b))
        if schouten(ca, cb):
            fails += not curl_cross_printed_residual(G2, a, b).is_zero()
            assert curl(G2, cross(G2, ca, cb)) == schouten(ca, cb) * -3
    assert fails >= 1


def test_hamiltonian_check_rejects_and_closed():
    chk = g2_hamiltonian_check(G2, parse_expr(CH, "x1*d(x2)"))
    assert not chk.is_hamiltonian
    closed = g2_hamiltonian_check(G2, parse_expr(CH, "d(x1*x2*x3)"))
    assert closed.is_hamiltonian and closed.field.is_zero() and closed.curl_field.is_zero()
    with pytest.raises(NotHamiltonian):
        hamiltonian_one_form(G2, parse_expr(CH, "x1*@x1"))


def test_torus_example_strict():
    rep = g2_torus_example(DEFINITION)
    assert rep.ok
    assert rep.display_matches
    ch = Chart(TORUS_NAMES)
    assert rep.f2 == torus_expr(ch, "1/4*Re(z1*z2*z3)")
    assert rep.ba_phi * 4 == -rep.d_re
    assert rep.cross4 == -rep.d_re
    assert all(r == -3 for r in rep.curl_ratios.values())
    assert rep.residuals.ok and len(rep.residuals.entries) == 3


def test_torus_example_positive_convention():
    rep = g2_torus_example(Convention(1, 1))
    assert rep.ok
    ch = Chart(TORUS_NAMES)
    assert rep.f2 == torus_expr(ch, "-1/4*Re(z1*z2*z3)")
    assert all(r == 3 for r in rep.curl_ratios.values())


def test_torus_printed_first_component():
    # as printed, the dt term has the wrong sign: not Hamiltonian, although its curl is exactly A
    ch = Chart(TORUS_NAMES)
    g2 = G2Data(ch, torus_phi(ch))
    rep = g2_torus_example(DEFINITION)
    printed = torus_expr(ch, "1/2*Im(z1*z3*d(z2)) - 1/4*(z1*conj(z1) - z3*conj(z3))*d(t)")
    assert not pi14(g2, ext_d(printed)).is_zero()
    assert curl(g2, sharp(g2, printed)) == rep.A
    assert g2.orientation == -1
    assert is_closed(g2.phi)
