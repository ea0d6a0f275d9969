import random
from fractions import Fraction

import pytest

import msplect.identities as ident
from msplect.exterior import (
    _contract,
    DegreeError,
    Form,
    KindError,
    MultiVec,
    ext_d,
    hook,
    is_closed,
    is_exact,
    lie_derivative,
    poincare_homotopy,
    schouten,
    wedge,
)
from msplect.identities import CORE_IDENTITIES, check_core_identities
from msplect.parser import parse_expr
from msplect.polynomial import Chart, Polynomial
from msplect.random_gen import rand_form

XYZ = Chart(["x", "y", "z"])


def P(text, chart=XYZ):
    return parse_expr(chart, text)


def test_polynomial_arithmetic_is_exact():
    x, y = Polynomial.var(0, 2), Polynomial.var(1, 2)
    p = (x + y) ** 2 - x * x - y * y
    assert p == x * y * 2
    assert (x * Fraction(1, 3)).to_str(["x", "y"]) == "1/3*x"
    assert (x - x).is_zero() and not (x - x).terms
    assert (x * y).diff(0) == y


def test_chart_rejects_duplicate_names():
    with pytest.raises(ValueError):
        Chart(["x", "x"])


def test_wedge_examples():
    assert P("d(x)^d(y)") == Form.basis(XYZ, (0, 1))
    assert P("d(x)^d(x)").is_zero()
    assert wedge(P("x*d(y)"), P("d(z)")) == P("x*d(y)^d(z)")


def test_wedge_graded_commutative():
    rng = random.Random(3)
    for _ in range(20):
        a = rand_form(rng, XYZ, rng.randint(0, 3))
        b = rand_form(rng, XYZ, rng.randint(0, 3))
        sign = -1 if (a.degree * b.degree) % 2 else 1
        assert wedge(a, b) == wedge(b, a) * sign


def test_wedge_kind_mismatch():
    with pytest.raises((KindError, TypeError)):
        wedge(P("d(x)"), P("@x"))


def test_hook_examples():
    vol = P("d(x)^d(y)^d(z)")
    assert hook(P("@z"), vol) == P("d(x)^d(y)")
    assert hook(P("@y^@z"), vol) == P("d(x)")
    with pytest.raises(DegreeError):
        hook(P("@x"), P("x"))


def test_hook_of_wedge_is_iterated():
    vol = P("d(x)^d(y)^d(z)")
    X, Y = P("x*@y + @z"), P("y*@x")
    assert hook(wedge(X, Y), vol) == hook(Y, hook(X, vol))


def test_d_examples():
    assert ext_d(P("x*d(y)")) == P("d(x)^d(y)")
    ch = Chart(["q1", "q2", "q3", "p1", "p2", "p3"])
    tau = parse_expr(ch, "1/2*(q2*d(q3) - q3*d(q2))^d(p1)^d(p2)^d(p3)")
    assert ext_d(tau) == parse_expr(ch, "d(q2)^d(q3)^d(p1)^d(p2)^d(p3)")
    rng = random.Random(5)
    for _ in range(20):
        assert ext_d(ext_d(rand_form(rng, ch, rng.randint(0, 4)))).is_zero()


def test_lie_derivative_examples():
    assert lie_derivative(P("@x"), P("x*d(y)")) == P("d(y)")
    assert lie_derivative(P("@y^@z"), P("d(x)^d(y)^d(z)")).is_zero()


def test_lie_derivative_cartan_formula_for_vectors():
    rng = random.Random(8)
    from msplect.random_gen import rand_multivec

    for _ in range(20):
        X = rand_multivec(rng, XYZ, 1)
        tau = rand_form(rng, XYZ, rng.randint(0, 2))
        assert lie_derivative(X, tau) == ext_d(_contract(X, tau)) + _contract(X, ext_d(tau))


def test_schouten_examples():
    assert schouten(P("@x"), P("x*@y")) == P("@y")
    assert schouten(P("@x^@y"), P("@z")).is_zero()


def test_schouten_on_functions_is_a_derivation():
    g = MultiVec.scalar(XYZ, Polynomial.var(1, 3) ** 2)
    assert schouten(P("@y"), g) == MultiVec.scalar(XYZ, Polynomial.var(1, 3) * 2)


def test_homotopy_examples():
    xy = Chart(["x", "y"])
    assert poincare_homotopy(parse_expr(xy, "d(x)^d(y)")) == parse_expr(xy, "1/2*(x*d(y) - y*d(x))")
    assert poincare_homotopy(parse_expr(xy, "d(x)")) == parse_expr(xy, "x")
    with pytest.raises(DegreeError):
        poincare_homotopy(parse_expr(xy, "x"))


def test_homotopy_with_base_point():
    tau = P("x*d(y)^d(z) + d(x)^d(z)")
    closed = ext_d(P("x*y*d(z) + z**2*d(x)"))
    K = poincare_homotopy(closed, base=[1, -2, Fraction(1, 2)])
    assert ext_d(K) == closed
    assert ident.homotopy_identity(tau).is_zero()


def test_closed_and_exact():
    assert is_closed(P("d(x)^d(y)"))
    ok, prim = is_exact(P("x*d(x)"))
    assert ok and prim == P("1/2*x**2")
    assert is_exact(P("3")) == (False, None)
    assert is_exact(P("0"))[0] is True
    assert is_exact(P("y*d(x)")) == (False, None)


@pytest.mark.parametrize("dim", [3, 5, 7])
def test_core_identities_randomized(dim):
    results = check_core_identities(dim, 3 if dim == 3 else 2, 100, seed=dim)
    assert set(results) == set(CORE_IDENTITIES)
    for name, (failures, first) in results.items():
        assert failures == 0, (name, first)


def test_identity_suite_detects_a_sign_error(monkeypatch):
    """A schouten bracket with a wrong sign on higher degrees must be caught."""
    real = ident.schouten

    def broken(X, Y):
        out = real(X, Y)
        return -out if X.degree >= 2 and Y.degree >= 1 else out

    monkeypatch.setattr(ident, "schouten", broken)
    results = check_core_identities(4, 2, 100, seed=1, names=("bracket_hook", "interior_equation"))
    assert all(f > 30 for f, _ in results.values())


def test_identity_suite_detects_a_wrong_lie_derivative(monkeypatch):
    real = ident.lie_derivative

    def broken(X, tau):
        return real(X, tau) + _contract(X, ext_d(tau)) if X.degree == 2 else real(X, tau)

    monkeypatch.setattr(ident, "lie_derivative", broken)
    results = check_core_identities(4, 2, 100, seed=2, names=("dL", "wedge_rule", "L_bracket"))
    assert all(f > 0 for f, _ in results.values())
    assert sum(f for f, _ in results.values()) > 50
