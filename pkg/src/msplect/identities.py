"""Residuals of the core exterior-calculus identities.

Each function returns a form or multivector field that must vanish
identically; callers compare against zero.
"""

from __future__ import annotations

import random
from typing import Callable, Dict, List, Tuple

from .exterior import (
    Form,
    MultiVec,
    _contract,
    ext_d,
    lie_derivative,
    poincare_homotopy,
    schouten,
    wedge,
)
from .polynomial import Chart
from .random_gen import rand_form, rand_multivec


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def d_lie(X: MultiVec, tau: Form) -> Form:
    """d L_X tau - (-1)^(k+1) L_X d tau."""
    k = X.degree
    return ext_d(lie_derivative(X, tau)) - lie_derivative(X, ext_d(tau)) * _sgn(k + 1)


def bracket_hook(X: MultiVec, Y: MultiVec, tau: Form) -> Form:
    """[X,Y]⌟tau - (-1)^((k+1)l) L_X(Y⌟tau) + Y⌟L_X tau."""
    k, l = X.degree, Y.degree
    lhs = _contract(schouten(X, Y), tau)
    return (lhs - lie_derivative(X, _contract(Y, tau)) * _sgn((k + 1) * l)
            + _contract(Y, lie_derivative(X, tau)))


def lie_bracket(X: MultiVec, Y: MultiVec, tau: Form) -> Form:
    """L_[X,Y] tau - (-1)^((k+1)(l+1)) L_X L_Y tau + L_Y L_X tau."""
    k, l = X.degree, Y.degree
    return (lie_derivative(schouten(X, Y), tau)
            - lie_derivative(X, lie_derivative(Y, tau)) * _sgn((k + 1) * (l + 1))
            + lie_derivative(Y, lie_derivative(X, tau)))


def wedge_rule(X: MultiVec, Y: MultiVec, tau: Form) -> Form:
    """L_(X^Y) tau - (-1)^l Y⌟L_X tau - L_Y(X⌟tau)."""
    l = Y.degree
    return (lie_derivative(wedge(X, Y), tau)
            - _contract(Y, lie_derivative(X, tau)) * _sgn(l)
            - lie_derivative(Y, _contract(X, tau)))


def interior_equation(X: MultiVec, Y: MultiVec, tau: Form) -> Form:
    """[X,Y]⌟tau against its expansion in hooks and d."""
    k, l = X.degree, Y.degree
    rhs = (-_contract(Y, ext_d(_contract(X, tau)))
           + ext_d(_contract(Y, _contract(X, tau))) * _sgn(l)
           + _contract(X, _contract(Y, ext_d(tau))) * _sgn(k * l + k)
           - _contract(X, ext_d(_contract(Y, tau))) * _sgn(k * l + k + l))
    return _contract(schouten(X, Y), tau) - rhs


def schouten_antisymmetry(X: MultiVec, Y: MultiVec) -> MultiVec:
    k, l = X.degree, Y.degree
    return schouten(X, Y) + schouten(Y, X) * _sgn((k + 1) * (l + 1))


def schouten_jacobi(X: MultiVec, Y: MultiVec, Z: MultiVec) -> MultiVec:
    """Cyclic sum of (-1)^((k-1)(m-1)) [X,[Y,Z]] over (X,Y,Z) with degrees (k,l,m)."""
    k, l, m = X.degree, Y.degree, Z.degree
    return (schouten(X, schouten(Y, Z)) * _sgn((k - 1) * (m - 1))
            + schouten(Y, schouten(Z, X)) * _sgn((l - 1) * (k - 1))
            + schouten(Z, schouten(X, Y)) * _sgn((m - 1) * (l - 1)))


def schouten_leibniz(X: MultiVec, Y: MultiVec, Z: MultiVec) -> MultiVec:
    """[X, Y^Z] - [X,Y]^Z - (-1)^((k-1)l) Y^[X,Z]."""
    k, l = X.degree, Y.degree
    return (schouten(X, wedge(Y, Z)) - wedge(schouten(X, Y), Z)
            - wedge(Y, schouten(X, Z)) * _sgn((k - 1) * l))


def homotopy_identity(tau: Form) -> Form:
    """d K tau + K d tau - tau for deg tau >= 1."""
    out = ext_d(poincare_homotopy(tau)) - tau
    dtau = ext_d(tau)
    if dtau.degree <= tau.chart.dim and dtau:
        out = out + poincare_homotopy(dtau)
    return out


def d_squared(tau: Form) -> Form:
    return ext_d(ext_d(tau))


def extended_cartan(fields: List[MultiVec], tau: Form, dp_term: MultiVec | None = None) -> Form:
    """Extended Cartan residual for V_p = V_1^...^V_k given as vector fields.

    (-1)^k d(V_p⌟tau) - (∂V_p)⌟tau - sum_i (-1)^i (V_1..V_i-hat..V_k)⌟L_{V_i}tau - V_p⌟dtau,
    where ∂ is the Chevalley-Eilenberg differential of the vector fields
    themselves.  ``dp_term`` substitutes another multivector for ∂V_p
    (for instance V_{∂p} computed in the acting algebra).
    """
    from .lie import ce_differential_fields

    k = len(fields)
    chart = tau.chart
    Vp = _wedge_fields(chart, fields)
    dvp = ce_differential_fields(fields) if dp_term is None else dp_term
    out = ext_d(_contract(Vp, tau)) * _sgn(k) - _contract(dvp, tau) - _contract(Vp, ext_d(tau))
    for i in range(k):
        rest = _wedge_fields(chart, fields[:i] + fields[i + 1:])
        out = out - _contract(rest, lie_derivative(fields[i], tau)) * _sgn(i + 1)
    return out


def _wedge_fields(chart: Chart, fields: List[MultiVec]) -> MultiVec:
    out = MultiVec.scalar(chart, 1)
    for f in fields:
        out = wedge(out, f)
    return out


# ---------------------------------------------------------------------------
# randomized drivers (shared by the test suite and the CLI)

CORE_IDENTITIES = (
    "dL",
    "bracket_hook",
    "L_bracket",
    "wedge_rule",
    "interior_equation",
    "schouten_antisymmetry",
    "schouten_jacobi",
    "schouten_leibniz",
    "extended_cartan",
    "homotopy",
    "d_squared",
)


def run_core_case(name: str, rng: random.Random, dim: int, max_deg: int):
    """Build one random case for identity ``name``; return the residual.

    Degrees are drawn so that the terms of the identity do not vanish for
    degree reasons alone: the form is at least as large as the total
    multivector degree it gets contracted with.
    """
    chart = Chart([f"x{i + 1}" for i in range(dim)])
    top = min(dim, 3)

    def mv(lo=1, hi=top):
        return rand_multivec(rng, chart, rng.randint(lo, max(lo, hi)), max_deg)

    def fm(lo=0, hi=dim):
        lo = min(lo, dim)
        return rand_form(rng, chart, rng.randint(lo, max(lo, hi)), max_deg)

    def pair():
        X = mv()
        Y = mv(1, max(1, min(top, dim + 1 - X.degree)))
        return X, Y, fm(max(X.degree + Y.degree - 1, 0))

    if name == "dL":
        X = mv()
        return d_lie(X, fm(X.degree - 1))
    if name == "bracket_hook":
        return bracket_hook(*pair())
    if name == "L_bracket":
        return lie_bracket(*pair())
    if name == "wedge_rule":
        X, Y, tau = pair()
        return wedge_rule(X, Y, fm(min(X.degree + Y.degree - 1, dim)))
    if name == "interior_equation":
        return interior_equation(*pair())
    if name == "schouten_antisymmetry":
        return schouten_antisymmetry(mv(0), mv(0))
    if name == "schouten_jacobi":
        return schouten_jacobi(mv(), mv(), mv())
    if name == "schouten_leibniz":
        return schouten_leibniz(mv(), mv(0, min(dim, 2)), mv(0, min(dim, 2)))
    if name == "extended_cartan":
        k = rng.randint(1, top)
        fields = [rand_multivec(rng, chart, 1, max_deg) for _ in range(k)]
        return extended_cartan(fields, fm(k - 1))
    if name == "homotopy":
        return homotopy_identity(fm(1))
    if name == "d_squared":
        return d_squared(fm())
    raise KeyError(f"unknown identity {name!r}")


def check_core_identities(dim: int, degree: int, cases: int, seed: int,
                          names=CORE_IDENTITIES) -> Dict[str, Tuple[int, object]]:
    """Run ``cases`` random cases per identity; return name -> (failures, first residual)."""
    results = {}
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        failures, first = 0, None
        for _ in range(cases):
            res = run_core_case(name, rng, dim, degree)
            if not res.is_zero():
                failures += 1
                if first is None:
                    first = res
        results[name] = (failures, first)
    return results
