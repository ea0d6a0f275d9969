"""Frozen oracle outputs and the engine-side checks that must reproduce them.

The fixture file is written by ``python -m msplect.oracle freeze``.  Every
record holds the input spec and the oracle's answer; ``engine_check``
recomputes the same quantities with the exact engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .comomentum import ComomentumMap, verify_comomentum, verify_weak_comomentum
from .exterior import Form, MultiVec, _contract, ext_d, lie_derivative, poincare_homotopy, schouten, wedge
from .g2 import (
    G2Data,
    PHI0_TERMS,
    cross,
    curl,
    curl_cross_residual,
    flat,
    g2_torus_example,
    gram_matrix,
    hamiltonian_one_form,
    phi0,
    pi14,
    proportionality,
    sharp,
)
from .identities import extended_cartan
from .lie import ActionData, LieAlgebraData, WedgePower, ce_differential, infinitesimal_generator, lie_kernel
from .multisymplectic import (
    Convention,
    NotHamiltonian,
    PlecticSystem,
    hamiltonian_field,
    make_pair,
    noether_printed_residual,
    noether_residual,
    poisson_form,
    zeta,
)
from .oracle import FIXTURE_PATH, load
from .parser import parse_expr
from .phase_space import (
    BaseMultivector,
    build_phase_space,
    complete_lift,
    is_vertical,
    mixed_bracket_residual,
    momentum_bracket_residual,
    momentum_form,
    momentum_pair,
    position_bracket_residual,
    position_pair,
    pullback,
)
from .polynomial import Chart


def fixtures(path=FIXTURE_PATH) -> List[dict]:
    return load(path)["fixtures"]


def fixture(fid: str, path=FIXTURE_PATH) -> dict:
    for item in fixtures(path):
        if item["spec"]["id"] == fid:
            return item
    raise KeyError(fid)


@dataclass
class FixtureCheck:
    fid: str
    items: List[Tuple[str, bool, str]] = field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = ""):
        self.items.append((label, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def failures(self) -> List[Tuple[str, bool, str]]:
        return [x for x in self.items if not x[1]]


def _chart(spec) -> Chart:
    return Chart(spec["coords"])


def _reader(spec) -> Callable[[str], object]:
    chart = _chart(spec)
    cc = {z: (x, y) for z, x, y in spec.get("complex", [])}
    return lambda text: parse_expr(chart, text, complex_coords=cc)


def _same(obj, text: Optional[str], read) -> bool:
    if text is None:
        return obj is None
    expected = read(text)
    if isinstance(expected, Form) and expected.is_zero() and isinstance(obj, (Form, MultiVec)):
        return obj.is_zero()
    return obj == expected


def sign_flag(lhs: Form, rhs: Form) -> int:
    """+1 if lhs = rhs, -1 if lhs = -rhs, 0 otherwise."""
    if (lhs - rhs).is_zero():
        return 1
    if (lhs + rhs).is_zero():
        return -1
    return 0


def form_ratio(lhs, rhs) -> Optional[Fraction]:
    """κ with lhs = κ·rhs for forms or multivectors of equal degree."""
    if lhs.is_zero():
        return Fraction(0)
    if rhs.is_zero() or lhs.degree != rhs.degree:
        return None
    a = MultiVec(lhs.chart, lhs.degree, dict(lhs.comps))
    b = MultiVec(rhs.chart, rhs.degree, dict(rhs.comps))
    return proportionality(a, b)


def _frac(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else Fraction(s)


def _algebra(spec) -> LieAlgebraData:
    dim = spec["dim"]
    br = {}
    for key, out in spec.get("brackets", {}).items():
        i, j = (int(s[1:]) - 1 for s in key.split(","))
        br[(i, j)] = {int(n[1:]) - 1: Fraction(v) for n, v in out.items()}
    return LieAlgebraData.from_brackets(dim, br)


def _wedge(s: str) -> WedgePower:
    return WedgePower.basis(*(int(x.strip()[1:]) - 1 for x in s.split("^")))


# ---------------------------------------------------------------------------
# per-kind checks

def _c_hook(spec, out, chk):
    r = _reader(spec)
    chk.add("value", _same(_contract(r(spec["X"]), r(spec["tau"])), out["value"], r))


def _c_lie(spec, out, chk):
    r = _reader(spec)
    chk.add("value", _same(lie_derivative(r(spec["X"]), r(spec["tau"])), out["value"], r))


def _c_homotopy(spec, out, chk):
    r = _reader(spec)
    tau = r(spec["tau"])
    if "X" in spec:
        tau = _contract(r(spec["X"]), tau)
    chk.add("value", _same(poincare_homotopy(tau), out["value"], r))


def _c_ce(spec, out, chk):
    g = _algebra(spec)
    got = ce_differential(g, _wedge(spec["p"]))
    want = WedgePower(got.degree, {tuple(int(x[1:]) - 1 for x in k.split("^")): Fraction(v) for k, v in out["value"].items()})
    chk.add("boundary", got == want, got.to_str())


def _c_kernel(spec, out, chk):
    g = _algebra(spec)
    dims = [len(lie_kernel(g, k)) for k in range(1, g.dim + 1)]
    chk.add("dims", dims == out["dims"], str(dims))


def _system(spec, r, sign=-1, hamiltonian=None) -> PlecticSystem:
    return PlecticSystem(_chart(spec), r(spec["omega"]), hamiltonian, Convention(sign, -1))


def _c_field(spec, out, chk):
    r = _reader(spec)
    sys = _system(spec, r, spec["sign"])
    try:
        X = hamiltonian_field(sys, r(spec["alpha"]))
    except NotHamiltonian:
        X = None
    chk.add("field", _same(X, out["field"], r), X.to_str() if X is not None else "none")
    if "printed" in spec:
        alpha, P = r(spec["alpha"]), r(spec["printed"])
        chk.add("printed sign", sign_flag(ext_d(alpha), _contract(P, sys.omega)) == out["printed_sign"])


def _c_flag(spec, out, chk):
    r = _reader(spec)
    omega, X = r(spec["omega"]), r(spec["field"])
    chk.add("sign", sign_flag(ext_d(r(spec["alpha"])), _contract(X, omega)) == out["sign"])
    if "corrected" in spec:
        chk.add("corrected sign", sign_flag(ext_d(r(spec["corrected"])), _contract(X, omega)) == out["corrected_sign"])


def _c_plectic(spec, out, chk):
    r = _reader(spec)
    H, alpha = r(spec["H"]), r(spec["alpha"])
    sys = _system(spec, r, spec["sign"], H)
    XH = sys.x_h
    a = make_pair(sys, alpha)
    h = make_pair(sys, H, XH)
    chk.add("X_H", _same(XH, out["x_h"], r), XH.to_str())
    chk.add("X_alpha", _same(a.x_alpha, out["x_alpha"], r), a.x_alpha.to_str())
    chk.add("L_{X_alpha}H", _same(lie_derivative(a.x_alpha, H), out["lie_xalpha_h"], r))
    chk.add("L_{X_H}alpha", _same(lie_derivative(XH, alpha), out["lie_xh_alpha"], r))
    chk.add("{alpha,H}", _same(poisson_form(sys, a, h), out["poisson_alpha_h"], r))
    chk.add("printed Noether residual", _same(noether_printed_residual(sys, a), out["noether_printed_residual"], r))
    chk.add("Noether residual", noether_residual(sys, a).is_zero() and out["noether_kappa"] == "-1")
    for key in ("printed_x_h", "printed_x_alpha"):
        if key in spec:
            target = H if key == "printed_x_h" else alpha
            flag = sign_flag(ext_d(target), _contract(r(spec[key]), sys.omega))
            chk.add(key + " sign", flag == out[key + "_sign"])


def comomentum_flags(spec) -> Dict[str, Dict[str, int]]:
    """Engine version of the oracle's per-component sign flags."""
    r = _reader(spec)
    omega = r(spec["omega"])
    gens = [r(g) for g in spec["generators"]]
    flags = {}
    for item in spec["components"]:
        idx = [int(x.strip()[1:]) - 1 for x in item["p"].split("^")]
        Vp = gens[idx[0]]
        for i in idx[1:]:
            Vp = wedge(Vp, gens[i])
        rhs = _contract(Vp, omega) * zeta(len(idx))
        entry = {"printed": sign_flag(ext_d(r(item["printed"])), rhs)}
        if "corrected" in item:
            entry["corrected"] = sign_flag(ext_d(r(item["corrected"])), rhs)
        flags[item["p"]] = entry
    return flags


def corrected_map(spec, flags, convention: Convention) -> Tuple[ComomentumMap, PlecticSystem]:
    """Rescale every stated component by its flag so the whole map satisfies ``convention``."""
    r = _reader(spec)
    chart = _chart(spec)
    gens = [r(g) for g in spec["generators"]]
    action = ActionData(LieAlgebraData.abelian(len(gens)), chart, gens)
    sys = PlecticSystem(chart, r(spec["omega"]), convention=convention)
    values = {}
    for item in spec["components"]:
        text = item.get("corrected", item["printed"])
        flag = flags[item["p"]].get("corrected", flags[item["p"]]["printed"])
        idx = tuple(int(x.strip()[1:]) - 1 for x in item["p"].split("^"))
        values[idx] = r(text) * (flag * convention.comomentum_sign)
    return ComomentumMap.from_basis(action, sys.n, values, weak=True, name=spec["id"]), sys


def _c_comomentum(spec, out, chk):
    flags = comomentum_flags(spec)
    chk.add("flags", flags == out["flags"], str(flags))
    for conv in (Convention(-1, -1), Convention(1, 1)):
        cmap, sys = corrected_map(spec, out["flags"], conv)
        rep = verify_weak_comomentum(cmap, sys)
        chk.add(f"weak residuals c={conv.comomentum_sign}", rep.ok)
        if len(cmap.degrees()) == min(sys.n, cmap.action.algebra.dim):
            cmap.weak = False
            chk.add(f"full residuals c={conv.comomentum_sign}", verify_comomentum(cmap, sys).ok)


def _c_hook_identity(spec, out, chk):
    r = _reader(spec)
    lhs = _contract(r(spec["X"]), r(spec["tau"]))
    chk.add("kappa", form_ratio(lhs, ext_d(r(spec["target"]))) == _frac(out["kappa"]))
    if "corrected" in spec:
        chk.add("corrected kappa", form_ratio(lhs, ext_d(r(spec["corrected"]))) == _frac(out["corrected_kappa"]))


def _phase(spec):
    base = Chart(spec["base"])
    ps = build_phase_space(base, spec["k"])
    rb = lambda t: parse_expr(base, t)
    rp = lambda t: parse_expr(ps.chart, t)
    return ps, rb, rp


def _c_lift(spec, out, chk):
    ps, rb, rp = _phase(spec)
    chk.add("lift", complete_lift(ps, rb(spec["Y"])) == rp(out["value"]))


def _c_momentum(spec, out, chk):
    ps, rb, rp = _phase(spec)
    Y = BaseMultivector.from_fields([rb(y) for y in spec["Y"]])
    want = rp(out["value"])
    chk.add("pointwise", momentum_form(ps, Y, "pointwise") == want)
    chk.add("lift", momentum_form(ps, Y, "lift") == want)


def _c_momentum_relation(spec, out, chk):
    ps, rb, rp = _phase(spec)
    A = BaseMultivector.from_fields([rb(y) for y in spec["Y1"]])
    B = BaseMultivector.from_fields([rb(y) for y in spec["Y2"]])
    s, t = A.degree, B.degree
    chk.add("residual", momentum_bracket_residual(ps, A, B).is_zero())
    a, b = momentum_pair(ps, A), momentum_pair(ps, B)
    chk.add("bracket", _same(poisson_form(ps.system, a, b), out["bracket"], rp))
    chk.add("field", b.residual.is_zero() == out["field_ok"])
    dterm = ext_d(_contract(complete_lift(ps, B), _contract(complete_lift(ps, A), ps.theta)))
    chk.add("d-term", _same(dterm, out["d_term"], rp))
    if not dterm.is_zero():
        coeff = (-1) ** (t * s + s) * zeta(s + t)
        chk.add("kappa", Fraction(coeff) == _frac(out["kappa"]), f"engine {coeff}, oracle {out['kappa']}")


def _c_mixed_relation(spec, out, chk):
    ps, rb, rp = _phase(spec)
    Y = BaseMultivector.from_fields([rb(y) for y in spec["Y"]])
    alpha = rb(spec["alpha"])
    j = Y.degree
    chk.add("residual", mixed_bracket_residual(ps, alpha, Y).is_zero())
    chk.add("kappa", Fraction((-1) ** j * zeta(j)) == _frac(out["kappa"]))
    a, b = position_pair(ps, alpha), momentum_pair(ps, Y)
    chk.add("bracket", _same(poisson_form(ps.system, a, b), out["bracket"], rp))


def _c_position_relation(spec, out, chk):
    ps, rb, rp = _phase(spec)
    alpha, beta = rb(spec["alpha"]), rb(spec["beta"])
    chk.add("bracket", position_bracket_residual(ps, alpha, beta).is_zero() and out["bracket"] == "0")
    chk.add("vertical", is_vertical(ps, position_pair(ps, beta).x_alpha) == out["vertical"])


def _c_g2_phi0(spec, out, chk):
    r = _reader(spec)
    chart = _chart(spec)
    phi = r(spec["phi"])
    G = gram_matrix(phi)
    chk.add("components", len(phi.comps) == out["components"])
    chk.add("gram diagonal", [str(G[i][i]) for i in range(7)] == out["gram_diagonal"])
    if "orientation" in out:
        g2 = G2Data(chart, phi)
        chk.add("standard terms", phi == phi0(chart, PHI0_TERMS))
        chk.add("orientation", g2.orientation == Fraction(out["orientation"]))
        chk.add("psi", _same(g2.psi, out["psi"], r))
        chk.add("d phi, d psi", ext_d(phi).is_zero() and ext_d(g2.psi).is_zero())
        e1, e2 = MultiVec.basis(chart, (0,)), MultiVec.basis(chart, (1,))
        chk.add("e1 x e2", _same(cross(g2, e1, e2), out["e1_cross_e2"], r))
    else:
        try:
            G2Data(chart, phi)
            chk.add("rejected", False, "split form accepted")
        except ValueError:
            chk.add("rejected", True)


def _c_g2_torus(spec, out, chk):
    rep = g2_torus_example(Convention(1, 1))
    chk.add("orientation", str(G2Data(Chart(spec["coords"]), _reader(spec)(spec["phi"])).orientation) == out["orientation"])
    chk.add("display", rep.display_matches == (out["a_real_matches"] and out["b_real_matches"]))
    chk.add("B hook A hook phi", rep.ba_ratio == _frac(out["ba_phi_kappa"]))
    chk.add("cross", rep.cross_ratio == _frac(out["cross_kappa"]))
    r = _reader(spec)
    chart = _chart(spec)
    g2 = G2Data(chart, r(spec["phi"]))
    A, B = rep.A, rep.B
    for key, V in (("f1_10", A), ("f1_01", B)):
        for variant in ("printed", "corrected"):
            f = r(spec[f"{key}_{variant}"])
            want = out["f1"][f"{key}_{variant}"]
            chk.add(f"{key} {variant} sign", sign_flag(ext_d(f), _contract(V, g2.phi)) == want["sign"])
            chk.add(f"{key} {variant} pi14", pi14(g2, ext_d(f)).is_zero() == want["pi14_zero"])
            chk.add(f"{key} {variant} curl", proportionality(curl(g2, sharp(g2, f)), V) == _frac(want["curl_ratio"]))
    f2 = r(spec["f2_printed"])
    chk.add("f2 sign", sign_flag(ext_d(f2), _contract(wedge(A, B), g2.phi) * zeta(2)) == out["f2_sign"])


def _c_g2_curl_cross(spec, out, chk):
    r = _reader(spec)
    g2 = G2Data(_chart(spec), r(spec["phi"]))
    X, Y = r(spec["X"]), r(spec["Y"])
    a, b = hamiltonian_one_form(g2, X), hamiltonian_one_form(g2, Y)
    ca, cb = curl(g2, sharp(g2, a)), curl(g2, sharp(g2, b))
    chk.add("curl ratio", proportionality(ca, X) == _frac(out["curl_ratio"]))
    chk.add("kappa", proportionality(curl(g2, cross(g2, ca, cb)), schouten(ca, cb)) == _frac(out["kappa"]))
    p14, res = curl_cross_residual(g2, a, b)
    chk.add("corrected residual", p14.is_zero() and res.is_zero())


def _c_extended_cartan(spec, out, chk):
    r = _reader(spec)
    g = _algebra(spec)
    gens = [r(x) for x in spec["generators"]]
    act = ActionData(g, gens[0].chart, gens)
    signs = set()
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            rhs = infinitesimal_generator(act, g.bracket_basis(i, j))
            signs.add(sign_flag(schouten(gens[i], gens[j]), rhs))
    chk.add("action sign", signs == {out["action_sign"]}, str(signs))
    p = _wedge(spec["p"])
    fields = [gens[i] for i in next(iter(p.coeffs))]
    tau = r(spec["tau"])
    vdp = infinitesimal_generator(act, ce_differential(g, p))
    kappa = _frac(out["dp_kappa"])
    chk.add("dp kappa", extended_cartan(fields, tau, vdp * kappa).is_zero())
    chk.add("field differential", extended_cartan(fields, tau).is_zero())


CHECKS = {
    "hook": _c_hook, "lie": _c_lie, "homotopy": _c_homotopy, "ce_boundary": _c_ce, "kernel_dims": _c_kernel,
    "hamiltonian_field": _c_field, "hamiltonian_flag": _c_flag, "plectic_example": _c_plectic,
    "comomentum": _c_comomentum, "hook_identity": _c_hook_identity, "lift": _c_lift, "momentum": _c_momentum,
    "momentum_relation": _c_momentum_relation, "mixed_relation": _c_mixed_relation,
    "position_relation": _c_position_relation, "g2_phi0": _c_g2_phi0, "g2_torus": _c_g2_torus,
    "g2_curl_cross": _c_g2_curl_cross, "extended_cartan": _c_extended_cartan,
}


def engine_check(item: dict) -> FixtureCheck:
    spec, out = item["spec"], item["oracle"]
    chk = FixtureCheck(spec["id"])
    CHECKS[spec["kind"]](spec, out, chk)
    return chk
