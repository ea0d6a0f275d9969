"""G2 structures on R^7 with a constant 3-form whose induced metric is Euclidean:
Hodge star, cross product, curl, the 7 + 14 splitting of 2-forms and
Hamiltonian 1-forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exterior import DegreeError, Form, MultiVec, _contract, ext_d, is_closed, schouten, sort_sign, wedge
from .multisymplectic import DEFINITION, Convention, NotHamiltonian, PlecticSystem, hamiltonian_field
from .polynomial import Chart, Polynomial

# φ0 = dx123 + dx1(dx45 - dx67) + dx2(dx46 - dx75) + dx3(dx47 - dx56), 1-based indices.
# With a minus sign in front of the last bracket the induced metric has
# signature (3, 4); that variant is kept as PHI0_SPLIT_TERMS.
PHI0_TERMS = (
    ((1, 2, 3), 1),
    ((1, 4, 5), 1),
    ((1, 6, 7), -1),
    ((2, 4, 6), 1),
    ((2, 7, 5), -1),
    ((3, 4, 7), 1),
    ((3, 5, 6), -1),
)
PHI0_SPLIT_TERMS = PHI0_TERMS[:5] + (((3, 4, 7), -1), ((3, 5, 6), 1))


class G2Error(ValueError):
    pass


def phi0(chart: Chart, terms=PHI0_TERMS) -> Form:
    """The standard G2 3-form in the chart's coordinate order."""
    if chart.dim != 7:
        raise DegreeError("φ0 lives on a 7-dimensional chart")
    out = Form.zero(chart, 3)
    for idx, c in terms:
        out = out + Form.basis(chart, tuple(i - 1 for i in idx), c)
    return out


def _top(chart: Chart, c=1) -> Form:
    return Form.basis(chart, tuple(range(chart.dim)), c)


class G2Data:
    """A constant 3-form on a 7-dim chart together with the Euclidean metric.

    The metric is not extracted from φ: the identity
    (X⌟φ)^(Y⌟φ)^φ = -6 g(X,Y) vol is checked on all basis pairs with
    g = identity, which also fixes the orientation of vol.
    """

    def __init__(self, chart: Chart, phi: Optional[Form] = None):
        if chart.dim != 7:
            raise DegreeError("G2 structures need a 7-dimensional chart")
        self.chart = chart
        self.phi = phi0(chart) if phi is None else phi
        if self.phi.degree != 3 or not self.phi.is_constant():
            raise G2Error("φ must be a constant-coefficient 3-form")
        e0 = MultiVec.basis(chart, (0,))
        top = wedge(wedge(_contract(e0, self.phi), _contract(e0, self.phi)), self.phi)
        c = top[tuple(range(7))].constant_term()
        if c == 0 or c % 6:
            raise G2Error("φ does not induce the Euclidean metric")
        self.orientation = Fraction(-c) / 6
        self.vol = _top(chart, self.orientation)
        if metric_identity_defects(self):
            raise G2Error("φ does not induce the Euclidean metric in this chart")
        self.metric = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
        self.psi = hodge_star(self, self.phi)

    def system(self, convention: Convention = DEFINITION, hamiltonian: Optional[Form] = None) -> PlecticSystem:
        return PlecticSystem(self.chart, self.phi, hamiltonian, convention, name="G2")


def standard_g2(names: Sequence[str] = tuple(f"x{i}" for i in range(1, 8))) -> G2Data:
    return G2Data(Chart(names))


def gram_matrix(phi: Form) -> List[List[Fraction]]:
    """G_ij with (e_i⌟φ)^(e_j⌟φ)^φ = G_ij dx^1...dx^7."""
    chart = phi.chart
    hooks = [_contract(MultiVec.basis(chart, (i,)), phi) for i in range(chart.dim)]
    top = tuple(range(chart.dim))
    return [[Fraction(wedge(wedge(hooks[i], hooks[j]), phi)[top].constant_term()) for j in range(chart.dim)]
            for i in range(chart.dim)]


def metric_identity_defects(g2: G2Data) -> List[Tuple[int, int, Form]]:
    """Basis pairs (i, j) where (e_i⌟φ)^(e_j⌟φ)^φ + 6 δ_ij vol is nonzero."""
    chart = g2.chart
    out = []
    vol = _top(chart, g2.orientation)
    hooks = [_contract(MultiVec.basis(chart, (i,)), g2.phi) for i in range(7)]
    for i in range(7):
        for j in range(i, 7):
            val = wedge(wedge(hooks[i], hooks[j]), g2.phi)
            if i == j:
                val = val + vol * 6
            if val:
                out.append((i, j, val))
    return out


def hodge_star(g2: G2Data, tau: Form) -> Form:
    """Euclidean Hodge star: α^*β = <α,β> vol."""
    chart = g2.chart
    m = tau.degree
    comps: Dict[Tuple[int, ...], Polynomial] = {}
    full = tuple(range(7))
    for I, f in tau.comps.items():
        J = tuple(i for i in full if i not in I)
        s, _ = sort_sign(I + J)
        comps[J] = comps.get(J, Polynomial.zero(chart.dim)) + f * (s * g2.orientation)
    return Form(chart, 7 - m, comps)


def flat(g2: G2Data, X: MultiVec) -> Form:
    if X.degree != 1:
        raise DegreeError("flat needs a vector field")
    return Form(g2.chart, 1, dict(X.comps))


def sharp(g2: G2Data, alpha: Form) -> MultiVec:
    if alpha.degree != 1:
        raise DegreeError("sharp needs a 1-form")
    return MultiVec(g2.chart, 1, dict(alpha.comps))


def phi_component(g2: G2Data, i: int, j: int, k: int) -> Fraction:
    s, idx = sort_sign((i, j, k))
    if not s:
        return Fraction(0)
    return Fraction(s * g2.phi[idx].constant_term())


def cross(g2: G2Data, X: MultiVec, Y: MultiVec) -> MultiVec:
    """X×Y = (Y⌟X⌟φ)^♯, so that g(X×Y, Z) = φ(X, Y, Z)."""
    return sharp(g2, _contract(Y, _contract(X, g2.phi)))


def cross_coordinates(g2: G2Data, X: MultiVec, Y: MultiVec) -> MultiVec:
    """(X×Y)^l = X^i Y^j φ_ijk g^kl."""
    chart = g2.chart
    comps = {}
    for l in range(7):
        acc = Polynomial.zero(chart.dim)
        for i in range(7):
            for j in range(7):
                c = phi_component(g2, i, j, l)
                if c:
                    acc = acc + X[(i,)] * Y[(j,)] * c
        if acc:
            comps[(l,)] = acc
    return MultiVec(chart, 1, comps)


def curl(g2: G2Data, X: MultiVec) -> MultiVec:
    """(curl X)^♭ = *(dX^♭ ^ ψ)."""
    return sharp(g2, hodge_star(g2, wedge(ext_d(flat(g2, X)), g2.psi)))


def curl_coordinates(g2: G2Data, X: MultiVec) -> MultiVec:
    """curl(X)^l = ∂_a X_b φ_abl on the flat chart."""
    chart = g2.chart
    comps = {}
    for l in range(7):
        acc = Polynomial.zero(chart.dim)
        for a in range(7):
            for b in range(7):
                c = phi_component(g2, a, b, l)
                if c:
                    acc = acc + X[(b,)].diff(a) * c
        if acc:
            comps[(l,)] = acc
    return MultiVec(chart, 1, comps)


@dataclass
class TwoFormSplit:
    part7: Form
    part14: Form
    vector: MultiVec


def pi7(g2: G2Data, alpha: Form) -> Form:
    return (alpha - hodge_star(g2, wedge(g2.phi, alpha))) / 3


def pi14(g2: G2Data, alpha: Form) -> Form:
    return (alpha * 2 + hodge_star(g2, wedge(g2.phi, alpha))) / 3


def vector_of_seven(g2: G2Data, beta: Form) -> MultiVec:
    """The X with X⌟φ = β for β in the 7-part: X^l = Σ_{a<b} β_ab φ_abl / 3."""
    chart = g2.chart
    comps = {}
    for l in range(7):
        acc = Polynomial.zero(chart.dim)
        for (a, b), f in beta.comps.items():
            c = phi_component(g2, a, b, l)
            if c:
                acc = acc + f * (c / 3)
        if acc:
            comps[(l,)] = acc
    return MultiVec(chart, 1, comps)


def split2(g2: G2Data, alpha: Form) -> TwoFormSplit:
    if alpha.degree != 2:
        raise DegreeError("split2 needs a 2-form")
    p7 = pi7(g2, alpha)
    p14 = pi14(g2, alpha)
    X = vector_of_seven(g2, p7)
    if _contract(X, g2.phi) != p7:
        raise G2Error("7-part is not of the form X⌟φ")
    return TwoFormSplit(p7, p14, X)


@dataclass
class G2HamiltonianCheck:
    is_hamiltonian: bool
    curl_field: Optional[MultiVec]
    field: Optional[MultiVec]
    factor: Optional[Fraction]


def proportionality(X: MultiVec, Y: MultiVec) -> Optional[Fraction]:
    """λ with X = λ·Y, or None; λ = 0 when X = 0."""
    if X.is_zero():
        return Fraction(0)
    if Y.is_zero():
        return None
    idx, f = next(iter(Y.comps.items()))
    t = next(iter(f.terms))
    lam = Fraction(X[idx].terms.get(t, 0)) / Fraction(f.terms[t])
    return lam if X == Y * lam else None


def g2_hamiltonian_check(g2: G2Data, alpha: Form, convention: Convention = DEFINITION) -> G2HamiltonianCheck:
    """π14(dα) = 0 test, curl(α^♯), the solver's field X_α and λ with X_α = λ·curl(α^♯).

    For Hamiltonian α, dα = π7(dα) = curl(α^♯)⌟φ / 3, so λ = s/3 where s
    is the convention's Hamiltonian sign (λ is reported as 0 for closed α).
    """
    if alpha.degree != 1:
        raise DegreeError("needs a 1-form")
    da = ext_d(alpha)
    if pi14(g2, da):
        return G2HamiltonianCheck(False, None, None, None)
    c = curl(g2, sharp(g2, alpha))
    X = hamiltonian_field(g2.system(convention), alpha)
    return G2HamiltonianCheck(True, c, X, proportionality(X, c))


def curl_cross_residual(g2: G2Data, alpha: Form, beta: Form) -> Tuple[Form, MultiVec]:
    """(π14 of d(curl α^♯ × curl β^♯)^♭, curl(curl α^♯ × curl β^♯) + 3[curl α^♯, curl β^♯]).

    The factor follows from X_α = (s/3) curl α^♯ and the bracket's field
    -s[X_α, X_β]; both parts vanish for Hamiltonian α, β.
    """
    ca, cb = curl(g2, sharp(g2, alpha)), curl(g2, sharp(g2, beta))
    cr = cross(g2, ca, cb)
    return pi14(g2, ext_d(flat(g2, cr))), curl(g2, cr) + schouten(ca, cb) * 3


def curl_cross_printed_residual(g2: G2Data, alpha: Form, beta: Form) -> MultiVec:
    """curl(curl α^♯ × curl β^♯) - [curl α^♯, curl β^♯], the relation without the factor -3."""
    ca, cb = curl(g2, sharp(g2, alpha)), curl(g2, sharp(g2, beta))
    return curl(g2, cross(g2, ca, cb)) - schouten(ca, cb)


def hamiltonian_one_form(g2: G2Data, potential: MultiVec) -> Form:
    """Homotopy primitive of X⌟φ for a field X that preserves φ; such a 1-form is Hamiltonian.

    Affine fields x -> Mx + b with M in the g2 algebra are the typical input.
    """
    from .exterior import lie_derivative, poincare_homotopy

    if lie_derivative(potential, g2.phi):
        raise NotHamiltonian("the field does not preserve φ")
    beta = _contract(potential, g2.phi)
    return poincare_homotopy(beta) if beta else Form.zero(g2.chart, 1)


def g2_algebra_basis(g2: G2Data) -> List[List[List[Fraction]]]:
    """A basis of the 14-dimensional algebra of constant matrices M with L_{Mx}φ = 0."""
    from .multisymplectic import linear_symmetries

    return linear_symmetries(g2.phi)


# ---------------------------------------------------------------------------
# the torus example on R ⊕ C^3

TORUS_NAMES = ("t", "x1", "x2", "x3", "y1", "y2", "y3")


def torus_phi(chart: Chart) -> Form:
    """Re(dz1 dz2 dz3) - dt^(dx1 dy1 + dx2 dy2 + dx3 dy3)."""
    from .gaussian import ComplexCoordinates

    cc = ComplexCoordinates(chart, [("x1", "y1"), ("x2", "y2"), ("x3", "y3")])
    Om = cc.dz(1) ^ cc.dz(2) ^ cc.dz(3)
    t = chart.index("t")
    kahler = Form.zero(chart, 2)
    for k in (1, 2, 3):
        kahler = kahler + Form.basis(chart, (chart.index(f"x{k}"), chart.index(f"y{k}")))
    return Om.re - wedge(Form.basis(chart, (t,)), kahler)


def torus_generators(chart: Chart) -> Tuple[MultiVec, MultiVec]:
    """A and B from (i/2)(z_a ∂_{z_a} - z_3 ∂_{z_3} - conj), a = 1, 2."""
    from .gaussian import ComplexCoordinates

    cc = ComplexCoordinates(chart, [("x1", "y1"), ("x2", "y2"), ("x3", "y3")])
    half_i = (0, Fraction(1, 2))
    out = []
    for a in (1, 2):
        Z = (cc.z(a) * cc.d_dz(a) - cc.z(3) * cc.d_dz(3)
             - cc.zbar(a) * cc.d_dzbar(a) + cc.zbar(3) * cc.d_dzbar(3)).scale(half_i)
        out.append(cc.real_field(Z))
    return out[0], out[1]


TORUS_COMPLEX = {"z1": ("x1", "y1"), "z2": ("x2", "y2"), "z3": ("x3", "y3")}

# Values satisfying df_1(p) = +V_p⌟φ and df_2(A^B) = -(A^B)⌟φ; the
# comomentum sign c rescales them (f_1 by c, f_2 by -c).
TORUS_F1 = {
    (0,): "1/2*Im(z1*z3*d(z2)) + 1/4*(z1*conj(z1) - z3*conj(z3))*d(t)",
    (1,): "-1/2*Im(z2*z3*d(z1)) + 1/4*(z2*conj(z2) - z3*conj(z3))*d(t)",
}
TORUS_F2 = "1/4*Re(z1*z2*z3)"
TORUS_A_DISPLAY = "1/2*(-y1*@x1 + y3*@x3 + x1*@y1 - x3*@y3)"
TORUS_B_DISPLAY = "1/2*(-y2*@x2 + y3*@x3 + x2*@y2 - x3*@y3)"


def torus_expr(chart: Chart, text: str):
    from .parser import parse_expr

    return parse_expr(chart, text, complex_coords=TORUS_COMPLEX)


def torus_comomentum(chart: Chart, convention: Convention = DEFINITION):
    """The weak comomentum map of the T^2 action on (R ⊕ C^3, φ) under ``convention``."""
    from .comomentum import ComomentumMap
    from .lie import ActionData, LieAlgebraData

    c = convention.comomentum_sign
    action = ActionData(LieAlgebraData.abelian(2), chart, list(torus_generators(chart)))
    values = {idx: torus_expr(chart, text) * c for idx, text in TORUS_F1.items()}
    values[(0, 1)] = torus_expr(chart, TORUS_F2) * (-c)
    return ComomentumMap.from_basis(action, 2, values, weak=True, name="torus")


@dataclass
class G2TorusReport:
    convention: Convention
    A: MultiVec
    B: MultiVec
    display_matches: bool
    f1: Dict[str, Form]
    f2: Form
    residuals: object
    closure: list
    ba_phi: Form
    d_re: Form
    ba_ratio: Optional[Fraction]
    cross4: Form
    cross_ratio: Optional[Fraction]
    curl_ratios: Dict[str, Optional[Fraction]]
    pi14_zero: Dict[str, bool]

    @property
    def ok(self) -> bool:
        c = self.convention.comomentum_sign
        return (self.display_matches and self.residuals.ok and all(d.ok for d in self.closure)
                and self.ba_ratio == -1 and self.cross_ratio == -1
                and all(r == 3 * c for r in self.curl_ratios.values()) and all(self.pi14_zero.values()))


def _form_ratio(a: Form, b: Form) -> Optional[Fraction]:
    if a.degree != b.degree:
        return None
    return proportionality(MultiVec(a.chart, a.degree, dict(a.comps)), MultiVec(b.chart, b.degree, dict(b.comps)))


def g2_torus_example(convention: Convention = DEFINITION) -> G2TorusReport:
    """Verify the T^2 comomentum map on R ⊕ C^3 and the identities around it.

    B⌟A⌟φ and 4(A×B)^♭ both come out as -d Re(z1 z2 z3) (times 1/4 for
    the first); the curl of f_1(p)^♯ is 3c·V_p.
    """
    from .comomentum import closure_defects, verify_weak_comomentum

    chart = Chart(TORUS_NAMES)
    g2 = G2Data(chart, torus_phi(chart))
    A, B = torus_generators(chart)
    cmap = torus_comomentum(chart, convention)
    sys = g2.system(convention)
    d_re = ext_d(torus_expr(chart, "Re(z1*z2*z3)"))
    ba = _contract(B, _contract(A, g2.phi))
    cross4 = flat(g2, cross(g2, A, B)) * 4
    f1 = {"(1,0)": cmap.components[1][0][1], "(0,1)": cmap.components[1][1][1]}
    fields = {"(1,0)": A, "(0,1)": B}
    curl_ratios = {k: proportionality(curl(g2, sharp(g2, f)), fields[k]) for k, f in f1.items()}
    pi14_zero = {k: pi14(g2, ext_d(f)).is_zero() for k, f in f1.items()}
    display = A == torus_expr(chart, TORUS_A_DISPLAY) and B == torus_expr(chart, TORUS_B_DISPLAY)
    return G2TorusReport(convention, A, B, display, f1, cmap.components[2][0][1],
                         verify_weak_comomentum(cmap, sys), closure_defects(cmap, sys),
                         ba, d_re, _form_ratio(ba * 4, d_re), cross4, _form_ratio(cross4, d_re),
                         curl_ratios, pi14_zero)
