"""n-plectic systems, Hamiltonian pairs, the generalized Poisson bracket,
the observables complex and the conserved-quantity / symmetry classification.

Sign conventions are explicit.  ``Convention.hamiltonian_sign`` is the
sign s in  dα = s·X_α⌟ω  (the formal definition uses s = -1), and
``Convention.comomentum_sign`` is the sign c in the weak co-momentum
equation  df_k(p) = c·ζ(k)·V_p⌟ω  (the formal definition uses c = -1).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exterior import (
    DegreeError,
    Form,
    MultiVec,
    _contract,
    _contract_sign,
    ext_d,
    hook_chain,
    is_closed,
    lie_derivative,
    poincare_homotopy,
    schouten,
    wedge,
)
from .linalg import Inconsistent, nullspace, solve_sparse
from .polynomial import Chart, Polynomial


def zeta(k: int) -> int:
    """ζ(k) = -(-1)^(k(k+1)/2)."""
    if k < 1:
        raise ValueError("zeta is defined for k >= 1")
    return -1 if (k * (k + 1) // 2) % 2 == 0 else 1


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class Convention:
    hamiltonian_sign: int = -1
    comomentum_sign: int = -1

    def __post_init__(self):
        if self.hamiltonian_sign not in (1, -1) or self.comomentum_sign not in (1, -1):
            raise ValueError("convention signs must be +1 or -1")

    def describe(self) -> str:
        h = "dα = -X⌟ω" if self.hamiltonian_sign < 0 else "dα = +X⌟ω"
        c = "df_k(p) = -ζ(k)V_p⌟ω" if self.comomentum_sign < 0 else "df_k(p) = +ζ(k)V_p⌟ω"
        return f"{h}; {c}"


DEFINITION = Convention(-1, -1)


class NotHamiltonian(ValueError):
    """No multivector field (or no primitive) exists for the requested pairing."""


class NotClosed(ValueError):
    pass


# ---------------------------------------------------------------------------
# systems

class PlecticSystem:
    """A chart with a closed (n+1)-form ω and an optional Hamiltonian (n-1)-form H."""

    def __init__(self, chart: Chart, omega: Form, hamiltonian: Optional[Form] = None,
                 convention: Convention = DEFINITION, slack: int = 2, name: str = ""):
        if not isinstance(omega, Form) or omega.chart != chart:
            raise ValueError("omega must be a form on the given chart")
        if omega.degree < 2:
            raise DegreeError("omega must have degree at least 2")
        if not is_closed(omega):
            raise NotClosed("omega is not closed")
        self.chart = chart
        self.omega = omega
        self.n = omega.degree - 1
        self.convention = convention
        self.slack = slack
        self.name = name
        self.hamiltonian = None
        self._x_h = None
        if hamiltonian is not None:
            if hamiltonian.degree != self.n - 1 and hamiltonian:
                raise DegreeError(f"H must have degree n-1 = {self.n - 1}")
            self.hamiltonian = hamiltonian if hamiltonian.degree == self.n - 1 else Form.zero(chart, self.n - 1)
            self._x_h = hamiltonian_field(self, self.hamiltonian)

    @property
    def sign(self) -> int:
        return self.convention.hamiltonian_sign

    @property
    def x_h(self) -> MultiVec:
        if self._x_h is None:
            raise ValueError("the system has no Hamiltonian form")
        return self._x_h

    def with_convention(self, convention: Convention) -> "PlecticSystem":
        return PlecticSystem(self.chart, self.omega, self.hamiltonian, convention, self.slack, self.name)

    def with_hamiltonian(self, H: Form) -> "PlecticSystem":
        return PlecticSystem(self.chart, self.omega, H, self.convention, self.slack, self.name)

    def grading(self, form_degree: int) -> int:
        """Bracket grading |α| = k + 1 for α of degree n - k."""
        return self.n - form_degree + 1

    def field_degree(self, form_degree: int) -> int:
        return self.n - form_degree

    def __repr__(self):
        return f"PlecticSystem({self.chart}, n={self.n})"


# ---------------------------------------------------------------------------
# nondegeneracy

@dataclass
class NondegeneracyReport:
    status: str  # "nplectic" or "pre_nplectic"
    symbolic: bool
    kernel: List[MultiVec]
    points: List[Tuple] = field(default_factory=list)


def _contraction_matrix(omega: Form, k: int, point=None):
    """Matrix of V ↦ V⌟ω on constant k-vectors (columns) at ``point``."""
    n = omega.chart.dim
    cols = list(itertools.combinations(range(n), k))
    rows = list(itertools.combinations(range(n), omega.degree - k))
    pos = {r: i for i, r in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, I in enumerate(cols):
        for K, w in omega.comps.items():
            s, rest = _contract_sign(I, K)
            if not s:
                continue
            val = w.constant_term() if point is None else w.evaluate(point)
            mat[pos[rest]][j] += s * Fraction(val)
    return mat, cols


def kernel_basis(omega: Form, k: int = 1, point=None) -> List[MultiVec]:
    """Constant k-vectors V with V⌟ω = 0 (at ``point`` if ω is not constant)."""
    chart = omega.chart
    mat, cols = _contraction_matrix(omega, k, point)
    return [MultiVec(chart, k, {c: v for c, v in zip(cols, vec) if v}) for vec in nullspace(mat, len(cols))]


def check_nplectic(sys: PlecticSystem, samples: int = 5, seed: int = 0) -> NondegeneracyReport:
    """Decide injectivity of V ↦ V⌟ω (symbolically for constant ω, else at sample points)."""
    omega = sys.omega
    if omega.is_constant():
        ker = kernel_basis(omega, 1)
        return NondegeneracyReport("pre_nplectic" if ker else "nplectic", True, ker)
    rng = random.Random(seed)
    kernel, pts = [], []
    for _ in range(samples):
        pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(sys.chart.dim))
        pts.append(pt)
        kernel.extend(kernel_basis(omega, 1, pt))
    return NondegeneracyReport("pre_nplectic" if kernel else "nplectic", False, kernel, pts)


# ---------------------------------------------------------------------------
# Hamiltonian pairing

def _monomials(nvars: int, max_deg: int):
    for d in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            yield tuple(e)


def solve_contraction(omega: Form, target: Form, k: int, max_deg: int) -> MultiVec:
    """Find a k-vector X with polynomial coefficients of degree <= max_deg and X⌟ω = target.

    Free unknowns (kernel directions) are set to zero.  Raises NotHamiltonian.
    """
    chart = omega.chart
    n = chart.dim
    out_deg = omega.degree - k
    if target and target.degree != out_deg:
        raise DegreeError(f"target has degree {target.degree}, expected {out_deg}")
    if not target:
        return MultiVec.zero(chart, k)
    equations: Dict[Tuple, Dict] = {}
    monos = list(_monomials(n, max_deg))
    for I in itertools.combinations(range(n), k):
        for K, w in omega.comps.items():
            s, rest = _contract_sign(I, K)
            if not s:
                continue
            for e in monos:
                for we, wc in w.items():
                    key = (rest, tuple(a + b for a, b in zip(e, we)))
                    eq = equations.setdefault(key, {})
                    eq[(I, e)] = eq.get((I, e), 0) + s * wc
    rhs_map = {}
    for J, f in target.comps.items():
        for e, c in f.items():
            rhs_map[(J, e)] = c
    for key in rhs_map:
        if key not in equations:
            raise NotHamiltonian("target has a component outside the image of the contraction")
    keys = list(equations)
    eqs = [{u: c for u, c in equations[kk].items() if c} for kk in keys]
    rhs = [rhs_map.get(kk, 0) for kk in keys]
    try:
        sol, _free = solve_sparse(eqs, rhs)
    except Inconsistent:
        raise NotHamiltonian("linear system for the Hamiltonian field is inconsistent") from None
    comps: Dict[Tuple, Dict] = {}
    for (I, e), v in sol.items():
        comps.setdefault(I, {})[e] = v
    return MultiVec(chart, k, {I: Polynomial(n, t) for I, t in comps.items()})


def hamiltonian_field(sys: PlecticSystem, alpha: Form, slack: Optional[int] = None) -> MultiVec:
    """A multivector field X_α with dα = s·X_α⌟ω (s = the convention's sign)."""
    k = sys.n - alpha.degree
    if k < 0:
        raise DegreeError(f"a {alpha.degree}-form is too large to be Hamiltonian for n = {sys.n}")
    da = ext_d(alpha)
    if not da:
        return MultiVec.zero(sys.chart, k)
    target = da * sys.sign
    if k == 0:
        raise NotHamiltonian("degree-n forms pair with functions, which is not supported")
    slack = sys.slack if slack is None else slack
    tdeg = target.poly_degree()
    wmax = sys.omega.poly_degree()
    wmin = min(c.degree() for c in sys.omega.comps.values())
    lo = max(tdeg - wmax, 0)
    hi = max(tdeg - wmin, 0) + slack
    last = None
    for D in range(lo, hi + 1):
        try:
            return solve_contraction(sys.omega, target, k, D)
        except NotHamiltonian as exc:
            last = exc
    raise NotHamiltonian(f"no Hamiltonian {k}-vector field up to coefficient degree {hi}: {last}")


def is_hamiltonian_form(sys: PlecticSystem, alpha: Form) -> bool:
    try:
        hamiltonian_field(sys, alpha)
        return True
    except NotHamiltonian:
        return False


def hamiltonian_form(sys: PlecticSystem, X: MultiVec, base=None) -> Form:
    """A primitive α of X⌟ω, normalised so that dα = s·X⌟ω."""
    k = X.degree
    if k < 1 or k > sys.n:
        raise DegreeError(f"Hamiltonian fields have degree 1..{sys.n}")
    tau = _contract(X, sys.omega)
    if not tau:
        return Form.zero(sys.chart, sys.n - k)
    if not is_closed(tau):
        raise NotHamiltonian("X⌟ω is not closed, so X is not Hamiltonian")
    return poincare_homotopy(tau, base) * sys.sign


@dataclass
class HamiltonianPair:
    alpha: Form
    x_alpha: MultiVec
    residual: Form

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    @property
    def form_degree(self) -> int:
        return self.alpha.degree

    @property
    def field_degree(self) -> int:
        return self.x_alpha.degree


def pair_residual(sys: PlecticSystem, alpha: Form, X: MultiVec) -> Form:
    return ext_d(alpha) - _contract(X, sys.omega) * sys.sign


def make_pair(sys: PlecticSystem, alpha: Form, x_alpha: Optional[MultiVec] = None) -> HamiltonianPair:
    if x_alpha is None:
        x_alpha = hamiltonian_field(sys, alpha)
    return HamiltonianPair(alpha, x_alpha, pair_residual(sys, alpha, x_alpha))


def pair_from_field(sys: PlecticSystem, X: MultiVec) -> HamiltonianPair:
    alpha = hamiltonian_form(sys, X)
    return HamiltonianPair(alpha, X, pair_residual(sys, alpha, X))


# ---------------------------------------------------------------------------
# brackets

def poisson_form(sys: PlecticSystem, a: HamiltonianPair, b: HamiltonianPair) -> Form:
    """{a,b} = (-1)^|b| X_b⌟X_a⌟ω."""
    gb = sys.grading(b.alpha.degree)
    return hook_chain([a.x_alpha, b.x_alpha], sys.omega) * _sgn(gb)


def poisson(sys: PlecticSystem, a: HamiltonianPair, b: HamiltonianPair) -> HamiltonianPair:
    """Bracket with its Hamiltonian field -s·[X_a, X_b] attached (the Schouten bracket for s = -1)."""
    form = poisson_form(sys, a, b)
    X = schouten(a.x_alpha, b.x_alpha) * (-sys.sign)
    deg = sys.n + 1 - a.field_degree - b.field_degree
    if not form:
        form = Form.zero(sys.chart, max(deg, 0))
    return HamiltonianPair(form, X, pair_residual(sys, form, X))


@dataclass
class Observable:
    """Element of the observables complex: L_0 = Hamiltonian (n-1)-forms, L_i = Ω^(n-1-i)."""

    form: Form
    degree: int  # complex degree i
    field: Optional[MultiVec] = None

    @classmethod
    def from_pair(cls, p: HamiltonianPair) -> "Observable":
        return cls(p.alpha, 0, p.x_alpha)


def observable(sys: PlecticSystem, form: Form, degree: Optional[int] = None) -> Observable:
    i = sys.n - 1 - form.degree if degree is None else degree
    if i == 0:
        return Observable(form, 0, hamiltonian_field(sys, form))
    return Observable(form, i)


def l_bracket(sys: PlecticSystem, items: Sequence[Observable]) -> Observable:
    """The k-ary bracket l_k of the observables complex."""
    k = len(items)
    chart = sys.chart
    if k == 1:
        x = items[0]
        if x.degree == 0:
            return Observable(Form.zero(chart, sys.n), -1)
        dx = ext_d(x.form)
        out_deg = x.degree - 1
        return Observable(dx, out_deg, MultiVec.zero(chart, 1) if out_deg == 0 else None)
    out_deg = k - 2
    form_deg = sys.n + 1 - k
    if any(x.degree != 0 for x in items):
        return Observable(Form.zero(chart, max(form_deg, 0)), out_deg,
                          MultiVec.zero(chart, 1) if out_deg == 0 else None)
    form = hook_chain([x.field for x in items], sys.omega) * zeta(k)
    if not form:
        form = Form.zero(chart, form_deg)
    fld = None
    if out_deg == 0:
        # l_2(a, b) = X_b⌟X_a⌟ω has field -s·[X_a, X_b]
        fld = schouten(items[0].field, items[1].field) * (-sys.sign)
    return Observable(form, out_deg, fld)


def rogers_residual(sys: PlecticSystem, fields: Sequence[MultiVec]) -> Form:
    """d(X_m⌟...⌟X_1⌟ω) - (-1)^m Σ_{i<j} (-1)^(i+j) X_m⌟..X̂_j..X̂_i..⌟X_1⌟[X_i,X_j]⌟ω."""
    m = len(fields)
    lhs = ext_d(hook_chain(list(fields), sys.omega))
    rhs = None
    for i in range(m):
        for j in range(i + 1, m):
            inner = _contract(schouten(fields[i], fields[j]), sys.omega)
            rest = [f for t, f in enumerate(fields) if t not in (i, j)]
            term = hook_chain(rest, inner) * _sgn(i + j)  # 0-based: (-1)^(i+j) unchanged
            rhs = term if rhs is None else rhs + term
    if rhs is None:
        return lhs
    return lhs - rhs * _sgn(m)


def _unshuffles(m: int, i: int):
    for first in itertools.combinations(range(m), i):
        rest = tuple(t for t in range(m) if t not in first)
        yield first + rest


def _perm_signs(perm: Sequence[int], degrees: Sequence[int]) -> Tuple[int, int]:
    sign, koszul = 1, 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
                if degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                    koszul = -koszul
    return sign, koszul


def linfty_residual(sys: PlecticSystem, items: Sequence[Observable]) -> Form:
    """The m-th generalized Jacobi expression of the observables complex, m <= 3."""
    m = len(items)
    if m < 1 or m > 3:
        raise ValueError("the L-infinity identity is checked only for arity 1, 2, 3")
    degrees = [x.degree for x in items]
    total = None
    for i in range(1, m + 1):
        j = m + 1 - i
        for perm in _unshuffles(m, i):
            sign, koszul = _perm_signs(perm, degrees)
            inner = l_bracket(sys, [items[t] for t in perm[:i]])
            if inner.degree < 0:
                continue
            outer = l_bracket(sys, [inner] + [items[t] for t in perm[i:]])
            if outer.degree < 0:
                continue
            term = outer.form * (sign * koszul * _sgn(i * (j - 1)))
            if not term:
                continue
            total = term if total is None else total + term
    if total is None:
        return Form.zero(sys.chart, 0)
    return total


# ---------------------------------------------------------------------------
# identity residuals of the Poisson algebra

def skew_residual(sys, a: HamiltonianPair, b: HamiltonianPair) -> Form:
    ga, gb = sys.grading(a.form_degree), sys.grading(b.form_degree)
    return poisson_form(sys, a, b) + poisson_form(sys, b, a) * _sgn(ga * gb)


def poisson_schouten_residual(sys, a: HamiltonianPair, b: HamiltonianPair) -> Form:
    """[X_a,X_b]⌟ω + d{a,b} (zero under the definition's sign)."""
    return _contract(schouten(a.x_alpha, b.x_alpha), sys.omega) - ext_d(poisson_form(sys, a, b)) * sys.sign


def jacobi_defect_form(sys, a: HamiltonianPair, b: HamiltonianPair, c: HamiltonianPair) -> Form:
    """(-1)^(|b||c|+|b||a|+|b|) d(X_a⌟X_b⌟X_c⌟ω)."""
    ga, gb, gc = (sys.grading(p.form_degree) for p in (a, b, c))
    chain = hook_chain([c.x_alpha, b.x_alpha, a.x_alpha], sys.omega)
    return ext_d(chain) * _sgn(gb * gc + gb * ga + gb)


def jacobi_cyclic_sum(sys, a: HamiltonianPair, b: HamiltonianPair, c: HamiltonianPair) -> Form:
    """Σ_cyclic (-1)^(|a||c|) {a,{b,c}}."""
    ga, gb, gc = (sys.grading(p.form_degree) for p in (a, b, c))
    t1 = poisson_form(sys, a, poisson(sys, b, c)) * _sgn(ga * gc)
    t2 = poisson_form(sys, b, poisson(sys, c, a)) * _sgn(gb * ga)
    t3 = poisson_form(sys, c, poisson(sys, a, b)) * _sgn(gc * gb)
    return t1 + t2 + t3


def jacobi_residual(sys, a, b, c) -> Form:
    return jacobi_cyclic_sum(sys, a, b, c) - jacobi_defect_form(sys, a, b, c)


def conserved_interior_residual(sys, a: HamiltonianPair) -> Form:
    """[X_a, X_H]⌟ω - d L_{X_H} a."""
    return (_contract(schouten(a.x_alpha, sys.x_h), sys.omega)
            - ext_d(lie_derivative(sys.x_h, a.alpha)) * (-sys.sign))


def symmetry_interior_residual(sys, Y: MultiVec) -> Form:
    """[Y, X_H]⌟ω + d L_Y H, for Y with L_Y ω = 0."""
    return (_contract(schouten(Y, sys.x_h), sys.omega)
            + ext_d(lie_derivative(Y, sys.hamiltonian)) * (-sys.sign))


def well_defined_residual(sys, X: MultiVec, kappa: MultiVec) -> Form:
    """[X, κ]⌟ω for κ in the kernel of ω and X Hamiltonian."""
    return _contract(schouten(X, kappa), sys.omega)


# ---------------------------------------------------------------------------
# classification

LEVELS = ("none", "local", "global", "strict")
_RANK = {name: i for i, name in enumerate(LEVELS)}


def level_rank(level: str) -> int:
    return _RANK[level]


@dataclass
class ClassificationResult:
    level: str
    lie: Form
    witness: Optional[Form] = None
    note: str = ""

    def at_least(self, level: str) -> bool:
        return _RANK[self.level] >= _RANK[level]


STAR_NOTE = "chart is star-shaped: closed forms of positive degree are exact, so local and global coincide"


def classify_form(lie: Form) -> ClassificationResult:
    """Classify a Lie derivative as zero / exact / closed / neither."""
    if lie.is_zero():
        return ClassificationResult("strict", lie, Form.zero(lie.chart, max(lie.degree - 1, 0)))
    if lie.degree == 0:
        if lie.is_constant():
            return ClassificationResult("local", lie, None, "nonzero constant function: closed but not exact")
        return ClassificationResult("none", lie)
    if not is_closed(lie):
        return ClassificationResult("none", lie)
    return ClassificationResult("global", lie, poincare_homotopy(lie), STAR_NOTE)


def classify_conserved(sys: PlecticSystem, a: HamiltonianPair | Form) -> ClassificationResult:
    """Level of conservation of α from L_{X_H}α."""
    alpha = a.alpha if isinstance(a, HamiltonianPair) else a
    return classify_form(lie_derivative(sys.x_h, alpha))


def classify_symmetry(sys: PlecticSystem, X: MultiVec, weak: bool = False) -> ClassificationResult:
    """Level of symmetry of X from L_X H; X must be Hamiltonian unless ``weak``."""
    tau = _contract(X, sys.omega)
    if not is_closed(tau):
        if not weak:
            raise NotHamiltonian("X⌟ω is not closed, so X is not Hamiltonian")
        if lie_derivative(X, sys.omega):
            raise NotHamiltonian("X does not preserve ω")
    result = classify_form(lie_derivative(X, sys.hamiltonian))
    if weak and not is_closed(tau):
        result.note = (result.note + "; " if result.note else "") + "weak symmetry (not Hamiltonian)"
    return result


def noether_residual(sys: PlecticSystem, a: HamiltonianPair) -> Form:
    """L_{X_a}H - d(X_a⌟H) + L_{X_H}a - d(X_H⌟a), zero for every Hamiltonian pair."""
    H, XH = sys.hamiltonian, sys.x_h
    Xa, alpha = a.x_alpha, a.alpha
    return (lie_derivative(Xa, H) - ext_d(_contract(Xa, H))
            + lie_derivative(XH, alpha) - ext_d(_contract(XH, alpha)))


def noether_printed_residual(sys: PlecticSystem, a: HamiltonianPair) -> Form:
    """L_{X_a}H - d(X_a⌟H) - L_{X_H}a + d(X_H⌟a), the sign pattern as usually printed."""
    H, XH = sys.hamiltonian, sys.x_h
    Xa, alpha = a.x_alpha, a.alpha
    return (lie_derivative(Xa, H) - ext_d(_contract(Xa, H))
            - lie_derivative(XH, alpha) + ext_d(_contract(XH, alpha)))


@dataclass
class NoetherReport:
    pair: HamiltonianPair
    conserved: ClassificationResult
    symmetry: ClassificationResult
    residual: Form
    transfer_ok: bool


def _expected(level: str) -> str:
    # strict maps to global across the correspondence; local and global are preserved
    return "global" if level == "strict" else level


def noether_correspondence(sys: PlecticSystem, item) -> NoetherReport:
    """Pair a conserved quantity with its symmetry (or the reverse) and check the transfer."""
    if isinstance(item, MultiVec):
        pair = pair_from_field(sys, item)
    elif isinstance(item, Form):
        pair = make_pair(sys, item)
    else:
        pair = item
    cons = classify_conserved(sys, pair)
    sym = classify_symmetry(sys, pair.x_alpha)
    ok = (sym.at_least(_expected(cons.level)) and cons.at_least(_expected(sym.level)))
    return NoetherReport(pair, cons, sym, noether_residual(sys, pair), ok)


# ---------------------------------------------------------------------------
# random Hamiltonian data for constant-coefficient ω

def linear_symmetries(omega: Form) -> List[List[List[Fraction]]]:
    """Basis of matrices A with L_{Ax}ω = 0 (ω constant)."""
    chart = omega.chart
    n = chart.dim
    xs = [chart.var(i) for i in range(n)]
    columns = []
    keys = None
    for r in range(n):
        for c in range(n):
            V = MultiVec(chart, 1, {(r,): xs[c]})
            L = lie_derivative(V, omega)
            columns.append({idx: f.constant_term() for idx, f in L.comps.items()})
    keys = sorted({k for col in columns for k in col})
    mat = [[col.get(k, 0) for col in columns] for k in keys]
    basis = nullspace(mat, n * n) if keys else nullspace([], n * n)
    return [[[vec[r * n + c] for c in range(n)] for r in range(n)] for vec in basis]


def _linear_field(chart: Chart, A) -> MultiVec:
    n = chart.dim
    xs = [chart.var(i) for i in range(n)]
    comps = {}
    for r in range(n):
        f = Polynomial.zero(n)
        for c in range(n):
            if A[r][c]:
                f = f + xs[c] * A[r][c]
        if f:
            comps[(r,)] = f
    return MultiVec(chart, 1, comps)


class HamiltonianSampler:
    """Random Hamiltonian pairs on a constant-coefficient system."""

    def __init__(self, sys: PlecticSystem, rng: random.Random, max_deg: int = 2):
        if not sys.omega.is_constant():
            raise ValueError("the sampler needs constant-coefficient ω")
        self.sys = sys
        self.rng = rng
        self.max_deg = max_deg
        self._sym = None

    @property
    def symmetries(self):
        if self._sym is None:
            self._sym = [_linear_field(self.sys.chart, A) for A in linear_symmetries(self.sys.omega)]
        return self._sym

    def vector_field(self) -> MultiVec:
        """Random ω-preserving vector field: constant plus linear symmetry."""
        from .random_gen import rand_scalar

        chart = self.sys.chart
        rng = self.rng
        X = MultiVec(chart, 1, {(i,): rand_scalar(rng) for i in rng.sample(range(chart.dim), 2)})
        for V in rng.sample(self.symmetries, min(2, len(self.symmetries))):
            X = X + V * rand_scalar(rng, frac=False)
        return X

    def pair(self, form_degree: int) -> HamiltonianPair:
        from .random_gen import rand_form, rand_poly

        sys, rng = self.sys, self.rng
        k = sys.n - form_degree
        for _ in range(3):
            alpha = rand_form(rng, sys.chart, form_degree, self.max_deg, n_comps=rng.randint(2, 5))
            try:
                return make_pair(sys, alpha)
            except NotHamiltonian:
                pass
        if k == 1:
            X = self.vector_field()
        else:
            X = self.vector_field()
            for _ in range(k - 1):
                const = MultiVec(sys.chart, 1, {(rng.randrange(sys.chart.dim),): 1})
                X = wedge(X, const)
            if not is_closed(_contract(X, sys.omega)):
                X = MultiVec(sys.chart, k, {tuple(sorted(rng.sample(range(sys.chart.dim), k))): 1})
        alpha = hamiltonian_form(sys, X)
        if form_degree > 0:
            alpha = alpha + ext_d(rand_form(rng, sys.chart, form_degree - 1, self.max_deg))
        else:
            alpha = alpha + Form.scalar(sys.chart, rng.randint(-3, 3))
        return make_pair(sys, alpha, X)
