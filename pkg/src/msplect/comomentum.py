"""Homotopy co-momentum maps: verification, construction, preservation
levels of actions and the closure defect of brackets of momenta."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exterior import DegreeError, Form, MultiVec, _contract, ext_d, is_closed, lie_derivative, poincare_homotopy
from .lie import (
    ActionData,
    WedgePower,
    basis_wedges,
    ce_differential,
    in_lie_kernel,
    infinitesimal_generator,
    lie_kernel,
    wedge_bracket,
)
from .linalg import rref
from .multisymplectic import (
    ClassificationResult,
    HamiltonianPair,
    PlecticSystem,
    classify_conserved,
    classify_form,
    classify_symmetry,
    level_rank,
    pair_residual,
    poisson_form,
    zeta,
)
from .exterior import schouten


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


class ComomentumError(ValueError):
    pass


class ComomentumMap:
    """Components f_k stored on a basis of Λ^k g (full maps) or of the Lie kernel (weak maps).

    ``components[k]`` is a list of (p, f_k(p)) pairs; values on other
    elements are obtained by linear extension in that basis.
    """

    def __init__(self, action: ActionData, n: int, components: Dict[int, List[Tuple[WedgePower, Form]]],
                 weak: bool = False, name: str = ""):
        self.action = action
        self.n = n
        self.weak = weak
        self.name = name
        self.components: Dict[int, List[Tuple[WedgePower, Form]]] = {}
        for k, items in components.items():
            if k < 1 or k > n:
                raise DegreeError(f"component degree {k} outside 1..{n}")
            for p, f in items:
                if p.degree != k:
                    raise DegreeError(f"f_{k} given on a degree-{p.degree} element")
                if f and f.degree != n - k:
                    raise DegreeError(f"f_{k}(p) must have degree {n - k}, got {f.degree}")
            self.components[k] = list(items)

    @classmethod
    def from_basis(cls, action: ActionData, n: int, values: Dict[Tuple[int, ...], Form], weak=False, name=""):
        """Build from {basis tuple: form}; missing basis wedges of a present degree map to zero."""
        comps: Dict[int, List[Tuple[WedgePower, Form]]] = {}
        for idx, f in values.items():
            comps.setdefault(len(idx), []).append((WedgePower(len(idx), {tuple(idx): 1}), f))
        return cls(action, n, comps, weak, name)

    def degrees(self) -> List[int]:
        return sorted(self.components)

    def evaluate(self, p: WedgePower) -> Form:
        """f_k(p) by linear extension; raises if p is outside the span of stored elements."""
        k = p.degree
        chart = self.action.chart
        if p.is_zero():
            return Form.zero(chart, max(self.n - k, 0))
        items = self.components.get(k, [])
        if not self.weak:
            # full maps: unlisted basis wedges are zero
            table = {}
            for q, f in items:
                if len(q.coeffs) == 1 and next(iter(q.coeffs.values())) == 1:
                    table[next(iter(q.coeffs))] = f
                else:
                    table = None
                    break
            if table is not None:
                out = Form.zero(chart, self.n - k)
                for idx, c in p.coeffs.items():
                    if idx in table:
                        out = out + table[idx] * c
                return out
        coeffs = _decompose(p, [q for q, _ in items])
        out = Form.zero(chart, self.n - k)
        for c, (_, f) in zip(coeffs, items):
            if c:
                out = out + f * c
        return out


def _decompose(p: WedgePower, basis: Sequence[WedgePower]) -> List[Fraction]:
    keys = sorted({k for q in basis for k in q.coeffs} | set(p.coeffs))
    for k in p.coeffs:
        if not any(k in q.coeffs for q in basis):
            raise ComomentumError(f"{p} is not in the span of the stored elements")
    rows = [[q.coeffs.get(k, Fraction(0)) for q in basis] + [p.coeffs.get(k, Fraction(0))] for k in keys]
    red, pivots = rref(rows)
    m = len(basis)
    if m in pivots:
        raise ComomentumError(f"{p} is not in the span of the stored elements")
    sol = [Fraction(0)] * m
    for row, piv in zip(red, pivots):
        sol[piv] = row[-1]
    return sol


@dataclass
class ResidualEntry:
    degree: int
    element: WedgePower
    residual: Form

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


@dataclass
class ResidualReport:
    entries: List[ResidualEntry] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def first_failure(self) -> Optional[ResidualEntry]:
        return next((e for e in self.entries if not e.ok), None)


def _cc(sys: PlecticSystem) -> int:
    return sys.convention.comomentum_sign


def verify_comomentum(cmap: ComomentumMap, sys: PlecticSystem) -> ResidualReport:
    """Residuals of -f_{k-1}(∂p) = df_k(p) - c·ζ(k)·V_p⌟ω on all basis wedges, k = 1..n."""
    if cmap.weak:
        raise ComomentumError("use verify_weak_comomentum for weak maps")
    g = cmap.action.algebra
    c = _cc(sys)
    report = ResidualReport(note=sys.convention.describe())
    for k in range(1, min(sys.n, g.dim) + 1):
        for idx in basis_wedges(g.dim, k):
            p = WedgePower(k, {idx: 1})
            fk = cmap.evaluate(p)
            Vp = infinitesimal_generator(cmap.action, p)
            res = ext_d(fk) - _contract(Vp, sys.omega) * (c * zeta(k))
            if k >= 2:
                dp = ce_differential(g, p)
                if dp:
                    res = res + cmap.evaluate(dp)
            report.entries.append(ResidualEntry(k, p, res))
    return report


def verify_weak_comomentum(cmap: ComomentumMap, sys: PlecticSystem,
                           elements: Optional[Dict[int, List[WedgePower]]] = None) -> ResidualReport:
    """Residuals of df_k(p) = c·ζ(k)·V_p⌟ω on the stored Lie-kernel elements (or ``elements``)."""
    c = _cc(sys)
    report = ResidualReport(note=sys.convention.describe())
    g = cmap.action.algebra
    for k in (sorted(elements) if elements else cmap.degrees()):
        items = elements[k] if elements else [p for p, _ in cmap.components[k]]
        for p in items:
            if not in_lie_kernel(g, p):
                raise ComomentumError(f"{p} is not in the Lie kernel")
            Vp = infinitesimal_generator(cmap.action, p)
            res = ext_d(cmap.evaluate(p)) - _contract(Vp, sys.omega) * (c * zeta(k))
            report.entries.append(ResidualEntry(k, p, res))
    return report


def build_exact_comomentum(sys: PlecticSystem, theta: Form, action: ActionData) -> ComomentumMap:
    """Weak map f_l(p) = c·ζ(l+1)·V_p⌟θ for an action preserving θ with dθ = -ω.

    With the definition's sign c = -1 this is f_l(p) = -ζ(l+1)·V_p⌟θ.
    """
    if ext_d(theta) + sys.omega:
        raise ComomentumError("dθ must equal -ω")
    for i, V in enumerate(action.generators):
        if lie_derivative(V, theta):
            raise ComomentumError(f"generator {i + 1} does not preserve θ")
    c = _cc(sys)
    comps = {}
    for l in range(1, min(sys.n, action.algebra.dim, theta.degree) + 1):
        items = []
        for p in lie_kernel(action.algebra, l):
            Vp = infinitesimal_generator(action, p)
            items.append((p, _contract(Vp, theta) * (c * zeta(l + 1))))
        if items:
            comps[l] = items
    return ComomentumMap(action, sys.n, comps, weak=True, name="exact")


def construct_weak_comomentum(sys: PlecticSystem, action: ActionData) -> ComomentumMap:
    """Weak map by integrating c·ζ(k)·V_p⌟ω with the homotopy operator on each kernel basis element."""
    c = _cc(sys)
    comps = {}
    for k in range(1, min(sys.n, action.algebra.dim) + 1):
        items = []
        for p in lie_kernel(action.algebra, k):
            tau = _contract(infinitesimal_generator(action, p), sys.omega) * (c * zeta(k))
            if not is_closed(tau):
                raise ComomentumError(f"V_p⌟ω is not closed for p = {p}")
            f = poincare_homotopy(tau) if tau else Form.zero(sys.chart, sys.n - k)
            items.append((p, f))
        if items:
            comps[k] = items
    return ComomentumMap(action, sys.n, comps, weak=True, name="homotopy")


# ---------------------------------------------------------------------------
# preservation and conservation

@dataclass
class PreservationLevel:
    level: str
    per_generator: List[ClassificationResult]


def classify_preservation(action: ActionData, sys: PlecticSystem) -> PreservationLevel:
    """Minimum over generators of the level of L_{V_ξ}H, after checking L_{V_ξ}ω = 0."""
    if sys.hamiltonian is None:
        raise ComomentumError("the system has no Hamiltonian form")
    results = []
    for i, V in enumerate(action.generators):
        if lie_derivative(V, sys.omega):
            raise ComomentumError(f"generator {i + 1} does not preserve ω; the action is not multisymplectic")
        results.append(classify_form(lie_derivative(V, sys.hamiltonian)))
    level = min((r.level for r in results), key=level_rank, default="strict")
    return PreservationLevel(level, results)


@dataclass
class MomentumEntry:
    element: WedgePower
    conserved: ClassificationResult
    symmetry: ClassificationResult


@dataclass
class MomentumReport:
    preservation: PreservationLevel
    entries: List[MomentumEntry]
    required: str

    @property
    def ok(self) -> bool:
        return all(e.conserved.at_least(self.required) and e.symmetry.at_least(self.required)
                   for e in self.entries)


def momentum_conservation_report(cmap: ComomentumMap, sys: PlecticSystem) -> MomentumReport:
    """Classify every stored f_k(p) (p in the Lie kernel) and every V_p."""
    pres = classify_preservation(cmap.action, sys)
    g = cmap.action.algebra
    required = {"strict": "global", "global": "local", "local": "local"}.get(pres.level, "none")
    entries = []
    for k in cmap.degrees():
        for p, f in cmap.components[k]:
            if not in_lie_kernel(g, p):
                continue
            cons = classify_conserved(sys, f)
            sym = classify_symmetry(sys, infinitesimal_generator(cmap.action, p))
            entries.append(MomentumEntry(p, cons, sym))
    return MomentumReport(pres, entries, required)


# ---------------------------------------------------------------------------
# closure defect

@dataclass
class ClosureDefect:
    p: WedgePower
    q: WedgePower
    form: Form
    closed: bool
    field_residual: Form

    @property
    def ok(self) -> bool:
        return self.closed and self.field_residual.is_zero()


def momentum_pair(cmap: ComomentumMap, sys: PlecticSystem, p: WedgePower) -> HamiltonianPair:
    """f_k(p) with its Hamiltonian field (c/s)·ζ(k)·V_p."""
    k = p.degree
    f = cmap.evaluate(p)
    X = infinitesimal_generator(cmap.action, p) * (_cc(sys) * sys.sign * zeta(k))
    return HamiltonianPair(f, X, pair_residual(sys, f, X))


def closure_defect(cmap: ComomentumMap, sys: PlecticSystem, p: WedgePower, q: WedgePower) -> ClosureDefect:
    """{f_k(p), f_l(q)} - (-1)^(k+l+kl) f_{k+l-1}([p,q]) with a closedness certificate.

    Also checks that -s·ζ(k)ζ(l)[V_p, V_q] is a Hamiltonian field for the bracket.
    """
    g = cmap.action.algebra
    k, l = p.degree, q.degree
    if not in_lie_kernel(g, p) or not in_lie_kernel(g, q):
        raise ComomentumError("closure defect needs Lie-kernel elements")
    if k + l - 1 > sys.n:
        raise DegreeError("k + l - 1 exceeds n")
    a, b = momentum_pair(cmap, sys, p), momentum_pair(cmap, sys, q)
    br = poisson_form(sys, a, b)
    pq = wedge_bracket(g, p, q)
    deg = sys.n + 1 - k - l
    defect = br if br else Form.zero(sys.chart, deg)
    if pq:
        defect = defect - cmap.evaluate(pq) * _sgn(k + l + k * l)
    Vp = infinitesimal_generator(cmap.action, p)
    Vq = infinitesimal_generator(cmap.action, q)
    field = schouten(Vp, Vq) * (-sys.sign * zeta(k) * zeta(l))
    fres = pair_residual(sys, br if br else Form.zero(sys.chart, deg), field)
    return ClosureDefect(p, q, defect, is_closed(defect), fres)


def closure_defects(cmap: ComomentumMap, sys: PlecticSystem) -> List[ClosureDefect]:
    """Closure defects on all pairs of stored kernel elements with k + l - 1 <= n."""
    g = cmap.action.algebra
    out = []
    elems = [p for k in cmap.degrees() for p, _ in cmap.components[k] if in_lie_kernel(g, p)]
    for p in elems:
        for q in elems:
            if p.degree + q.degree - 1 > sys.n:
                continue
            pq = wedge_bracket(g, p, q)
            if pq and (pq.degree not in cmap.components):
                continue
            out.append(closure_defect(cmap, sys, p, q))
    return out
