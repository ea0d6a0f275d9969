"""The multisymplectic phase space Λ^k(T*N) of a coordinate chart N:
canonical forms, complete lifts, momentum and position forms and their
bracket relations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .exterior import DegreeError, Form, MultiVec, _contract, ext_d, lie_derivative, schouten, sort_sign, wedge
from .lie import ActionData, ce_differential_fields
from .multisymplectic import (
    DEFINITION,
    Convention,
    HamiltonianPair,
    PlecticSystem,
    hamiltonian_field,
    pair_residual,
    poisson_form,
    zeta,
)
from .polynomial import Chart, Polynomial


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def fibre_name(I: Sequence[int]) -> str:
    return "p" + "_".join(str(i + 1) for i in I) if any(i >= 9 for i in I) else "p" + "".join(str(i + 1) for i in I)


class PhaseSpace:
    """Λ^k(T*N) over a chart N with coordinates (q, p_I), θ = Σ p_I dq^I and ω = -dθ."""

    def __init__(self, base: Chart, k: int, convention: Convention = DEFINITION):
        n = base.dim
        if not 1 <= k <= n:
            raise DegreeError(f"k must lie in 1..{n}")
        self.base = base
        self.k = k
        self.fibre = list(itertools.combinations(range(n), k))
        names = list(base.coord_names) + [fibre_name(I) for I in self.fibre]
        if len(set(names)) != len(names):
            raise ValueError("fibre coordinate names clash with base coordinates")
        self.chart = Chart(names)
        self.fibre_index = {I: n + j for j, I in enumerate(self.fibre)}
        N = self.chart.dim
        theta = Form.zero(self.chart, k)
        for I, pos in self.fibre_index.items():
            theta = theta + Form.basis(self.chart, I, Polynomial.var(pos, N))
        self.theta = theta
        self.omega = -ext_d(theta)
        self.system = PlecticSystem(self.chart, self.omega, convention=convention, name=f"Λ^{k}T*N")

    @property
    def n(self) -> int:
        return self.base.dim

    def _embed_poly(self, f: Polynomial) -> Polynomial:
        return f.embed(self.chart.dim, list(range(self.n)))

    def p(self, I: Sequence[int]) -> Polynomial:
        """The fibre coordinate p_I for an index tuple, with sign; zero if I repeats."""
        s, srt = sort_sign(tuple(I))
        if not s:
            return Polynomial.zero(self.chart.dim)
        return Polynomial.var(self.fibre_index[srt], self.chart.dim) * s


def build_phase_space(base: Chart, k: int, convention: Convention = DEFINITION) -> PhaseSpace:
    return PhaseSpace(base, k, convention)


def pullback(ps: PhaseSpace, obj: Union[Form, MultiVec]):
    """Embed a base form (pull-back along the projection) or a base multivector (horizontal copy)."""
    if obj.chart != ps.base:
        raise ValueError("object does not live on the base chart")
    cls = type(obj)
    return cls(ps.chart, obj.degree, {I: ps._embed_poly(f) for I, f in obj.comps.items()})


def position_form(ps: PhaseSpace, alpha: Form) -> Form:
    if alpha.degree > ps.k:
        raise DegreeError("position forms need deg α <= k")
    return pullback(ps, alpha)


def _lift_vector(ps: PhaseSpace, Y: MultiVec) -> MultiVec:
    """Complete lift of a base vector field: q' = Y, p_I' = -Σ_a p_{I(a->j)} ∂Y^j/∂q^{i_a}."""
    if Y.degree != 1:
        raise DegreeError("complete_lift of a single field needs a vector field")
    N = ps.chart.dim
    comps = {}
    for (j,), f in Y.comps.items():
        comps[(j,)] = ps._embed_poly(f)
    for I, pos in ps.fibre_index.items():
        acc = Polynomial.zero(N)
        for a, ia in enumerate(I):
            for (j,), f in Y.comps.items():
                df = f.diff(ia)
                if not df:
                    continue
                J = I[:a] + (j,) + I[a + 1:]
                acc = acc - ps.p(J) * ps._embed_poly(df)
        if acc:
            comps[(pos,)] = acc
    return MultiVec(ps.chart, 1, comps)


Decomposable = List[MultiVec]


@dataclass
class BaseMultivector:
    """A multivector field on the base kept as a sum of decomposables c·Y_1^...^Y_l.

    The complete lift is defined on decomposables, so the representation is kept.
    """
    base: Chart
    degree: int
    terms: List[Tuple[object, Decomposable]] = field(default_factory=list)

    @classmethod
    def from_fields(cls, fields: Sequence[MultiVec], coeff=1) -> "BaseMultivector":
        if not fields:
            raise DegreeError("need at least one vector field")
        return cls(fields[0].chart, len(fields), [(coeff, list(fields))])

    @classmethod
    def canonical(cls, Y: MultiVec) -> "BaseMultivector":
        """Split Σ Y^I ∂_I as Σ (Y^I ∂_{i1}) ^ ∂_{i2} ^ ... ^ ∂_{il}."""
        terms = []
        for I, f in Y.comps.items():
            fields = [MultiVec.basis(Y.chart, (I[0],), f)] + [MultiVec.basis(Y.chart, (i,)) for i in I[1:]]
            terms.append((1, fields))
        return cls(Y.chart, Y.degree, terms)

    def __add__(self, other: "BaseMultivector") -> "BaseMultivector":
        if other.degree != self.degree:
            raise DegreeError("degree mismatch")
        return BaseMultivector(self.base, self.degree, self.terms + other.terms)

    def scale(self, c) -> "BaseMultivector":
        return BaseMultivector(self.base, self.degree, [(c * a, f) for a, f in self.terms])

    def value(self) -> MultiVec:
        out = MultiVec.zero(self.base, self.degree)
        for c, fields in self.terms:
            w = MultiVec.scalar(self.base, 1)
            for f in fields:
                w = wedge(w, f)
            out = out + w * c
        return out

    def boundary(self) -> MultiVec:
        """The Lie-kernel differential ∂ applied term by term."""
        out = MultiVec.zero(self.base, self.degree - 1)
        for c, fields in self.terms:
            out = out + ce_differential_fields(fields) * c
        return out

    def in_lie_kernel(self) -> bool:
        return self.degree == 1 or self.boundary().is_zero()


def complete_lift(ps: PhaseSpace, Y: Union[MultiVec, BaseMultivector, Sequence[MultiVec]]) -> MultiVec:
    """Complete lift to Λ^k(T*N); multiplicative on decomposables.

    A bare MultiVec of degree > 1 is split with ``BaseMultivector.canonical``.
    """
    if isinstance(Y, MultiVec):
        if Y.degree == 1:
            return _lift_vector(ps, Y)
        if Y.degree == 0:
            return pullback(ps, Y)
        Y = BaseMultivector.canonical(Y)
    elif not isinstance(Y, BaseMultivector):
        Y = BaseMultivector.from_fields(list(Y))
    out = MultiVec.zero(ps.chart, Y.degree)
    for c, fields in Y.terms:
        w = MultiVec.scalar(ps.chart, 1)
        for f in fields:
            w = wedge(w, _lift_vector(ps, f))
        out = out + w * c
    return out


def lift_action(ps: PhaseSpace, action: ActionData) -> ActionData:
    """The induced action on the phase space; generators are complete lifts."""
    gens = [_lift_vector(ps, V) for V in action.generators]
    return ActionData(action.algebra, ps.chart, gens)


def _as_base(Y) -> BaseMultivector:
    if isinstance(Y, BaseMultivector):
        return Y
    if isinstance(Y, MultiVec):
        return BaseMultivector.canonical(Y) if Y.degree > 1 else BaseMultivector.from_fields([Y])
    return BaseMultivector.from_fields(list(Y))


def momentum_form(ps: PhaseSpace, Y, method: str = "pointwise") -> Form:
    """P(Y) of degree k - l.

    ``pointwise``: -ζ(l+1)·μ(Y, π_*·), the horizontal copy of Y contracted into θ.
    ``lift``: -ζ(l+1)·Y♯⌟θ.
    """
    Yb = _as_base(Y)
    l = Yb.degree
    if l > ps.k:
        raise DegreeError(f"momentum forms need l <= k = {ps.k}")
    if method == "pointwise":
        Z = pullback(ps, Yb.value())
    elif method == "lift":
        Z = complete_lift(ps, Yb)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = _contract(Z, ps.theta) * (-zeta(l + 1))
    return out if out else Form.zero(ps.chart, ps.k - l)


def momentum_pair(ps: PhaseSpace, Y) -> HamiltonianPair:
    """P(Y) with Hamiltonian field -s·ζ(l)·Y♯ (ζ(l)·Y♯ for s = -1); Y in the Lie kernel."""
    Yb = _as_base(Y)
    if not Yb.in_lie_kernel():
        raise ValueError("momentum pairs need a Lie-kernel multivector field")
    sys = ps.system
    P = momentum_form(ps, Yb)
    X = complete_lift(ps, Yb) * (-sys.sign * zeta(Yb.degree))
    return HamiltonianPair(P, X, pair_residual(sys, P, X))


def position_pair(ps: PhaseSpace, alpha: Form) -> HamiltonianPair:
    """π*α with a Hamiltonian field found by the exact solver."""
    a = position_form(ps, alpha)
    X = hamiltonian_field(ps.system, a)
    return HamiltonianPair(a, X, pair_residual(ps.system, a, X))


def is_vertical(ps: PhaseSpace, X: MultiVec) -> bool:
    """π_*X = 0: no component built only from base directions."""
    return all(any(i >= ps.n for i in I) for I in X.comps)


@dataclass
class BracketResidual:
    relation: str
    residual: Form

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


def momentum_bracket_residual(ps: PhaseSpace, Y1, Y2) -> Form:
    """{P(Y1),P(Y2)} + (-1)^(ts+s+t) P([Y1,Y2]) + (-1)^(ts+s) ζ(s+t) d(Y2♯⌟(Y1♯⌟θ)).

    The exact term uses the operand order Y2♯⌟Y1♯⌟θ with the coefficient
    obtained from the interior equation; ``printed=True`` variant below
    keeps the other arrangement for comparison.
    """
    return _momentum_bracket(ps, Y1, Y2, printed=False)


def momentum_bracket_printed_residual(ps: PhaseSpace, Y1, Y2) -> Form:
    """Same relation with the exact term written ζ(s+1)ζ(t+1) d(Y1♯⌟(Y2♯⌟θ)).

    Holds for (s,t) = (2,1); fails for (1,1) once k >= 2 and for (1,2).
    """
    return _momentum_bracket(ps, Y1, Y2, printed=True)


def _momentum_bracket(ps: PhaseSpace, Y1, Y2, printed: bool) -> Form:
    A, B = _as_base(Y1), _as_base(Y2)
    s, t = A.degree, B.degree
    a, b = momentum_pair(ps, A), momentum_pair(ps, B)
    br = poisson_form(ps.system, a, b)
    out = br if br else Form.zero(ps.chart, ps.k + 1 - s - t)
    bracket = schouten(A.value(), B.value())
    if bracket:
        out = out + momentum_form(ps, bracket) * _sgn(t * s + s + t)
    LA, LB = complete_lift(ps, A), complete_lift(ps, B)
    if s + t <= ps.k:
        if printed:
            out = out + ext_d(_contract(LA, _contract(LB, ps.theta))) * (zeta(s + 1) * zeta(t + 1))
        else:
            out = out + ext_d(_contract(LB, _contract(LA, ps.theta))) * (_sgn(t * s + s) * zeta(s + t))
    return out


def position_bracket_residual(ps: PhaseSpace, alpha: Form, beta: Form) -> Form:
    """{π*α, π*β}, which must vanish."""
    a, b = position_pair(ps, alpha), position_pair(ps, beta)
    br = poisson_form(ps.system, a, b)
    return br if br else Form.zero(ps.chart, max(ps.k + 1 - a.field_degree - b.field_degree, 0))


def mixed_bracket_residual(ps: PhaseSpace, alpha: Form, Y) -> Form:
    """{π*α, P(Y)} - (-1)^j ζ(j)·π*(Y⌟dα)."""
    return _mixed_bracket(ps, alpha, Y, printed=False)


def mixed_bracket_printed_residual(ps: PhaseSpace, alpha: Form, Y) -> Form:
    """{π*α, P(Y)} + ζ(j)·π*(Y⌟dα); agrees with the exact relation only for odd j."""
    return _mixed_bracket(ps, alpha, Y, printed=True)


def _mixed_bracket(ps: PhaseSpace, alpha: Form, Y, printed: bool) -> Form:
    Yb = _as_base(Y)
    j = Yb.degree
    a, b = position_pair(ps, alpha), momentum_pair(ps, Yb)
    br = poisson_form(ps.system, a, b)
    tail = _contract(Yb.value(), ext_d(alpha))
    out = br if br else Form.zero(ps.chart, alpha.degree + 1 - j)
    if tail:
        c = zeta(j) if printed else -_sgn(j) * zeta(j)
        out = out + pullback(ps, tail) * c
    return out


@dataclass
class PhaseBracketReport:
    entries: List[BracketResidual] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def verify_phase_brackets(ps: PhaseSpace, momenta: Sequence = (), positions: Sequence[Form] = ()) -> PhaseBracketReport:
    """All three bracket relations on every admissible pair of the given inputs."""
    report = PhaseBracketReport()
    mom = [_as_base(Y) for Y in momenta]
    for Y in mom:
        if not Y.in_lie_kernel():
            raise ValueError("momentum arguments must lie in the Lie kernel")
    for A in mom:
        for B in mom:
            if A.degree + B.degree - 1 <= ps.k:
                report.entries.append(BracketResidual("momentum", momentum_bracket_residual(ps, A, B)))
    for a in positions:
        for b in positions:
            if (ps.k - a.degree) + (ps.k - b.degree) - 1 <= ps.k and a.degree < ps.k and b.degree < ps.k:
                report.entries.append(BracketResidual("position", position_bracket_residual(ps, a, b)))
        for Y in mom:
            if a.degree < ps.k and (ps.k - a.degree) + Y.degree - 1 <= ps.k:
                report.entries.append(BracketResidual("mixed", mixed_bracket_residual(ps, a, Y)))
    return report


def random_kernel_element(rng, base: Chart, l: int, max_deg: int = 2, n_terms: int = 3) -> BaseMultivector:
    """A Lie-kernel l-vector field Y_1^...^Y_l of pairwise commuting fields.

    The variables are split into l disjoint blocks and Y_a only involves
    the coordinates (and directions) of block a, so all brackets vanish.
    """
    from .random_gen import rand_poly

    n = base.dim
    if not 1 <= l <= n:
        raise DegreeError(f"need 1 <= l <= {n}")
    idx = list(range(n))
    rng.shuffle(idx)
    cuts = sorted(rng.sample(range(1, n), l - 1)) if l > 1 else []
    blocks = [idx[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    fields = []
    for S in blocks:
        Y = MultiVec.zero(base, 1)
        for i in S:
            Y = Y + MultiVec.basis(base, (i,), rand_poly(rng, len(S), max_deg, n_terms).embed(n, S))
        fields.append(Y)
    return BaseMultivector.from_fields(fields)
