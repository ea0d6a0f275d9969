"""Finite-dimensional Lie algebras, the Chevalley-Eilenberg complex and actions."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exterior import MultiVec, schouten, sort_sign, wedge
from .linalg import nullspace
from .polynomial import Chart, as_scalar

Index = Tuple[int, ...]


class LieAlgebraError(ValueError):
    pass


class LieAlgebraData:
    """Lie algebra given by structure constants c[i][j][k]: [e_i, e_j] = sum_k c[i][j][k] e_k.

    Antisymmetry and the Jacobi identity are checked on construction.
    """

    def __init__(self, dim: int, structure_constants=None, names: Optional[Sequence[str]] = None):
        if dim < 1:
            raise LieAlgebraError("a Lie algebra needs positive dimension")
        self.dim = dim
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        if structure_constants is not None:
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        c[i][j][k] = Fraction(as_scalar(structure_constants[i][j][k]))
        self.c = c
        self.names = list(names) if names else [f"e{i + 1}" for i in range(dim)]
        if len(self.names) != dim:
            raise LieAlgebraError("wrong number of basis names")
        self._check()

    @classmethod
    def abelian(cls, dim: int, names=None) -> "LieAlgebraData":
        return cls(dim, None, names)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                      names=None) -> "LieAlgebraData":
        """Build from {(i, j): {k: c}} listing [e_i, e_j] for some i < j."""
        c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in brackets.items():
            for k, v in out.items():
                c[i][j][k] = as_scalar(v)
                c[j][i][k] = -as_scalar(v)
        return cls(dim, c, names)

    @classmethod
    def so3(cls) -> "LieAlgebraData":
        return cls.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})

    def is_abelian(self) -> bool:
        return all(x == 0 for row in self.c for col in row for x in col)

    def _check(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise LieAlgebraError(f"structure constants not antisymmetric at {(i, j, k)}")
        for a, b, cc in itertools.combinations(range(n), 3):
            total = self._vec_bracket(self.basis_vec(a), self._vec_bracket(self.basis_vec(b), self.basis_vec(cc)))
            total = _vadd(total, self._vec_bracket(self.basis_vec(b), self._vec_bracket(self.basis_vec(cc), self.basis_vec(a))))
            total = _vadd(total, self._vec_bracket(self.basis_vec(cc), self._vec_bracket(self.basis_vec(a), self.basis_vec(b))))
            if any(total):
                raise LieAlgebraError(f"Jacobi identity fails on {(a, b, cc)}")

    def basis_vec(self, i: int) -> List[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def _vec_bracket(self, u, v) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k in range(self.dim):
                    if self.c[i][j][k]:
                        out[k] += a * b * self.c[i][j][k]
        return out

    def bracket_basis(self, i: int, j: int) -> "WedgePower":
        return WedgePower(1, {(k,): v for k, v in enumerate(self.c[i][j]) if v})

    def __eq__(self, other):
        return isinstance(other, LieAlgebraData) and self.c == other.c

    def __repr__(self):
        return f"LieAlgebraData(dim={self.dim}, abelian={self.is_abelian()})"


def _vadd(u, v):
    return [a + b for a, b in zip(u, v)]


class WedgePower:
    """Element of Λ^k g: strictly increasing basis tuples -> rational coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Optional[Mapping[Sequence[int], object]] = None):
        self.degree = degree
        clean: Dict[Index, Fraction] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"basis tuple {idx} does not have length {degree}")
            s, key = sort_sign(idx)
            c = Fraction(as_scalar(c))
            if not s or not c:
                continue
            v = clean.get(key, Fraction(0)) + s * c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.coeffs = clean

    @classmethod
    def basis(cls, *idx: int) -> "WedgePower":
        return cls(len(idx), {tuple(idx): 1})

    @classmethod
    def one(cls) -> "WedgePower":
        return cls(0, {(): 1})

    @classmethod
    def zero(cls, degree: int) -> "WedgePower":
        return cls(degree, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "WedgePower") -> "WedgePower":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add wedge powers of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return WedgePower(self.degree, out)

    def __neg__(self):
        return WedgePower(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(as_scalar(c))
        return WedgePower(self.degree, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge_lie(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, WedgePower):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            basis = "^".join(names[i] if names else f"e{i + 1}" for i in idx) or "1"
            if c == 1:
                parts.append(basis)
            elif c == -1:
                parts.append("-" + basis)
            else:
                parts.append(f"{c}*{basis}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WedgePower[{self.degree}]({self.to_str()})"


def wedge_lie(p: WedgePower, q: WedgePower) -> WedgePower:
    out: Dict[Index, Fraction] = {}
    for i, a in p.coeffs.items():
        for j, b in q.coeffs.items():
            s, key = sort_sign(i + j)
            if s:
                out[key] = out.get(key, Fraction(0)) + s * a * b
    return WedgePower(p.degree + q.degree, out)


def _vec_to_wedge(v: Sequence[Fraction]) -> WedgePower:
    return WedgePower(1, {(k,): x for k, x in enumerate(v) if x})


def ce_differential(g: LieAlgebraData, p: WedgePower) -> WedgePower:
    """∂(ξ1^...^ξk) = sum_{i<j} (-1)^(i+j) [ξi,ξj]^ξ1..ξi-hat..ξj-hat..ξk; ∂ is zero on Λ^0 and Λ^1."""
    k = p.degree
    if k <= 1:
        return WedgePower.zero(max(k - 1, 0))
    out = WedgePower.zero(k - 1)
    for idx, c in p.coeffs.items():
        for a in range(k):
            for b in range(a + 1, k):
                br = g.bracket_basis(idx[a], idx[b])
                if not br:
                    continue
                rest = WedgePower(k - 2, {idx[:a] + idx[a + 1:b] + idx[b + 1:]: 1})
                sign = -1 if (a + b) % 2 else 1  # 0-based a,b: (-1)^((a+1)+(b+1))
                out = out + wedge_lie(br, rest) * (sign * c)
    return out


def basis_wedges(dim: int, k: int) -> List[Index]:
    return list(itertools.combinations(range(dim), k))


def ce_matrix(g: LieAlgebraData, k: int) -> List[List[Fraction]]:
    """Matrix of ∂_k: rows indexed by basis of Λ^(k-1), columns by basis of Λ^k."""
    cols = basis_wedges(g.dim, k)
    rows = basis_wedges(g.dim, k - 1) if k >= 1 else []
    pos = {r: i for i, r in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, idx in enumerate(cols):
        img = ce_differential(g, WedgePower(k, {idx: 1}))
        for r, v in img.coeffs.items():
            mat[pos[r]][j] = v
    return mat


def lie_kernel(g: LieAlgebraData, k: int) -> List[WedgePower]:
    """Basis of the k-th Lie kernel ker ∂_k ⊂ Λ^k g."""
    if k < 0 or k > g.dim:
        raise ValueError(f"degree {k} out of range for a {g.dim}-dimensional algebra")
    cols = basis_wedges(g.dim, k)
    if k <= 1:
        return [WedgePower(k, {c: 1}) for c in cols]
    mat = ce_matrix(g, k)
    if not any(any(r) for r in mat):
        return [WedgePower(k, {c: 1}) for c in cols]
    return [WedgePower(k, {c: v for c, v in zip(cols, vec) if v}) for vec in nullspace(mat)]


def in_lie_kernel(g: LieAlgebraData, p: WedgePower) -> bool:
    return ce_differential(g, p).is_zero()


def wedge_bracket(g: LieAlgebraData, p: WedgePower, q: WedgePower) -> WedgePower:
    """Schouten bracket on Λ•g: sum_{i,j} (-1)^(i+j) [ξi,ηj] ^ rest."""
    k, l = p.degree, q.degree
    if k == 0 or l == 0:
        return WedgePower.zero(max(k + l - 1, 0))
    out = WedgePower.zero(k + l - 1)
    for I, a in p.coeffs.items():
        for J, b in q.coeffs.items():
            for i in range(k):
                for j in range(l):
                    br = g.bracket_basis(I[i], J[j])
                    if not br:
                        continue
                    rest = WedgePower(k + l - 2, {I[:i] + I[i + 1:] + J[:j] + J[j + 1:]: 1})
                    sign = -1 if (i + j) % 2 else 1
                    out = out + wedge_lie(br, rest) * (sign * a * b)
    return out


def lemma_formula_residual(g: LieAlgebraData, p: WedgePower, q: WedgePower) -> WedgePower:
    """∂(p^q) - ∂p^q - (-1)^k p^∂q - (-1)^k [p,q]."""
    k = p.degree
    s = -1 if k % 2 else 1
    return (ce_differential(g, wedge_lie(p, q)) - wedge_lie(ce_differential(g, p), q)
            - wedge_lie(p, ce_differential(g, q)) * s - wedge_bracket(g, p, q) * s)


# ---------------------------------------------------------------------------
# actions

class ActionError(ValueError):
    pass


class ActionData:
    """Infinitesimal action: one vector field per basis element of g.

    Checks [V_ξ, V_η] = -V_[ξ,η] on all basis pairs.
    """

    def __init__(self, algebra: LieAlgebraData, chart: Chart, generators: Sequence[MultiVec],
                 check: bool = True):
        if len(generators) != algebra.dim:
            raise ActionError(f"expected {algebra.dim} generators, got {len(generators)}")
        for v in generators:
            if not isinstance(v, MultiVec) or (v.degree != 1 and v):
                raise ActionError("generators must be vector fields")
            if v.chart != chart:
                raise ActionError("generator on the wrong chart")
        self.algebra = algebra
        self.chart = chart
        self.generators = [v if v.degree == 1 else MultiVec.zero(chart, 1) for v in generators]
        if check:
            bad = self.homomorphism_defects()
            if bad:
                raise ActionError(f"[V_ξ,V_η] != -V_[ξ,η] for basis pairs {bad}")

    def homomorphism_defects(self) -> List[Tuple[int, int]]:
        bad = []
        for i, j in itertools.combinations(range(self.algebra.dim), 2):
            lhs = schouten(self.generators[i], self.generators[j])
            rhs = -self.generator_of(self.algebra.bracket_basis(i, j))
            if lhs != rhs:
                bad.append((i, j))
        return bad

    def generator_of(self, p: WedgePower) -> MultiVec:
        return infinitesimal_generator(self, p)

    @classmethod
    def trivial(cls, algebra: LieAlgebraData, chart: Chart) -> "ActionData":
        return cls(algebra, chart, [MultiVec.zero(chart, 1) for _ in range(algebra.dim)])


def infinitesimal_generator(action: ActionData, p: WedgePower) -> MultiVec:
    """V_p, linear in p, with V_(ξ1^...^ξk) = V_ξ1^...^V_ξk."""
    chart = action.chart
    k = p.degree
    if k > action.algebra.dim:
        raise ValueError("wedge degree exceeds the algebra dimension")
    out = MultiVec.zero(chart, k)
    for idx, c in p.coeffs.items():
        if any(i >= action.algebra.dim for i in idx):
            raise ValueError("wedge power does not belong to the acting algebra")
        term = MultiVec.scalar(chart, 1)
        for i in idx:
            term = wedge(term, action.generators[i])
        out = out + term * c
    return out


def ce_differential_fields(fields: Sequence[MultiVec]) -> MultiVec:
    """CE differential of V1^...^Vk in the Lie algebra of vector fields."""
    k = len(fields)
    chart = fields[0].chart
    if k <= 1:
        return MultiVec.zero(chart, 0)
    out = MultiVec.zero(chart, k - 1)
    for a in range(k):
        for b in range(a + 1, k):
            term = schouten(fields[a], fields[b])
            for c in range(k):
                if c != a and c != b:
                    term = wedge(term, fields[c])
            out = out + (term if (a + b) % 2 == 0 else -term)
    return out


def ce_differential_generator(action: ActionData, p: WedgePower) -> MultiVec:
    """∂V_p computed in the multivector fields, linear in p."""
    chart = action.chart
    out = MultiVec.zero(chart, max(p.degree - 1, 0))
    for idx, c in p.coeffs.items():
        if idx:
            out = out + ce_differential_fields([action.generators[i] for i in idx]) * c
    return out


def linear_action(algebra: LieAlgebraData, chart: Chart, matrices: Sequence[Sequence[Sequence]]) -> ActionData:
    """Action by linear vector fields V_A = (A x)·∂."""
    gens = []
    n = chart.dim
    xs = [chart.var(i) for i in range(n)]
    for A in matrices:
        comps = {}
        for i in range(n):
            f = sum((xs[j] * as_scalar(A[i][j]) for j in range(n) if A[i][j]), chart.var(0) * 0)
            if f:
                comps[(i,)] = f
        gens.append(MultiVec(chart, 1, comps))
    return ActionData(algebra, chart, gens)


def so3_rotation_action(chart: Chart, positions: Sequence[int] = (0, 1, 2)) -> ActionData:
    """so(3) acting by rotations on the coordinates at ``positions``; (E_i)_jk = -ε_ijk."""
    n = chart.dim
    mats = []
    for i in range(3):
        A = [[0] * n for _ in range(n)]
        for j in range(3):
            for k in range(3):
                e = _levi_civita(i, j, k)
                if e:
                    A[positions[j]][positions[k]] = -e
        mats.append(A)
    return linear_action(LieAlgebraData.so3(), chart, mats)


def _levi_civita(i, j, k) -> int:
    if len({i, j, k}) < 3:
        return 0
    s, _ = sort_sign((i, j, k))
    return s


def translation_action(chart: Chart, positions: Sequence[int]) -> ActionData:
    """Abelian action by coordinate translations along ``positions``."""
    g = LieAlgebraData.abelian(len(positions))
    return ActionData(g, chart, [MultiVec.basis(chart, (i,)) for i in positions])
