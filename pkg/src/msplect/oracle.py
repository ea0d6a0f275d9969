"""Independent brute-force oracle on sympy.

Nothing here calls the engine's calculus.  Forms and multivectors are
dicts from sorted index tuples to sympy expressions; contraction is
multilinear evaluation on basis vectors, the Lie derivative of a vector
field uses the coordinate formula, the Hodge star is solved from
α∧*β = <α,β>vol, and Hamiltonian fields and complete lifts come from a
dense linear solve over all monomials up to a degree bound.  Only the
tokenizer of the expression grammar is shared with the engine.

    python -m msplect.oracle freeze [PATH]   write the fixture file
    python -m msplect.oracle check [ID ...]  recompute and compare
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp
from sympy.combinatorics import Permutation

from .parser import ParseError, tokenize

FIXTURE_PATH = Path(__file__).parent / "data" / "fixtures.json"


def zeta(k: int) -> int:
    return -((-1) ** (k * (k + 1) // 2))


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    if len(set(seq)) != len(seq):
        return 0
    if len(seq) < 2:
        return 1
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return Permutation(order).signature()


class OChart:
    def __init__(self, names: Sequence[str]):
        self.names = list(names)
        self.syms = sp.symbols(self.names, real=True) if len(self.names) > 1 else (sp.Symbol(self.names[0], real=True),)
        self.syms = tuple(self.syms)
        self.dim = len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


class O:
    """A form (kind 'form') or multivector (kind 'vec') with sympy coefficients."""

    def __init__(self, chart: OChart, kind: str, deg: int, comps=None):
        self.chart = chart
        self.kind = kind
        self.deg = deg
        self.comps: Dict[Tuple[int, ...], sp.Expr] = {}
        for idx, c in (comps or {}).items():
            s = perm_sign(idx)
            if s == 0:
                continue
            key = tuple(sorted(idx))
            self.comps[key] = self.comps.get(key, 0) + s * c
        self.comps = {k: v for k, v in ((k, sp.expand(v)) for k, v in self.comps.items()) if v != 0}

    @classmethod
    def scalar(cls, chart, c):
        return cls(chart, "form", 0, {(): c})

    def is_zero(self) -> bool:
        return not self.comps

    def _same(self, other):
        if self.kind != other.kind or (self.deg != other.deg and self.comps and other.comps):
            raise ValueError(f"cannot add {self.kind}{self.deg} and {other.kind}{other.deg}")
        return self.deg if self.comps else other.deg

    def __add__(self, other):
        deg = self._same(other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out.get(k, 0) + v
        return O(self.chart, self.kind, deg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return O(self.chart, self.kind, self.deg, {k: c * v for k, v in self.comps.items()})

    def map(self, fn):
        return O(self.chart, self.kind, self.deg, {k: fn(v) for k, v in self.comps.items()})

    def equals(self, other) -> bool:
        return self.kind == other.kind and (self - other).is_zero()

    def to_str(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for idx in sorted(self.comps):
            c = self.comps[idx]
            if c.has(sp.I):
                raise ValueError("complex coefficient in an oracle output")
            cs = str(c)
            if not idx:
                parts.append(f"({cs})")
                continue
            basis = "^".join((f"d({self.chart.names[i]})" if self.kind == "form" else f"@{self.chart.names[i]}") for i in idx)
            parts.append(f"({cs})*{basis}")
        return " + ".join(parts)


def wedge(a: O, b: O) -> O:
    if a.kind != b.kind:
        if a.kind == "form" and a.deg == 0:
            return b.scale(a.comps.get((), 0))
        if b.kind == "form" and b.deg == 0:
            return a.scale(b.comps.get((), 0))
        raise ValueError("cannot wedge a form with a multivector")
    out: Dict[Tuple[int, ...], sp.Expr] = {}
    for I, x in a.comps.items():
        for J, y in b.comps.items():
            s = perm_sign(I + J)
            if s:
                key = tuple(sorted(I + J))
                out[key] = out.get(key, 0) + s * x * y
    return O(a.chart, a.kind, a.deg + b.deg, out)


def d(a: O) -> O:
    out: Dict[Tuple[int, ...], sp.Expr] = {}
    for I, c in a.comps.items():
        for j, x in enumerate(a.chart.syms):
            dc = sp.diff(c, x)
            s = perm_sign((j,) + I)
            if dc != 0 and s:
                key = tuple(sorted((j,) + I))
                out[key] = out.get(key, 0) + s * dc
    return O(a.chart, "form", a.deg + 1, out)


def evaluate(tau: O, seq: Sequence[int]) -> sp.Expr:
    """τ(e_{seq[0]}, ..., e_{seq[-1]}) by antisymmetric extension."""
    s = perm_sign(tuple(seq))
    return s * tau.comps.get(tuple(sorted(seq)), 0) if s else 0


def hook(X: O, tau: O) -> O:
    """(X_1∧...∧X_k)⌟τ = τ(X_1, ..., X_k, ·), by evaluation on basis vectors."""
    n = tau.chart.dim
    k, m = X.deg, tau.deg
    if k > m:
        return O(tau.chart, "form", 0, {})
    out: Dict[Tuple[int, ...], sp.Expr] = {}
    for J, x in X.comps.items():
        for I in itertools.combinations(range(n), m - k):
            v = evaluate(tau, J + I)
            if v != 0:
                out[I] = out.get(I, 0) + x * v
    return O(tau.chart, "form", m - k, out)


def lie(X: O, tau: O) -> O:
    """L_X τ; coordinate formula for vector fields, d ι_X - (-1)^k ι_X d otherwise."""
    if X.deg != 1:
        return d(hook(X, tau)) - hook(X, d(tau)).scale((-1) ** X.deg)
    syms = tau.chart.syms
    comp = [X.comps.get((j,), 0) for j in range(tau.chart.dim)]
    out = O(tau.chart, "form", tau.deg, {I: sum(comp[j] * sp.diff(c, syms[j]) for j in range(len(syms)))
                                          for I, c in tau.comps.items()})
    for I, c in tau.comps.items():
        for a in range(len(I)):
            for j in range(len(syms)):
                dY = sp.diff(comp[I[a]], syms[j])
                if dY != 0:
                    seq = I[:a] + (j,) + I[a + 1:]
                    out = out + O(tau.chart, "form", tau.deg, {seq: c * dY})
    return out


def vector_bracket(X: O, Y: O) -> O:
    syms = X.chart.syms
    n = X.chart.dim
    out = {}
    for i in range(n):
        v = sum(X.comps.get((j,), 0) * sp.diff(Y.comps.get((i,), 0), syms[j])
                - Y.comps.get((j,), 0) * sp.diff(X.comps.get((i,), 0), syms[j]) for j in range(n))
        out[(i,)] = v
    return O(X.chart, "vec", 1, out)


def wedge_all(chart: OChart, fields: Sequence[O]) -> O:
    out = O(chart, "vec", 0, {(): 1})
    for f in fields:
        out = wedge(out, f)
    return out


def schouten_decomposable(A: Sequence[O], B: Sequence[O]) -> O:
    """[A_1∧..∧A_s, B_1∧..∧B_t] = Σ (-1)^(i+j) [A_i,B_j]∧A_(-i)∧B_(-j), indices from 1."""
    chart = A[0].chart
    out = O(chart, "vec", len(A) + len(B) - 1, {})
    for i, a in enumerate(A, start=1):
        for j, b in enumerate(B, start=1):
            rest = [x for k, x in enumerate(A, 1) if k != i] + [y for k, y in enumerate(B, 1) if k != j]
            out = out + wedge_all(chart, [vector_bracket(a, b)] + rest).scale((-1) ** (i + j))
    return out


def homotopy(tau: O) -> O:
    """Radial homotopy K τ = ∫_0^1 t^(m-1) (E⌟τ)(t x) dt with E = Σ x^j ∂_j."""
    t = sp.Symbol("t_homotopy", positive=True)
    chart = tau.chart
    E = O(chart, "vec", 1, {(j,): x for j, x in enumerate(chart.syms)})
    sub = {x: t * x for x in chart.syms}
    scaled = tau.map(lambda c: t ** (tau.deg - 1) * c.subs(sub, simultaneous=True))
    return hook(E, scaled).map(lambda c: sp.integrate(c, (t, 0, 1)))


# ---------------------------------------------------------------------------
# expression reader with sympy semantics

class OScope:
    def __init__(self, chart: OChart, complex_coords=()):
        self.chart = chart
        self.complex = {z: (x, y) for z, x, y in complex_coords}


def read(scope: OScope, text: str) -> O:
    return _Reader(scope, text).parse()


class _Reader:
    def __init__(self, scope: OScope, text: str):
        self.scope = scope
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, s):
        if self.take().text != s:
            raise ParseError(f"expected {s!r}", 1, self.toks[self.i - 1].col)

    def parse(self) -> O:
        v = self.expr()
        if self.peek().kind != "end":
            raise ParseError(f"unexpected {self.peek().text!r}", 1, self.peek().col)
        return v

    def expr(self):
        v = self.wedge()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            w = self.wedge()
            v = v + w if op == "+" else v - w
        return v

    def wedge(self):
        v = self.product()
        while self.peek().text == "^":
            self.take()
            v = wedge(v, self.product())
        return v

    def product(self):
        v = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take().text
            w = self.unary()
            if op == "*":
                if v.deg and w.deg and v.kind == w.kind == "form":
                    raise ParseError("use ^ for the wedge product", 1, 1)
                v = wedge(v, w)
            else:
                v = v.scale(1 / w.comps.get((), 0))
        return v

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        v = self.atom()
        if self.peek().kind == "pow":
            self.take()
            n = int(self.take().text)
            v = v.map(lambda c: c ** n)
        return v

    def atom(self):
        ch = self.scope.chart
        t = self.take()
        if t.kind == "num":
            return O.scalar(ch, sp.Rational(t.text))
        if t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.text == "@":
            name = self.take().text
            if name in self.scope.complex:
                x, y = self.scope.complex[name]
                return O(ch, "vec", 1, {(ch.index(x),): sp.Rational(1, 2), (ch.index(y),): -sp.I / 2})
            return O(ch, "vec", 1, {(ch.index(name),): 1})
        if t.kind == "name":
            if t.text in ("d", "Re", "Im", "conj") and self.peek().text == "(":
                self.take()
                v = self.expr()
                self.expect(")")
                if t.text == "d":
                    return d(v)
                if t.text == "conj":
                    return v.map(sp.conjugate)
                fn = sp.re if t.text == "Re" else sp.im
                return v.map(lambda c: fn(sp.expand(c)))
            if t.text == "i":
                return O.scalar(ch, sp.I)
            if t.text in self.scope.complex:
                x, y = self.scope.complex[t.text]
                return O.scalar(ch, ch.syms[ch.index(x)] + sp.I * ch.syms[ch.index(y)])
            if t.text in ch.names:
                return O.scalar(ch, ch.syms[ch.index(t.text)])
        raise ParseError(f"oracle cannot read {t.text!r}", 1, t.col)


# ---------------------------------------------------------------------------
# dense linear solves

def _monomials(syms, max_deg):
    out = [sp.Integer(1)]
    for deg in range(1, max_deg + 1):
        for combo in itertools.combinations_with_replacement(syms, deg):
            out.append(sp.Mul(*combo))
    return out


def _poly_degree(o: O) -> int:
    return max((sp.Poly(c, *o.chart.syms).total_degree() for c in o.comps.values()), default=0)


def _solve(residual_comps, unknowns, syms):
    eqs = []
    for e in residual_comps:
        e = sp.expand(e)
        if e != 0:
            eqs.extend(sp.Poly(e, *syms).coeffs())
    if not eqs:
        return [sp.Integer(0)] * len(unknowns), len(unknowns)
    sol = sp.linsolve(eqs, unknowns)
    if sol == sp.S.EmptySet:
        return None, 0
    (vals,) = list(sol)
    free = set()
    for v in vals:
        free |= v.free_symbols & set(unknowns)
    zero = {f: 0 for f in free}
    return [sp.expand(v.subs(zero)) for v in vals], len(free)


def dense_field(chart: OChart, omega: O, target: O, k: int, max_deg: int):
    """Solve X⌟ω = target over all k-vector fields with coefficients of degree <= max_deg.

    Returns (X, number of free parameters) or (None, 0).
    """
    mons = _monomials(chart.syms, max_deg)
    unknowns, comps = [], {}
    for J in itertools.combinations(range(chart.dim), k):
        cs = sp.symbols(f"u_{'_'.join(map(str, J))}_0:{len(mons)}")
        unknowns.extend(cs)
        comps[J] = sum(c * m for c, m in zip(cs, mons))
    X = O(chart, "vec", k, comps)
    res = hook(X, omega) - target
    vals, free = _solve(list(res.comps.values()), unknowns, chart.syms)
    if vals is None:
        return None, 0
    sub = dict(zip(unknowns, vals))
    return X.map(lambda c: c.subs(sub)), free


def hamiltonian_field(chart: OChart, omega: O, alpha: O, sign: int):
    """X with dα = sign·X⌟ω, from the dense solve."""
    n = omega.deg - 1
    da = d(alpha)
    deg = _poly_degree(da) + _poly_degree(omega) + 1
    return dense_field(chart, omega, da.scale(sign), n - alpha.deg, deg)


def sign_flag(lhs: O, rhs: O) -> int:
    """+1 if lhs = rhs, -1 if lhs = -rhs, 0 otherwise (both zero counts as +1)."""
    if (lhs - rhs).is_zero():
        return 1
    if (lhs + rhs).is_zero():
        return -1
    return 0


def ratio(lhs: O, rhs: O) -> Optional[sp.Rational]:
    """The constant κ with lhs = κ·rhs, if one exists."""
    if rhs.is_zero():
        return sp.Integer(0) if lhs.is_zero() else None
    I, c = next(iter(rhs.comps.items()))
    k = sp.simplify(lhs.comps.get(I, 0) / c)
    if not k.is_number:
        return None
    return k if (lhs - rhs.scale(k)).is_zero() else None


# ---------------------------------------------------------------------------
# phase space

def phase_chart(base: Sequence[str], k: int) -> Tuple[OChart, Dict[Tuple[int, ...], int]]:
    n = len(base)
    fib = list(itertools.combinations(range(n), k))
    names = list(base) + ["p" + ("_" if n > 9 else "").join(str(i + 1) for i in I) for I in fib]
    return OChart(names), {I: n + j for j, I in enumerate(fib)}


def tautological(chart: OChart, fibre, k) -> O:
    return O(chart, "form", k, {I: chart.syms[pos] for I, pos in fibre.items()})


def horizontal(chart: OChart, base_field: O) -> O:
    return O(chart, base_field.kind, base_field.deg,
             {I: c.subs(dict(zip(base_field.chart.syms, chart.syms)), simultaneous=True) for I, c in base_field.comps.items()})


def dense_lift(chart: OChart, fibre, theta: O, Y: O) -> O:
    """The vector field over Y with L θ = 0, from a dense solve for its vertical part."""
    Yh = horizontal(chart, Y)
    deg = _poly_degree(Yh) + 1
    mons = _monomials(chart.syms, deg)
    unknowns, comps = [], dict(Yh.comps)
    for I, pos in fibre.items():
        cs = sp.symbols(f"w_{pos}_0:{len(mons)}")
        unknowns.extend(cs)
        comps[(pos,)] = sum(c * m for c, m in zip(cs, mons))
    W = O(chart, "vec", 1, comps)
    vals, free = _solve(list(lie(W, theta).comps.values()), unknowns, chart.syms)
    if vals is None or free:
        raise ValueError("complete lift is not unique or does not exist")
    sub = dict(zip(unknowns, vals))
    return W.map(lambda c: c.subs(sub))


class Phase:
    def __init__(self, base: Sequence[str], k: int, sign: int = -1):
        self.base = OChart(base)
        self.k = k
        self.chart, self.fibre = phase_chart(base, k)
        self.theta = tautological(self.chart, self.fibre, k)
        self.omega = -d(self.theta)
        self.sign = sign

    def read_base(self, text):
        return read(OScope(self.base), text)

    def read(self, text):
        return read(OScope(self.chart), text)

    def lift(self, fields: Sequence[O]) -> O:
        return wedge_all(self.chart, [dense_lift(self.chart, self.fibre, self.theta, Y) for Y in fields])

    def momentum(self, fields: Sequence[O]) -> O:
        return hook(self.lift(fields), self.theta).scale(-zeta(len(fields) + 1))

    def momentum_of(self, Y: O) -> O:
        """P for a general base multivector via linearity over basis wedges f ∂_I."""
        out = O(self.chart, "form", self.k - Y.deg, {})
        for I, c in Y.comps.items():
            fields = [O(self.base, "vec", 1, {(I[0],): c})] + [O(self.base, "vec", 1, {(i,): 1}) for i in I[1:]]
            out = out + self.momentum(fields)
        return out

    def grading(self, form_deg: int) -> int:
        return self.k - form_deg + 1

    def bracket(self, a: O, Xb: O, b: O) -> O:
        """{a, b} = (-1)^|b| X_b⌟X_a⌟ω with X_a⌟ω = sign·da."""
        return hook(Xb, d(a).scale(self.sign)).scale((-1) ** self.grading(b.deg))


# ---------------------------------------------------------------------------
# G2

def top_coefficient(tau: O) -> sp.Expr:
    return tau.comps.get(tuple(range(tau.chart.dim)), 0)


def g2_metric(phi: O):
    """(g, v) with (e_i⌟φ)∧(e_j⌟φ)∧φ = -6 g_ij v dx^1..7 and v^2 = det g."""
    chart = phi.chart
    e = [O(chart, "vec", 1, {(i,): 1}) for i in range(7)]
    B = sp.Matrix(7, 7, lambda i, j: top_coefficient(wedge(wedge(hook(e[i], phi), hook(e[j], phi)), phi)))
    val = -B.det() / sp.Integer(6) ** 7
    v = sp.real_root(val, 9)
    g = -B / (6 * v)
    return g, v, B


def form_inner(ginv: sp.Matrix, I, J) -> sp.Expr:
    if len(I) != len(J):
        return 0
    if not I:
        return 1
    return ginv.extract(list(I), list(J)).det()


def star(phi_metric, tau: O) -> O:
    """*τ solved from e^I ∧ *τ = <e^I, τ> vol for all basis m-forms e^I."""
    g, v = phi_metric
    chart = tau.chart
    n, m = chart.dim, tau.deg
    ginv = g.inv()
    Ks = list(itertools.combinations(range(n), n - m))
    cs = sp.symbols(f"s0:{len(Ks)}")
    trial = O(chart, "form", n - m, dict(zip(Ks, cs)))
    eqs = []
    for I in itertools.combinations(range(n), m):
        lhs = top_coefficient(wedge(O(chart, "form", m, {I: 1}), trial))
        rhs = sum(form_inner(ginv, I, J) * c for J, c in tau.comps.items()) * v
        eqs.append(sp.expand(lhs - rhs))
    (vals,) = list(sp.linsolve(eqs, cs))
    return O(chart, "form", n - m, dict(zip(Ks, vals)))


def flat(g, X: O) -> O:
    n = X.chart.dim
    return O(X.chart, "form", 1, {(i,): sum(g[i, j] * X.comps.get((j,), 0) for j in range(n)) for i in range(n)})


def sharp(g, a: O) -> O:
    gi = g.inv()
    n = a.chart.dim
    return O(a.chart, "vec", 1, {(i,): sum(gi[i, j] * a.comps.get((j,), 0) for j in range(n)) for i in range(n)})


def cross(g, phi: O, X: O, Y: O) -> O:
    """X×Y with g(X×Y, e_k) = φ(X, Y, e_k), evaluated multilinearly."""
    n = phi.chart.dim
    low = {}
    for k in range(n):
        low[(k,)] = sum(X.comps.get((i,), 0) * Y.comps.get((j,), 0) * evaluate(phi, (i, j, k))
                        for i in range(n) for j in range(n))
    return sharp(g, O(phi.chart, "form", 1, low))


def curl(gv, psi: O, X: O) -> O:
    """(curl X)♭ = *(dX♭∧ψ)."""
    g, _ = gv
    return sharp(g, star(gv, wedge(d(flat(g, X)), psi)))


def pi14(gv, phi: O, a: O) -> O:
    return (a.scale(2) + star(gv, wedge(phi, a))).scale(sp.Rational(1, 3))


# ---------------------------------------------------------------------------
# fixture kinds

def _rat(x) -> str:
    return str(sp.Rational(x)) if x is not None else None


def _scope(spec) -> OScope:
    return OScope(OChart(spec["coords"]), [tuple(z) for z in spec.get("complex", [])])


def _algebra(spec):
    dim = spec["dim"]
    c = {}
    for key, out in spec.get("brackets", {}).items():
        i, j = (int(s[1:]) - 1 for s in key.split(","))
        for name, val in out.items():
            kk = int(name[1:]) - 1
            c[(i, j, kk)] = sp.Rational(val)
            c[(j, i, kk)] = -sp.Rational(val)
    return dim, c


def _ce_boundary(dim, c, p: Tuple[int, ...]) -> Dict[Tuple[int, ...], sp.Expr]:
    """∂(ξ_1∧..∧ξ_k) = Σ_{i<j} (-1)^(i+j) [ξ_i,ξ_j]∧ξ_1..ξ̂_i..ξ̂_j..ξ_k, indices from 1."""
    out: Dict[Tuple[int, ...], sp.Expr] = {}
    k = len(p)
    for a in range(k):
        for b in range(a + 1, k):
            rest = tuple(x for t, x in enumerate(p) if t not in (a, b))
            for kk in range(dim):
                v = c.get((p[a], p[b], kk), 0)
                if v:
                    seq = (kk,) + rest
                    s = perm_sign(seq)
                    if s:
                        key = tuple(sorted(seq))
                        out[key] = out.get(key, 0) + s * (-1) ** (a + b + 2) * v
    return {k_: v for k_, v in out.items() if v != 0}


def _wedge_name(p: Tuple[int, ...]) -> str:
    return "^".join(f"e{i + 1}" for i in p)


def _parse_wedge(s: str) -> Tuple[int, ...]:
    return tuple(int(x.strip()[1:]) - 1 for x in s.split("^"))


def k_hook(spec):
    sc = _scope(spec)
    return {"value": hook(read(sc, spec["X"]), read(sc, spec["tau"])).to_str()}


def k_lie(spec):
    sc = _scope(spec)
    return {"value": lie(read(sc, spec["X"]), read(sc, spec["tau"])).to_str()}


def k_homotopy(spec):
    sc = _scope(spec)
    tau = read(sc, spec["tau"])
    if "X" in spec:
        tau = hook(read(sc, spec["X"]), tau)
    return {"value": homotopy(tau).to_str()}


def k_ce_boundary(spec):
    dim, c = _algebra(spec)
    out = _ce_boundary(dim, c, _parse_wedge(spec["p"]))
    return {"value": {_wedge_name(k): str(v) for k, v in sorted(out.items())}}


def k_kernel_dims(spec):
    dim, c = _algebra(spec)
    dims = []
    for k in range(1, dim + 1):
        src = list(itertools.combinations(range(dim), k))
        tgt = list(itertools.combinations(range(dim), k - 1))
        M = sp.zeros(len(tgt), len(src))
        for col, p in enumerate(src):
            for key, v in _ce_boundary(dim, c, p).items():
                M[tgt.index(key), col] = v
        dims.append(len(src) - M.rank())
    return {"dims": dims}


def k_hamiltonian_field(spec):
    sc = _scope(spec)
    omega, alpha = read(sc, spec["omega"]), read(sc, spec["alpha"])
    X, free = hamiltonian_field(sc.chart, omega, alpha, spec["sign"])
    out = {"field": X.to_str() if X is not None else None, "free": free}
    if "printed" in spec:
        P = read(sc, spec["printed"])
        out["printed_sign"] = sign_flag(d(alpha), hook(P, omega))
    return out


def k_hamiltonian_flag(spec):
    """Which hamiltonian_sign s makes dα = s·X⌟ω hold for the stated pair."""
    sc = _scope(spec)
    omega, alpha, X = (read(sc, spec[k]) for k in ("omega", "alpha", "field"))
    out = {"sign": sign_flag(d(alpha), hook(X, omega))}
    if "corrected" in spec:
        out["corrected_sign"] = sign_flag(d(read(sc, spec["corrected"])), hook(X, omega))
    return out


def k_plectic_example(spec):
    """Hamiltonian fields, Lie derivatives, the Poisson bracket and the Noether residual."""
    sc = _scope(spec)
    s = spec["sign"]
    omega, H, alpha = (read(sc, spec[k]) for k in ("omega", "H", "alpha"))
    XH, _ = hamiltonian_field(sc.chart, omega, H, s)
    Xa, _ = hamiltonian_field(sc.chart, omega, alpha, s)
    n = omega.deg - 1
    grading_H = n - H.deg + 1
    sym_side = lie(Xa, H) - d(hook(Xa, H))
    cons_side = lie(XH, alpha) - d(hook(XH, alpha))
    out = {
        "x_h": XH.to_str(), "x_alpha": Xa.to_str(),
        "lie_xalpha_h": lie(Xa, H).to_str(), "lie_xh_alpha": lie(XH, alpha).to_str(),
        "poisson_alpha_h": hook(XH, hook(Xa, omega)).scale((-1) ** grading_H).to_str(),
        "noether_printed_residual": (sym_side - cons_side).to_str(),
        "noether_kappa": _rat(ratio(sym_side, cons_side)),
    }
    for key in ("printed_x_h", "printed_x_alpha"):
        if key in spec:
            target = H if key == "printed_x_h" else alpha
            out[key + "_sign"] = sign_flag(d(target), hook(read(sc, spec[key]), omega))
    return out


def k_comomentum(spec):
    """Per-component sign flags c with df_k(p) = c·ζ(k)·V_p⌟ω - f_(k-1)(∂p) for p in the Lie kernel."""
    sc = _scope(spec)
    omega = read(sc, spec["omega"])
    gens = [read(sc, g) for g in spec["generators"]]
    dim = len(gens)
    _, c = _algebra({"dim": dim, "brackets": spec.get("brackets", {})})
    comps = {}
    for item in spec["components"]:
        p = _parse_wedge(item["p"])
        if _ce_boundary(dim, c, p):
            raise ValueError("oracle comomentum fixtures use Lie-kernel basis elements")
        Vp = wedge_all(sc.chart, [gens[i] for i in p])
        rhs = hook(Vp, omega).scale(zeta(len(p)))
        entry = {"printed": sign_flag(d(read(sc, item["printed"])), rhs)}
        if "corrected" in item:
            entry["corrected"] = sign_flag(d(read(sc, item["corrected"])), rhs)
        comps[item["p"]] = entry
    return {"flags": comps}


def k_hook_identity(spec):
    """κ with X⌟ω = κ·d(target); used for the printed contraction statements."""
    sc = _scope(spec)
    lhs = hook(read(sc, spec["X"]), read(sc, spec["tau"]))
    out = {"kappa": _rat(ratio(lhs, d(read(sc, spec["target"]))))}
    if "corrected" in spec:
        out["corrected_kappa"] = _rat(ratio(lhs, d(read(sc, spec["corrected"]))))
    return out


def k_lift(spec):
    ph = Phase(spec["base"], spec["k"])
    Y = ph.read_base(spec["Y"])
    return {"value": dense_lift(ph.chart, ph.fibre, ph.theta, Y).to_str()}


def k_momentum(spec):
    ph = Phase(spec["base"], spec["k"])
    fields = [ph.read_base(y) for y in spec["Y"]]
    return {"value": ph.momentum(fields).to_str()}


def k_momentum_relation(spec):
    """κ with {P(Y1),P(Y2)} + (-1)^(ts+s+t) P([Y1,Y2]) + κ·d(Y2♯⌟(Y1♯⌟θ)) = 0."""
    ph = Phase(spec["base"], spec["k"])
    A = [ph.read_base(y) for y in spec["Y1"]]
    B = [ph.read_base(y) for y in spec["Y2"]]
    s, t = len(A), len(B)
    P1, P2 = ph.momentum(A), ph.momentum(B)
    LA, LB = ph.lift(A), ph.lift(B)
    XB = LB.scale(-ph.sign * zeta(t))
    field_ok = (d(P2) - hook(XB, ph.omega).scale(ph.sign)).is_zero()
    lhs = ph.bracket(P1, XB, P2)
    br = schouten_decomposable(A, B)
    if not br.is_zero():
        lhs = lhs + ph.momentum_of(br).scale((-1) ** (t * s + s + t))
    N = d(hook(LB, hook(LA, ph.theta)))
    k = ratio(-lhs, N)
    return {"kappa": _rat(k), "field_ok": field_ok, "d_term": N.to_str(), "bracket": ph.bracket(P1, XB, P2).to_str()}


def k_mixed_relation(spec):
    """κ with {π*α, P(Y)} = κ·π*(Y⌟dα)."""
    ph = Phase(spec["base"], spec["k"])
    Y = [ph.read_base(y) for y in spec["Y"]]
    alpha = ph.read_base(spec["alpha"])
    j = len(Y)
    P = ph.momentum(Y)
    XP = ph.lift(Y).scale(-ph.sign * zeta(j))
    a = horizontal(ph.chart, alpha)
    lhs = ph.bracket(a, XP, P)
    rhs = horizontal(ph.chart, hook(wedge_all(ph.base, Y), d(alpha)))
    return {"kappa": _rat(ratio(lhs, rhs)), "bracket": lhs.to_str()}


def k_position_relation(spec):
    ph = Phase(spec["base"], spec["k"])
    a = horizontal(ph.chart, ph.read_base(spec["alpha"]))
    b = horizontal(ph.chart, ph.read_base(spec["beta"]))
    Xb, _ = hamiltonian_field(ph.chart, ph.omega, b, ph.sign)
    return {"bracket": ph.bracket(a, Xb, b).to_str(), "vertical": all(any(i >= len(spec["base"]) for i in I) for I in Xb.comps)}


def k_g2_phi0(spec):
    sc = _scope(spec)
    phi = read(sc, spec["phi"])
    g, v, B = g2_metric(phi)
    out = {"components": len(phi.comps), "gram_diagonal": [str(B[i, i]) for i in range(7)],
           "offdiagonal_zero": all(B[i, j] == 0 for i in range(7) for j in range(7) if i != j)}
    if all(B[i, i] == B[0, 0] for i in range(7)) and out["offdiagonal_zero"]:
        gv = (g, v)
        psi = star(gv, phi)
        e = [O(sc.chart, "vec", 1, {(i,): 1}) for i in range(7)]
        out.update({"orientation": str(v), "metric": "identity" if g == sp.eye(7) else str(g.tolist()),
                    "psi": psi.to_str(), "dphi": d(phi).to_str(), "dpsi": d(psi).to_str(),
                    "e1_cross_e2": cross(g, phi, e[0], e[1]).to_str()})
    else:
        out["signature"] = [int(sp.sign(-B[i, i] / v)) for i in range(7)]
    return out


def k_g2_torus(spec):
    sc = _scope(spec)
    phi = read(sc, spec["phi"])
    g, v, _ = g2_metric(phi)
    gv = (g, v)
    psi = star(gv, phi)
    A, B = read(sc, spec["A"]), read(sc, spec["B"])
    ReZ = read(sc, "Re(z1*z2*z3)")
    out = {"orientation": str(v), "metric_identity": g == sp.eye(7),
           "a_real_matches": A.equals(read(sc, spec["A_real"])),
           "b_real_matches": B.equals(read(sc, spec["B_real"])),
           "ba_phi_kappa": _rat(ratio(hook(B, hook(A, phi)), d(ReZ).scale(sp.Rational(1, 4)))),
           "cross_kappa": _rat(ratio(flat(g, cross(g, phi, A, B)).scale(4), d(ReZ)))}
    f1 = {}
    for key, V in (("f1_10", A), ("f1_01", B)):
        for variant in ("printed", "corrected"):
            f = read(sc, spec[f"{key}_{variant}"])
            f1[f"{key}_{variant}"] = {
                "sign": sign_flag(d(f), hook(V, phi)),
                "pi14_zero": pi14(gv, phi, d(f)).is_zero(),
                "curl_ratio": _rat(ratio(curl(gv, psi, sharp(g, f)), V)),
            }
    out["f1"] = f1
    f2 = read(sc, spec["f2_printed"])
    out["f2_sign"] = sign_flag(d(f2), hook(wedge(A, B), phi).scale(zeta(2)))
    return out


def k_g2_curl_cross(spec):
    """For φ-preserving fields X, Y: α = K(X⌟φ), β = K(Y⌟φ); report π14(dα), curl α♯ / X and
    κ with curl(curl α♯ × curl β♯) = κ·[curl α♯, curl β♯]."""
    sc = _scope(spec)
    phi = read(sc, spec["phi"])
    g, v, _ = g2_metric(phi)
    gv = (g, v)
    psi = star(gv, phi)
    X, Y = read(sc, spec["X"]), read(sc, spec["Y"])
    alpha, beta = homotopy(hook(X, phi)), homotopy(hook(Y, phi))
    ca, cb = curl(gv, psi, sharp(g, alpha)), curl(gv, psi, sharp(g, beta))
    lhs = curl(gv, psi, cross(g, phi, ca, cb))
    return {"preserves": lie(X, phi).is_zero() and lie(Y, phi).is_zero(),
            "pi14_zero": pi14(gv, phi, d(alpha)).is_zero() and pi14(gv, phi, d(beta)).is_zero(),
            "curl_ratio": _rat(ratio(ca, X)), "kappa": _rat(ratio(lhs, vector_bracket(ca, cb)))}


def k_extended_cartan(spec):
    """Action sign σ with [V_i,V_j] = σ·V_[e_i,e_j], and the κ making
    (-1)^k d(V_p⌟τ) - κ·V_∂p⌟τ - Σ_i (-1)^i V_p(-i)⌟L_{V_i}τ - V_p⌟dτ vanish."""
    sc = _scope(spec)
    dim, c = _algebra(spec)
    gens = [read(sc, g) for g in spec["generators"]]
    chart = gens[0].chart
    signs = set()
    for i in range(dim):
        for j in range(i + 1, dim):
            rhs = O(chart, "vec", 1, {})
            for kk in range(dim):
                if c.get((i, j, kk), 0):
                    rhs = rhs + gens[kk].scale(c[(i, j, kk)])
            signs.add(sign_flag(vector_bracket(gens[i], gens[j]), rhs))
    p = _parse_wedge(spec["p"])
    k = len(p)
    tau = read(sc, spec["tau"])
    fields = [gens[i] for i in p]
    base = d(hook(wedge_all(chart, fields), tau)).scale((-1) ** k) - hook(wedge_all(chart, fields), d(tau))
    for i in range(k):
        rest = wedge_all(chart, fields[:i] + fields[i + 1:])
        base = base - hook(rest, lie(fields[i], tau)).scale((-1) ** (i + 1))
    vdp = O(chart, "vec", k - 1, {})
    for key, v in _ce_boundary(dim, c, p).items():
        vdp = vdp + wedge_all(chart, [gens[i] for i in key]).scale(v)
    kappa = ratio(base, hook(vdp, tau))
    return {"action_sign": signs.pop() if len(signs) == 1 else 0,
            "dp_kappa": None if kappa is None else _rat(kappa)}


KINDS = {
    "hook": k_hook, "lie": k_lie, "homotopy": k_homotopy, "ce_boundary": k_ce_boundary,
    "kernel_dims": k_kernel_dims, "hamiltonian_field": k_hamiltonian_field,
    "hamiltonian_flag": k_hamiltonian_flag, "plectic_example": k_plectic_example,
    "comomentum": k_comomentum, "hook_identity": k_hook_identity, "lift": k_lift, "momentum": k_momentum,
    "momentum_relation": k_momentum_relation, "mixed_relation": k_mixed_relation,
    "position_relation": k_position_relation, "g2_phi0": k_g2_phi0, "g2_torus": k_g2_torus,
    "g2_curl_cross": k_g2_curl_cross, "extended_cartan": k_extended_cartan,
}


def compute(spec) -> dict:
    return KINDS[spec["kind"]](spec)


# ---------------------------------------------------------------------------
# fixture inputs

XYZ = ["x", "y", "z"]
VOL3 = "d(x)^d(y)^d(z)"
C3 = ["x1", "x2", "x3", "y1", "y2", "y3"]
ZS = [["z1", "x1", "y1"], ["z2", "x2", "y2"], ["z3", "x3", "y3"]]
GEN_A = "i/2*(z1*@z1 - z3*@z3 - conj(z1)*conj(@z1) + conj(z3)*conj(@z3))"
GEN_B = "i/2*(z2*@z2 - z3*@z3 - conj(z2)*conj(@z2) + conj(z3)*conj(@z3))"
T6 = ["q1", "q2", "q3", "p1", "p2", "p3"]
VOL6 = "d(q1)^d(q2)^d(q3)^d(p1)^d(p2)^d(p3)"
DP = "d(p1)^d(p2)^d(p3)"
SO3 = {"dim": 3, "brackets": {"e1,e2": {"e3": 1}, "e2,e3": {"e1": 1}, "e3,e1": {"e2": 1}}}
X7 = [f"x{i}" for i in range(1, 8)]
PHI0_PRINTED = ("d(x1)^d(x2)^d(x3) + d(x1)^(d(x4)^d(x5) - d(x6)^d(x7)) + d(x2)^(d(x4)^d(x6) - d(x7)^d(x5))"
                " - d(x3)^(d(x4)^d(x7) - d(x5)^d(x6))")
PHI0 = ("d(x1)^d(x2)^d(x3) + d(x1)^(d(x4)^d(x5) - d(x6)^d(x7)) + d(x2)^(d(x4)^d(x6) - d(x7)^d(x5))"
        " + d(x3)^(d(x4)^d(x7) - d(x5)^d(x6))")
TORUS = ["t", "x1", "x2", "x3", "y1", "y2", "y3"]
TORUS_PHI = ("d(x1)^d(x2)^d(x3) - d(x1)^d(y2)^d(y3) - d(y1)^d(x2)^d(y3) - d(y1)^d(y2)^d(x3)"
             " - d(t)^d(x1)^d(y1) - d(t)^d(x2)^d(y2) - d(t)^d(x3)^d(y3)")

FIXTURE_SPECS: List[dict] = [
    {"id": "hook-dz-vol", "kind": "hook", "coords": XYZ, "X": "@z", "tau": VOL3},
    {"id": "hook-dydz-vol", "kind": "hook", "coords": XYZ, "X": "@y^@z", "tau": VOL3},
    {"id": "lie-dx-xdy", "kind": "lie", "coords": XYZ, "X": "@x", "tau": "x*d(y)"},
    {"id": "lie-dydz-vol", "kind": "lie", "coords": XYZ, "X": "@y^@z", "tau": VOL3},
    {"id": "homotopy-area", "kind": "homotopy", "coords": ["x", "y"], "tau": "d(x)^d(y)"},
    {"id": "hamiltonian-form-dz", "kind": "homotopy", "coords": XYZ, "X": "@z", "tau": VOL3},
    {"id": "ce-so3-e1e2", "kind": "ce_boundary", **SO3, "p": "e1^e2"},
    {"id": "kernel-so3", "kind": "kernel_dims", **SO3},
    {"id": "kernel-abelian3", "kind": "kernel_dims", "dim": 3},
    {"id": "field-r3-h", "kind": "hamiltonian_field", "coords": XYZ, "omega": VOL3, "alpha": "-x*d(y)",
     "sign": -1, "printed": "@z"},
    {"id": "field-r3-alpha", "kind": "hamiltonian_field", "coords": XYZ, "omega": VOL3, "alpha": "z*d(x)",
     "sign": -1, "printed": "@y"},
    {"id": "field-r4-none", "kind": "hamiltonian_field", "coords": ["x", "y", "z", "w"], "omega": VOL3,
     "alpha": "w*d(z)", "sign": -1},
    {"id": "r3-example", "kind": "plectic_example", "coords": XYZ, "omega": VOL3, "H": "-x*d(y)",
     "alpha": "z*d(x)", "sign": -1, "printed_x_h": "@z", "printed_x_alpha": "@y"},
    {"id": "translation-hamiltonian", "kind": "hamiltonian_flag", "coords": T6, "omega": VOL6,
     "field": "p1*@q1 + p2*@q2 + p3*@q3",
     "alpha": f"1/2*((p1*q2*d(q3) - p1*q3*d(q2)) - (p2*q1*d(q3) - p2*q3*d(q2)) + (p3*q1*d(q2) - p3*q2*d(q1)))^{DP}",
     "corrected": f"1/2*((p1*q2*d(q3) - p1*q3*d(q2)) - (p2*q1*d(q3) - p2*q3*d(q1)) + (p3*q1*d(q2) - p3*q2*d(q1)))^{DP}"},
    {"id": "translation-comomentum", "kind": "comomentum", "coords": T6, "omega": VOL6,
     "generators": ["@q1", "@q2", "@q3"], "components": [
         {"p": "e1", "printed": f"1/2*(q2*d(q3) - q3*d(q2))^{DP}"},
         {"p": "e2", "printed": f"1/2*(q1*d(q3) - q3*d(q1))^{DP}"},
         {"p": "e3", "printed": f"1/2*(q1*d(q2) - q2*d(q2))^{DP}", "corrected": f"1/2*(q1*d(q2) - q2*d(q1))^{DP}"},
         {"p": "e1^e2", "printed": f"q3*{DP}"},
         {"p": "e1^e3", "printed": f"q2*{DP}"},
         {"p": "e2^e3", "printed": f"q1*{DP}"},
         {"p": "e1^e2^e3", "printed": "1/3*(p1*d(p2)^d(p3) + p2*d(p3)^d(p1) + p3*d(p1)^d(p2))"}]},
    {"id": "complex-volume-comomentum", "kind": "comomentum", "coords": C3, "complex": ZS,
     "omega": "Re(d(z1)^d(z2)^d(z3))", "generators": [GEN_A, GEN_B], "components": [
         {"p": "e1", "printed": "1/2*Im(z1*z3*d(z2))"},
         {"p": "e2", "printed": "1/2*Im(z1*z3*d(z1))", "corrected": "-1/2*Im(z2*z3*d(z1))"},
         {"p": "e1^e2", "printed": "1/4*Re(z1*z2*z3)"}]},
    {"id": "complex-volume-b-hook", "kind": "hook_identity", "coords": C3, "complex": ZS,
     "X": GEN_B, "tau": "Re(d(z1)^d(z2)^d(z3))", "target": "1/2*Im(z1*z3*d(z1))",
     "corrected": "-1/2*Im(z2*z3*d(z1))"},
    {"id": "complex-volume-a-hook", "kind": "hook_identity", "coords": C3, "complex": ZS,
     "X": GEN_A, "tau": "Re(d(z1)^d(z2)^d(z3))", "target": "1/2*Im(z1*z3*d(z2))"},
    {"id": "kahler-a-hook", "kind": "hook_identity", "coords": C3, "complex": ZS,
     "X": GEN_A, "tau": "i/2*(d(z1)^d(conj(z1)) + d(z2)^d(conj(z2)) + d(z3)^d(conj(z3)))",
     "target": "-1/4*(z1*conj(z1) - z3*conj(z3))"},
    {"id": "complex-volume-ba-hook", "kind": "hook_identity", "coords": C3, "complex": ZS,
     "X": f"({GEN_A})^({GEN_B})", "tau": "Re(d(z1)^d(z2)^d(z3))", "target": "-1/4*Re(z1*z2*z3)"},
    {"id": "kahler-comomentum", "kind": "comomentum", "coords": C3, "complex": ZS,
     "omega": "i/2*(d(z1)^d(conj(z1)) + d(z2)^d(conj(z2)) + d(z3)^d(conj(z3)))",
     "generators": [GEN_A, GEN_B], "components": [
         {"p": "e1", "printed": "-1/4*(z1*conj(z1) - z3*conj(z3))"},
         {"p": "e2", "printed": "-1/4*(z2*conj(z2) - z3*conj(z3))"}]},
    {"id": "lift-dilation", "kind": "lift", "base": ["q"], "k": 1, "Y": "q*@q"},
    {"id": "lift-rotation-k2", "kind": "lift", "base": ["q1", "q2", "q3"], "k": 2, "Y": "q2*@q1 - q1*@q2 + q3**2*@q3"},
    {"id": "momentum-classical", "kind": "momentum", "base": ["q"], "k": 1, "Y": ["@q"]},
    {"id": "momentum-k2-vector", "kind": "momentum", "base": ["q1", "q2"], "k": 2, "Y": ["q2*@q1"]},
    {"id": "momentum-relation-11-constant", "kind": "momentum_relation", "base": ["q1", "q2", "q3"], "k": 2,
     "Y1": ["@q1"], "Y2": ["@q2"]},
    {"id": "momentum-relation-11", "kind": "momentum_relation", "base": ["q1", "q2", "q3"], "k": 2,
     "Y1": ["q2*@q1"], "Y2": ["q1**2*@q3"]},
    {"id": "momentum-relation-12", "kind": "momentum_relation", "base": ["q1", "q2", "q3"], "k": 3,
     "Y1": ["q2*@q1"], "Y2": ["@q2", "@q3"]},
    {"id": "momentum-relation-21", "kind": "momentum_relation", "base": ["q1", "q2", "q3"], "k": 3,
     "Y1": ["@q2", "@q3"], "Y2": ["q2*@q1"]},
    {"id": "momentum-relation-classical", "kind": "momentum_relation", "base": ["q1", "q2"], "k": 1,
     "Y1": ["q2*@q1"], "Y2": ["q1*@q2"]},
    {"id": "mixed-relation-j1", "kind": "mixed_relation", "base": ["q1", "q2"], "k": 2,
     "alpha": "q2**2*d(q1)", "Y": ["q1*@q2"]},
    {"id": "mixed-relation-j2", "kind": "mixed_relation", "base": ["q1", "q2", "q3"], "k": 3,
     "alpha": "q1*q3*d(q2)", "Y": ["@q1", "@q2"]},
    {"id": "mixed-relation-classical", "kind": "mixed_relation", "base": ["q"], "k": 1,
     "alpha": "q**2", "Y": ["q*@q"]},
    {"id": "position-relation", "kind": "position_relation", "base": ["q1", "q2"], "k": 2,
     "alpha": "q1*d(q2)", "beta": "q2**2*d(q1)"},
    {"id": "g2-phi0", "kind": "g2_phi0", "coords": X7, "phi": PHI0},
    {"id": "g2-curl-cross", "kind": "g2_curl_cross", "coords": X7, "phi": PHI0,
     "X": "@x1 - x5*@x2 + x4*@x3 - x3*@x4 + x2*@x5",
     "Y": "-x2*@x1 + (x1 + x3)*@x2 - x2*@x3 - x5*@x4 + (x4 - x6 + 2)*@x5 + x5*@x6"},
    {"id": "g2-phi0-printed", "kind": "g2_phi0", "coords": X7, "phi": PHI0_PRINTED},
    {"id": "g2-torus", "kind": "g2_torus", "coords": TORUS, "complex": ZS, "phi": TORUS_PHI,
     "A": GEN_A, "B": GEN_B,
     "A_real": "1/2*(-y1*@x1 + y3*@x3 + x1*@y1 - x3*@y3)",
     "B_real": "1/2*(-y2*@x2 + y3*@x3 + x2*@y2 - x3*@y3)",
     "f1_10_printed": "1/2*Im(z1*z3*d(z2)) - 1/4*(z1*conj(z1) - z3*conj(z3))*d(t)",
     "f1_01_printed": "1/2*Im(z1*z2*d(z3)) - 1/4*(z1*conj(z1) - z2*conj(z2))*d(t)",
     "f1_10_corrected": "1/2*Im(z1*z3*d(z2)) + 1/4*(z1*conj(z1) - z3*conj(z3))*d(t)",
     "f1_01_corrected": "-1/2*Im(z2*z3*d(z1)) + 1/4*(z2*conj(z2) - z3*conj(z3))*d(t)",
     "f2_printed": "1/4*Re(z1*z2*z3)"},
    {"id": "extended-cartan-so3", "kind": "extended_cartan", "coords": ["x", "y", "z", "w"], **SO3,
     "generators": ["-z*@y + y*@z", "z*@x - x*@z", "-y*@x + x*@y"], "p": "e1^e2",
     "tau": "w*d(x)^d(y)^d(z) + x*y*d(y)^d(z)^d(w) + z**2*d(x)^d(z)^d(w)"},
]


def freeze(path: Path = FIXTURE_PATH) -> dict:
    data = {"fixtures": []}
    for spec in FIXTURE_SPECS:
        data["fixtures"].append({"spec": spec, "oracle": compute(spec)})
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    return data


def load(path: Path = FIXTURE_PATH) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def check(ids: Optional[Sequence[str]] = None, path: Path = FIXTURE_PATH) -> List[Tuple[str, bool]]:
    """Recompute the listed fixtures (all if None) and compare with the frozen outputs."""
    frozen = load(path)["fixtures"]
    out = []
    for item in frozen:
        if ids is None or item["spec"]["id"] in ids:
            out.append((item["spec"]["id"], compute(item["spec"]) == item["oracle"]))
    return out


def random_ids(n: int, seed: Optional[int] = None, path: Path = FIXTURE_PATH) -> List[str]:
    ids = [item["spec"]["id"] for item in load(path)["fixtures"]]
    return random.Random(seed).sample(ids, min(n, len(ids)))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m msplect.oracle")
    sub = ap.add_subparsers(dest="cmd", required=True)
    f = sub.add_parser("freeze")
    f.add_argument("path", nargs="?", default=str(FIXTURE_PATH))
    c = sub.add_parser("check")
    c.add_argument("ids", nargs="*")
    args = ap.parse_args(argv)
    if args.cmd == "freeze":
        data = freeze(Path(args.path))
        print(f"froze {len(data['fixtures'])} fixtures into {args.path}")
        return 0
    results = check(args.ids or None)
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if all(ok for _, ok in results) else 1


if __name__ == "__main__":
    sys.exit(main())
