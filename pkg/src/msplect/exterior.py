"""Graded exterior calculus on a coordinate chart.

Forms and multivector fields are stored as maps from strictly increasing
index tuples to polynomial coefficients, so ``x*dy^dz`` is ``{(1, 2): x}``
and ``@x^@z`` is ``{(0, 2): 1}``.  Everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .polynomial import Chart, Polynomial, as_scalar

Index = Tuple[int, ...]


class DegreeError(ValueError):
    """Raised when an operation's degree precondition fails."""


class KindError(TypeError):
    """Raised when forms and multivectors are mixed where they cannot be."""


@lru_cache(maxsize=None)
def sort_sign(idx: Index) -> Tuple[int, Index]:
    """Sign of the permutation sorting ``idx`` and the sorted tuple (0 on repeats)."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inversions = 0
    n = len(idx)
    for a in range(n):
        ia = idx[a]
        for b in range(a + 1, n):
            if ia > idx[b]:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(idx))


@lru_cache(maxsize=None)
def _contract_sign(inner: Index, outer: Index) -> Tuple[int, Index]:
    """Write dx^outer = s * dx^inner ^ dx^rest; return (s, rest) or (0, ())."""
    if not set(inner) <= set(outer):
        return 0, ()
    rest = tuple(i for i in outer if i not in inner)
    s, _ = sort_sign(inner + rest)
    return s, rest


class _Graded:
    """Shared storage for forms and multivector fields."""

    __slots__ = ("chart", "degree", "comps", "_hash")
    kind = "graded"

    def __init__(self, chart: Chart, degree: int, comps: Mapping[Sequence[int], Polynomial] | None = None):
        if degree < 0:
            raise DegreeError(f"negative degree {degree}")
        self.chart = chart
        self.degree = degree
        self._hash = None
        clean: Dict[Index, Polynomial] = {}
        if comps:
            n = chart.dim
            for idx, coeff in comps.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise DegreeError(f"index {idx} does not have length {degree}")
                if any(i < 0 or i >= n for i in idx):
                    raise IndexError(f"index {idx} out of range for {chart}")
                if not isinstance(coeff, Polynomial):
                    coeff = Polynomial.const(coeff, n)
                s, key = sort_sign(idx)
                if not s or coeff.is_zero():
                    continue
                total = clean.get(key)
                term = coeff if s > 0 else -coeff
                total = term if total is None else total + term
                if total.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = total
        self.comps = clean

    @classmethod
    def _raw(cls, chart: Chart, degree: int, comps: Dict[Index, Polynomial]):
        obj = object.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj.comps = comps
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls._raw(chart, degree, {})

    @classmethod
    def scalar(cls, chart: Chart, f) -> "_Graded":
        if not isinstance(f, Polynomial):
            f = Polynomial.const(f, chart.dim)
        return cls._raw(chart, 0, {(): f} if f else {})

    @classmethod
    def basis(cls, chart: Chart, idx: Sequence, coeff=1):
        idx = tuple(chart.index(i) if isinstance(i, str) else i for i in idx)
        return cls(chart, len(idx), {idx: coeff})

    # -- checks ---------------------------------------------------------
    def _check(self, other: "_Graded"):
        if type(other) is not type(self):
            raise KindError(f"cannot combine {self.kind} with {other.kind}")
        if other.chart != self.chart:
            raise ValueError("chart mismatch")

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.comps.values())

    def poly_degree(self) -> int:
        return max((c.degree() for c in self.comps.values()), default=-1)

    def __getitem__(self, idx) -> Polynomial:
        idx = tuple(self.chart.index(i) if isinstance(i, str) else i for i in idx)
        s, key = sort_sign(idx)
        if not s:
            return Polynomial.zero(self.chart.dim)
        c = self.comps.get(key, Polynomial.zero(self.chart.dim))
        return c if s > 0 else -c

    # -- linear structure -----------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        self._check(other)
        if other.degree != self.degree:
            if not other.comps:
                return self
            if not self.comps:
                return other
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.comps)
        for k, c in other.comps.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return type(self)._raw(self.chart, self.degree, out)

    def __radd__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return type(self)._raw(self.chart, self.degree, {k: -c for k, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        """Multiply by a scalar or a polynomial function."""
        if isinstance(f, _Graded):
            return NotImplemented
        if isinstance(f, Polynomial):
            out = {}
            for k, c in self.comps.items():
                v = c * f
                if v:
                    out[k] = v
            return type(self)._raw(self.chart, self.degree, out)
        f = as_scalar(f)
        if not f:
            return type(self).zero(self.chart, self.degree)
        return type(self)._raw(self.chart, self.degree, {k: c.scale(f) for k, c in self.comps.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / as_scalar(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        if type(other) is not type(self):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if not self.comps and not other.comps:
            return True
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.chart, self.degree, frozenset(self.comps.items())))
        return self._hash

    def map_coeffs(self, fn):
        out = {}
        for k, c in self.comps.items():
            v = fn(c)
            if v:
                out[k] = v
        return type(self)._raw(self.chart, self.degree, out)

    def evaluate(self, point: Sequence):
        """Freeze coefficients at a rational point (a constant-coefficient element)."""
        n = self.chart.dim
        return self.map_coeffs(lambda c: Polynomial.const(c.evaluate(point), n))

    # -- printing -------------------------------------------------------
    def _basis_str(self, idx: Index) -> str:
        raise NotImplementedError

    def to_str(self) -> str:
        if not self.comps:
            return "0"
        names = self.chart.coord_names
        parts = []
        for idx in sorted(self.comps):
            c = self.comps[idx]
            basis = self._basis_str(idx)
            cs = c.to_str(names)
            if not idx:
                parts.append(cs)
            elif cs == "1":
                parts.append(basis)
            elif cs == "-1":
                parts.append("-" + basis)
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{basis}")
            else:
                parts.append(f"({cs})*{basis}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}[{self.degree}]({self.to_str()})"


class Form(_Graded):
    """A differential form with polynomial coefficients."""

    __slots__ = ()
    kind = "form"

    def _basis_str(self, idx):
        return "^".join(f"d({self.chart.coord_names[i]})" for i in idx)

    def __xor__(self, other):
        return wedge(self, other)


class MultiVec(_Graded):
    """A multivector field with polynomial coefficients."""

    __slots__ = ()
    kind = "multivector"

    def _basis_str(self, idx):
        return "^".join(f"@{self.chart.coord_names[i]}" for i in idx)

    def __xor__(self, other):
        return wedge(self, other)


# ---------------------------------------------------------------------------
# constructors

def dx(chart: Chart, name) -> Form:
    return Form.basis(chart, (name,))


def partial(chart: Chart, name) -> MultiVec:
    return MultiVec.basis(chart, (name,))


def function(chart: Chart, f) -> Form:
    return Form.scalar(chart, f)


def volume(chart: Chart) -> Form:
    return Form.basis(chart, tuple(range(chart.dim)))


def vector_field(chart: Chart, coeffs: Sequence) -> MultiVec:
    return MultiVec(chart, 1, {(i,): c for i, c in enumerate(coeffs)})


# ---------------------------------------------------------------------------
# products

def wedge(a: _Graded, b: _Graded) -> _Graded:
    """Exterior product of two forms or of two multivector fields."""
    if type(a) is not type(b):
        raise KindError(f"cannot wedge {a.kind} with {b.kind}")
    a._check(b)
    deg = a.degree + b.degree
    cls = type(a)
    if deg > a.chart.dim or not a.comps or not b.comps:
        return cls.zero(a.chart, min(deg, a.chart.dim + 1) if deg > a.chart.dim else deg)
    out: Dict[Index, Polynomial] = {}
    for i, f in a.comps.items():
        si = set(i)
        for j, g in b.comps.items():
            if si.intersection(j):
                continue
            s, key = sort_sign(i + j)
            term = f * g
            if s < 0:
                term = -term
            prev = out.get(key)
            v = term if prev is None else prev + term
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return cls._raw(a.chart, deg, out)


def wedge_all(items: Iterable[_Graded]) -> _Graded:
    items = list(items)
    out = items[0]
    for x in items[1:]:
        out = wedge(out, x)
    return out


def _contract(X: MultiVec, tau: Form) -> Form:
    """X ⌟ tau without the degree precondition (too-large X gives zero)."""
    if not isinstance(X, MultiVec) or not isinstance(tau, Form):
        raise KindError("contraction takes a multivector field and a form")
    if X.chart != tau.chart:
        raise ValueError("chart mismatch")
    k, m = X.degree, tau.degree
    if k > m:
        return Form.zero(tau.chart, 0)
    if k == 0:
        f = X.comps.get(())
        return tau * f if f is not None else Form.zero(tau.chart, m)
    out: Dict[Index, Polynomial] = {}
    for i, f in X.comps.items():
        for j, g in tau.comps.items():
            s, rest = _contract_sign(i, j)
            if not s:
                continue
            term = f * g
            if s < 0:
                term = -term
            prev = out.get(rest)
            v = term if prev is None else prev + term
            if v.is_zero():
                out.pop(rest, None)
            else:
                out[rest] = v
    return Form._raw(tau.chart, m - k, out)


def hook(X: MultiVec, tau: Form) -> Form:
    """Contraction X ⌟ tau; for X = X1^...^Xk this is Xk⌟...⌟X1⌟tau."""
    if isinstance(X, MultiVec) and isinstance(tau, Form) and X.degree > tau.degree:
        raise DegreeError(f"cannot contract a {X.degree}-vector into a {tau.degree}-form")
    return _contract(X, tau)


def hook_chain(fields: Sequence[MultiVec], tau: Form) -> Form:
    """fields[-1] ⌟ ... ⌟ fields[0] ⌟ tau (zero on degree overflow)."""
    out = tau
    for X in fields:
        out = _contract(X, out)
    return out


def ext_d(tau: Form) -> Form:
    """Exterior derivative.  Degree-dim forms map to the zero form."""
    if not isinstance(tau, Form):
        raise KindError("exterior derivative takes a form")
    chart = tau.chart
    n = chart.dim
    m = tau.degree
    if m >= n:
        return Form.zero(chart, m + 1 if m + 1 <= n else m)
    out: Dict[Index, Polynomial] = {}
    for idx, f in tau.comps.items():
        for j in range(n):
            if j in idx:
                continue
            df = f.diff(j)
            if df.is_zero():
                continue
            s, key = sort_sign((j,) + idx)
            term = df if s > 0 else -df
            prev = out.get(key)
            v = term if prev is None else prev + term
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return Form._raw(chart, m + 1, out)


def lie_derivative(X: MultiVec, tau: Form) -> Form:
    """L_X tau = d(X⌟tau) - (-1)^k X⌟d(tau)."""
    k = X.degree
    first = ext_d(_contract(X, tau))
    second = _contract(X, ext_d(tau))
    out = first - second if k % 2 == 0 else first + second
    return out


def form_degree_of(X_degree: int, tau_degree: int) -> int:
    return tau_degree - X_degree + 1


# ---------------------------------------------------------------------------
# Schouten bracket

def _add_term(out: Dict[Index, Polynomial], idx: Index, coeff: Polynomial):
    if coeff.is_zero():
        return
    s, key = sort_sign(idx)
    if not s:
        return
    term = coeff if s > 0 else -coeff
    prev = out.get(key)
    v = term if prev is None else prev + term
    if v.is_zero():
        out.pop(key, None)
    else:
        out[key] = v


def interior_df(X: MultiVec, f: Polynomial) -> MultiVec:
    """Insert df into the first slot of X: sum_a (-1)^(a-1) df(X_a) X_1^..X_a-hat..^X_k."""
    out: Dict[Index, Polynomial] = {}
    for idx, c in X.comps.items():
        for a, i in enumerate(idx):
            g = f.diff(i)
            if g.is_zero():
                continue
            coeff = c * g
            if a % 2:
                coeff = -coeff
            _add_term(out, idx[:a] + idx[a + 1:], coeff)
    return MultiVec._raw(X.chart, max(X.degree - 1, 0), out)


def schouten(X: MultiVec, Y: MultiVec) -> MultiVec:
    """Schouten-Nijenhuis bracket of a k-vector and an l-vector (degree k+l-1).

    Computed from the decomposable formula
    [X,Y] = sum_{i,j} (-1)^(i+j) [X_i,Y_j] ^ X_1..X_i-hat..X_k ^ Y_1..Y_j-hat..Y_l
    applied to each coefficient term f d_I, g d_J written as (f d_i1)^d_i2^...
    """
    if not isinstance(X, MultiVec) or not isinstance(Y, MultiVec):
        raise KindError("the Schouten bracket takes two multivector fields")
    X._check(Y)
    k, l = X.degree, Y.degree
    chart = X.chart
    if k == 0 and l == 0:
        return MultiVec.zero(chart, 0)
    if l == 0:
        f = Y.comps.get((), Polynomial.zero(chart.dim))
        out = interior_df(X, f)
        return out if (k - 1) % 2 == 0 else -out
    if k == 0:
        f = X.comps.get((), Polynomial.zero(chart.dim))
        return -interior_df(Y, f)
    deg = k + l - 1
    if deg > chart.dim:
        return MultiVec.zero(chart, deg)
    out: Dict[Index, Polynomial] = {}
    for I, f in X.comps.items():
        i1, Irest = I[0], I[1:]
        for J, g in Y.comps.items():
            j1, Jrest = J[0], J[1:]
            # (a, b) = (1, 1): [f d_i1, g d_j1] = f d_i1(g) d_j1 - g d_j1(f) d_i1
            _add_term(out, (j1,) + Irest + Jrest, f * g.diff(i1))
            _add_term(out, (i1,) + Irest + Jrest, -(g * f.diff(j1)))
            # (1, b>1): [f d_i1, d_jb] = -d_jb(f) d_i1, sign (-1)^(1+b)
            for b in range(1, l):
                jb = J[b]
                coeff = -(f.diff(jb) * g)
                if b % 2 == 1:  # 1-based b' = b+1, (-1)^(1+b') = (-1)^b
                    coeff = -coeff
                _add_term(out, (i1,) + Irest + (j1,) + J[1:b] + J[b + 1:], coeff)
            # (a>1, 1): [d_ia, g d_j1] = d_ia(g) d_j1, sign (-1)^(a'+1)
            for a in range(1, k):
                ia = I[a]
                coeff = g.diff(ia) * f
                if a % 2 == 1:
                    coeff = -coeff
                _add_term(out, (j1,) + (i1,) + I[1:a] + I[a + 1:] + Jrest, coeff)
    return MultiVec._raw(chart, deg, out)


# ---------------------------------------------------------------------------
# homotopy operator and exactness

def poincare_homotopy(tau: Form, base: Optional[Sequence] = None) -> Form:
    """Radial homotopy operator K with d K + K d = id on forms of degree >= 1.

    K(tau)(x) = sum_I int_0^1 t^(m-1) tau_I(b + t(x-b)) dt  (x-b) ⌟ dx^I.
    """
    if not isinstance(tau, Form):
        raise KindError("the homotopy operator takes a form")
    m = tau.degree
    if m == 0:
        raise DegreeError("the homotopy operator needs a form of degree >= 1")
    chart = tau.chart
    n = chart.dim
    base = [as_scalar(b) for b in (base or [0] * n)]
    if len(base) != n:
        raise ValueError("base point has the wrong dimension")
    neg_base = [-b for b in base]
    u = [Polynomial.var(i, n) for i in range(n)]
    out: Dict[Index, Polynomial] = {}
    for idx, f in tau.comps.items():
        g = f.shift(base)  # coefficient in u = x - b
        g = g.map_exponents(lambda e, c: Fraction(c) / (m + sum(e)))
        for a, i in enumerate(idx):
            coeff = g * u[i]
            if a % 2:
                coeff = -coeff
            _add_term(out, idx[:a] + idx[a + 1:], coeff)
    result = Form._raw(chart, m - 1, out)
    if any(base):
        result = result.map_coeffs(lambda c: c.shift(neg_base))
    return result


def is_closed(tau: Form) -> bool:
    return ext_d(tau).is_zero()


def is_exact(tau: Form, base: Optional[Sequence] = None) -> Tuple[bool, Optional[Form]]:
    """Decide exactness on a star-shaped chart; returns (exact, primitive)."""
    if tau.degree == 0:
        return (tau.is_zero(), None)
    if not is_closed(tau):
        return (False, None)
    return (True, poincare_homotopy(tau, base))


def closed_as_zero_form_constant(tau: Form) -> bool:
    """Degree-0 closedness: the function is constant."""
    return tau.degree == 0 and tau.is_constant()
