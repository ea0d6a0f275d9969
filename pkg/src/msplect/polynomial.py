"""Coordinate charts and exact multivariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def as_scalar(value) -> Scalar:
    """Coerce ints, Fractions and rational strings to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return as_scalar(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Chart:
    """An ordered list of coordinate names on a star-shaped patch of R^n."""

    coord_names: Tuple[str, ...]

    def __init__(self, coord_names: Iterable[str]):
        names = tuple(coord_names)
        if not names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"bad coordinate name {name!r}")
        object.__setattr__(self, "coord_names", names)

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    def index(self, name: str) -> int:
        try:
            return self.coord_names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial.var(i, self.dim)

    def __iter__(self) -> Iterator[str]:
        return iter(self.coord_names)

    def __repr__(self) -> str:
        return f"Chart({', '.join(self.coord_names)})"


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient.

    Instances are treated as immutable. Coefficients are ``int`` whenever the
    value is integral, ``Fraction`` otherwise.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.nvars = nvars
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not match {nvars} variables")
                if c:
                    clean[tuple(exp)] = as_scalar(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Scalar]) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars: int) -> "Polynomial":
        c = as_scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Exponent, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {tuple(exp): c})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return self._terms

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self):
        # graded reverse-lex-ish stable order: by total degree then exponents descending
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different variable counts")
            return other
        return Polynomial.const(other, self.nvars)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        if not c:
            return Polynomial.zero(self.nvars)
        if c == 1:
            return self
        return Polynomial._raw(self.nvars, {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different variable counts")
        if not self._terms or not other._terms:
            return Polynomial.zero(self.nvars)
        out: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, {e: _norm(c) for e, c in out.items()})

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero constant")
            other = other.constant_term()
        return self.scale(Fraction(1) / as_scalar(other))

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Scalar:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return _norm(total)

    def shift(self, base: Sequence) -> "Polynomial":
        """Return p(x + base)."""
        if not any(base):
            return self
        result = Polynomial.zero(self.nvars)
        shifted_vars = [Polynomial.var(i, self.nvars) + as_scalar(b) for i, b in enumerate(base)]
        for e, c in self._terms.items():
            term = Polynomial.const(c, self.nvars)
            for i, k in enumerate(e):
                if k:
                    term = term * shifted_vars[i] ** k
            result = result + term
        return result

    def map_exponents(self, fn) -> "Polynomial":
        """Apply ``fn(exponent, coeff) -> coeff`` termwise (dropping zeros)."""
        out = {}
        for e, c in self._terms.items():
            v = fn(e, c)
            if v:
                out[e] = _norm(v)
        return Polynomial._raw(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-express in a larger variable set; variable i goes to ``positions[i]``."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] += k
            out[tuple(ne)] = c
        return Polynomial._raw(nvars, out)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self._terms == Polynomial.const(other, self.nvars)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- printing -------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}**{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()})"
