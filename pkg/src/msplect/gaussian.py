"""Complex shorthand expanded to real coordinates.

A complex form or multivector is a pair (re, im) of real objects on a
chart where z_k = x_k + i y_k.  Coefficients stay exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple, Union

from .exterior import Form, MultiVec, wedge
from .polynomial import Chart, Polynomial, as_scalar

Real = Union[Form, MultiVec]


def _complex(c) -> Tuple[Fraction, Fraction]:
    if isinstance(c, complex):
        return Fraction(c.real).limit_denominator(), Fraction(c.imag).limit_denominator()
    if isinstance(c, tuple):
        return as_scalar(c[0]), as_scalar(c[1])
    return as_scalar(c), Fraction(0)


class Complex:
    """re + i·im with re, im both Forms or both MultiVecs of the same degree."""

    def __init__(self, re: Real, im: Real):
        if type(re) is not type(im) or re.degree != im.degree or re.chart != im.chart:
            raise ValueError("real and imaginary parts must match in kind, degree and chart")
        self.re = re
        self.im = im

    @property
    def chart(self) -> Chart:
        return self.re.chart

    @property
    def degree(self) -> int:
        return self.re.degree

    def __add__(self, other: "Complex") -> "Complex":
        return Complex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Complex") -> "Complex":
        return Complex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Complex":
        return Complex(-self.re, -self.im)

    def scale(self, c) -> "Complex":
        a, b = _complex(c)
        return Complex(self.re * a - self.im * b, self.re * b + self.im * a)

    def __mul__(self, other) -> "Complex":
        if isinstance(other, Complex):
            return self.wedge(other)
        return self.scale(other)

    __rmul__ = scale

    def wedge(self, other: "Complex") -> "Complex":
        if other.degree == 0 and isinstance(self.re, MultiVec) and isinstance(other.re, Form):
            return _times_function(self, other)
        if self.degree == 0 and isinstance(other.re, MultiVec) and isinstance(self.re, Form):
            return _times_function(other, self)
        rr, ii = wedge(self.re, other.re), wedge(self.im, other.im)
        ri, ir = wedge(self.re, other.im), wedge(self.im, other.re)
        return Complex(rr - ii, ri + ir)

    __xor__ = wedge

    def conj(self) -> "Complex":
        return Complex(self.re, -self.im)

    def real(self) -> Real:
        return self.re

    def imag(self) -> Real:
        return self.im

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.re == other.re and self.im == other.im

    def __repr__(self):
        return f"Complex(re={self.re.to_str()}, im={self.im.to_str()})"


def _times_function(X: Complex, f: Complex) -> Complex:
    fr, fi = f.re[()], f.im[()]
    return Complex(X.re * fr - X.im * fi, X.re * fi + X.im * fr)


class ComplexCoordinates:
    """z_k = x_k + i y_k for the given (x, y) name pairs of a real chart."""

    def __init__(self, chart: Chart, pairs: Sequence[Tuple[str, str]]):
        self.chart = chart
        self.pairs = [(chart.index(x), chart.index(y)) for x, y in pairs]

    def _fn(self, p: Polynomial) -> Form:
        return Form.scalar(self.chart, p)

    def const(self, c) -> Complex:
        a, b = _complex(c)
        return Complex(Form.scalar(self.chart, a), Form.scalar(self.chart, b))

    def z(self, k: int) -> Complex:
        x, y = self.pairs[k - 1]
        return Complex(self._fn(self.chart.var(x)), self._fn(self.chart.var(y)))

    def zbar(self, k: int) -> Complex:
        return self.z(k).conj()

    def abs2(self, k: int) -> Form:
        return (self.z(k) * self.zbar(k)).re

    def dz(self, k: int) -> Complex:
        x, y = self.pairs[k - 1]
        return Complex(Form.basis(self.chart, (x,)), Form.basis(self.chart, (y,)))

    def dzbar(self, k: int) -> Complex:
        return self.dz(k).conj()

    def d_dz(self, k: int) -> Complex:
        """∂/∂z_k = (∂/∂x_k - i ∂/∂y_k)/2."""
        x, y = self.pairs[k - 1]
        half = Fraction(1, 2)
        return Complex(MultiVec.basis(self.chart, (x,), half), MultiVec.basis(self.chart, (y,), -half))

    def d_dzbar(self, k: int) -> Complex:
        return self.d_dz(k).conj()

    def real_field(self, Z: Complex) -> MultiVec:
        """A real vector field written as Σ a_k ∂/∂z_k + conj: the real part of the complex expression."""
        if Z.im:
            raise ValueError("the expression is not a real vector field")
        return Z.re
