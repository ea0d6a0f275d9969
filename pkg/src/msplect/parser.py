"""Expression and workspace parsing.

Grammar (lowest to highest precedence):

    expr    := wedge (('+' | '-') wedge)*
    wedge   := product ('^' product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('**' nat)?
    atom    := rational | ident | '@' ident | func '(' args ')' | '(' expr ')'

``d(...)`` is the exterior derivative, ``@x`` is ∂/∂x, ``i`` is the
imaginary unit and ``Re``, ``Im``, ``conj`` act on complex expressions
built from declared complex coordinates z = x + i*y.  ``hook(X, τ)``,
``bracket(X, Y)`` and ``lie(X, τ)`` give X⌟τ, the Schouten bracket and
the Lie derivative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exterior import DegreeError, Form, MultiVec, _contract, ext_d, hook, lie_derivative, schouten, wedge
from .gaussian import Complex
from .polynomial import Chart


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, source: str = ""):
        self.msg = msg
        self.line = line
        self.col = col
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {msg}" if line else msg)


TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<pow>\*\*)
  | (?P<op>[-+*/^(),@])
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    col: int


def tokenize(text: str, line: int = 1, source: str = "") -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1, source)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


Value = Complex


class Scope:
    """Coordinates, complex coordinates and named values visible to expressions."""

    def __init__(self, chart: Chart):
        self.chart = chart
        self.names: Dict[str, Value] = {}
        self.complex: Dict[str, Tuple[str, str]] = {}
        self.warnings: List[str] = []

    def real(self, obj: Union[Form, MultiVec]) -> Value:
        return Complex(obj, type(obj).zero(obj.chart, obj.degree))

    def scalar(self, c) -> Value:
        return self.real(Form.scalar(self.chart, c))

    def declare_complex(self, name: str, x: str, y: str):
        for c in (x, y):
            if c not in self.chart.coord_names:
                raise ValueError(f"{c!r} is not a coordinate")
        if name in self.chart.coord_names or name in self.names:
            raise ValueError(f"name {name!r} already defined")
        self.complex[name] = (x, y)

    def define(self, name: str, value: Value):
        if name in self.names or name in self.chart.coord_names or name in self.complex or name == "i":
            raise ValueError(f"duplicate name {name!r}")
        self.names[name] = value

    def lookup(self, name: str) -> Optional[Value]:
        ch = self.chart
        if name == "i":
            return Complex(Form.scalar(ch, 0), Form.scalar(ch, 1))
        if name in ch.coord_names:
            return self.scalar(ch.var(name))
        if name in self.complex:
            x, y = self.complex[name]
            return Complex(Form.scalar(ch, ch.var(x)), Form.scalar(ch, ch.var(y)))
        return self.names.get(name)

    def partial(self, name: str) -> Value:
        ch = self.chart
        if name in ch.coord_names:
            return self.real(MultiVec.basis(ch, (ch.index(name),)))
        if name in self.complex:
            x, y = self.complex[name]
            h = Fraction(1, 2)
            return Complex(MultiVec.basis(ch, (ch.index(x),), h), MultiVec.basis(ch, (ch.index(y),), -h))
        raise KeyError(name)


def _is_form(v: Value) -> bool:
    return isinstance(v.re, Form)


def _mul(a: Value, b: Value) -> Value:
    if _is_form(a) and _is_form(b):
        if a.degree and b.degree:
            raise DegreeError("'*' needs a function on one side; use '^' for the wedge product")
        return a.wedge(b)
    if _is_form(a) and a.degree == 0:
        return b.wedge(a)
    if _is_form(b) and b.degree == 0:
        return a.wedge(b)
    raise DegreeError("'*' needs a function on one side; use '^' for the wedge product")


def _wedge(a: Value, b: Value) -> Value:
    if _is_form(a) == _is_form(b):
        return a.wedge(b)
    if (_is_form(a) and a.degree == 0) or (_is_form(b) and b.degree == 0):
        return _mul(a, b)
    raise DegreeError("cannot wedge a form with a multivector field")


def _constant(v: Value) -> Optional[Tuple[Fraction, Fraction]]:
    if not _is_form(v) or v.degree != 0 or not v.re.is_constant() or not v.im.is_constant():
        return None
    return Fraction(v.re[()].constant_term()), Fraction(v.im[()].constant_term())


class ExprParser:
    def __init__(self, scope: Scope, text: str, line: int = 1, source: str = ""):
        self.scope = scope
        self.text = text
        self.line = line
        self.source = source
        self.toks = tokenize(text, line, source)
        self.i = 0

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, tok.col, self.source)

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def parse(self) -> Value:
        v = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return v

    def _guard(self, fn, tok: Token):
        try:
            return fn()
        except (DegreeError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            self.error(str(exc), tok)

    def expr(self) -> Value:
        v = self.wedge()
        while self.peek().text in ("+", "-"):
            tok = self.take()
            w = self.wedge()
            v = self._guard(lambda: v + w if tok.text == "+" else v - w, tok)
        return v

    def wedge(self) -> Value:
        v = self.product()
        while self.peek().text == "^":
            tok = self.take()
            w = self.product()
            res = self._guard(lambda: _wedge(v, w), tok)
            if not res.re and not res.im and (v.re or v.im) and (w.re or w.im):
                self.scope.warnings.append(f"line {self.line}, col {tok.col}: wedge product is identically zero")
            v = res
        return v

    def product(self) -> Value:
        v = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            w = self.unary()
            if tok.text == "*":
                v = self._guard(lambda: _mul(v, w), tok)
            else:
                c = _constant(w)
                if c is None or c == (0, 0):
                    self.error("division only by nonzero constants", tok)
                a, b = c
                n = a * a + b * b
                v = v.scale((a / n, -b / n))
        return v

    def unary(self) -> Value:
        t = self.peek()
        if t.text == "-":
            self.take()
            return -self.unary()
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Value:
        v = self.atom()
        if self.peek().kind == "pow":
            tok = self.take()
            n = self.take()
            if n.kind != "num" or "/" in n.text:
                self.error("exponent must be a natural number", n)
            if not _is_form(v) or v.degree != 0:
                self.error("only functions can be raised to a power", tok)
            out = self.scope.scalar(1)
            for _ in range(int(n.text)):
                out = out.wedge(v)
            v = out
        return v

    FUNCS = ("d", "Re", "Im", "conj", "hook", "bracket", "lie")

    def atom(self) -> Value:
        t = self.take()
        if t.kind == "num":
            return self.scope.scalar(Fraction(t.text))
        if t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.text == "@":
            n = self.take()
            if n.kind != "name":
                self.error("expected a coordinate after '@'", n)
            try:
                return self.scope.partial(n.text)
            except KeyError:
                self.error(f"unknown coordinate {n.text!r}", n)
        if t.kind == "name":
            if t.text in self.FUNCS and self.peek().text == "(":
                return self.call(t)
            v = self.scope.lookup(t.text)
            if v is None:
                self.error(f"unknown identifier {t.text!r}", t)
            return v
        self.error(f"unexpected {t.text or 'end of input'!r}", t)

    def call(self, t: Token) -> Value:
        self.expect("(")
        args = [self.expr()]
        while self.peek().text == ",":
            self.take()
            args.append(self.expr())
        self.expect(")")
        name = t.text
        want = 2 if name in ("hook", "bracket", "lie") else 1
        if len(args) != want:
            self.error(f"{name} takes {want} argument(s)", t)
        a = args[0]
        if name == "Re":
            return Complex(a.re, type(a.re).zero(a.chart, a.degree))
        if name == "Im":
            return Complex(a.im, type(a.im).zero(a.chart, a.degree))
        if name == "conj":
            return a.conj()
        if name == "d":
            if not _is_form(a):
                self.error("d applies to forms", t)
            return Complex(ext_d(a.re), ext_d(a.im))
        b = args[1]
        if a.im or b.im:
            self.error(f"{name} needs real arguments", t)
        if name == "hook":
            return self.scope.real(self._guard(lambda: hook(a.re, b.re), t))
        if name == "bracket":
            return self.scope.real(self._guard(lambda: schouten(a.re, b.re), t))
        return self.scope.real(self._guard(lambda: lie_derivative(a.re, b.re), t))


def parse_value(scope: Scope, text: str, line: int = 1, source: str = "") -> Value:
    return ExprParser(scope, text, line, source).parse()


def parse_real(scope: Scope, text: str, line: int = 1, source: str = "") -> Union[Form, MultiVec]:
    v = parse_value(scope, text, line, source)
    if v.im:
        raise ParseError("expression is not real; wrap it in Re(...) or Im(...)", line, 1, source)
    return v.re


def parse_expr(chart: Chart, text: str, names: Optional[Dict[str, Union[Form, MultiVec]]] = None,
               complex_coords: Optional[Dict[str, Tuple[str, str]]] = None):
    """Parse one real expression on ``chart``."""
    scope = Scope(chart)
    for n, (x, y) in (complex_coords or {}).items():
        scope.declare_complex(n, x, y)
    for n, v in (names or {}).items():
        scope.define(n, scope.real(v))
    return parse_real(scope, text)


def format_value(obj: Union[Form, MultiVec]) -> str:
    """Canonical text that parses back to the same object."""
    return obj.to_str()


# ---------------------------------------------------------------------------
# workspace files

SECTIONS = ("chart", "define", "lie_algebra", "action", "system", "comomentum", "tasks")


@dataclass
class Line:
    number: int
    text: str


@dataclass
class TaskSpec:
    name: str
    args: List[str]
    options: Dict[str, str]
    line: int


@dataclass
class Workspace:
    source: str
    chart: Optional[Chart] = None
    scope: Optional[Scope] = None
    definitions: List[Tuple[str, str]] = field(default_factory=list)
    complex: List[Tuple[str, str, str]] = field(default_factory=list)
    algebra: Dict[str, object] = field(default_factory=dict)
    action: List[Tuple[str, str]] = field(default_factory=list)
    system: Dict[str, str] = field(default_factory=dict)
    comomentum: List[Tuple[str, str]] = field(default_factory=list)
    comomentum_options: Dict[str, str] = field(default_factory=dict)
    tasks: List[TaskSpec] = field(default_factory=list)

    @property
    def warnings(self) -> List[str]:
        return self.scope.warnings if self.scope else []

    def value(self, name: str):
        v = self.scope.names.get(name)
        if v is None:
            raise KeyError(name)
        return v.re

    def to_text(self) -> str:
        """Canonical file text; parse_workspace_text(to_text()) reproduces the workspace."""
        out = ["[chart]", "coords = " + ", ".join(self.chart.coord_names)]
        for n, x, y in self.complex:
            out.append(f"complex {n} = {x} + i*{y}")
        if self.definitions:
            out += ["", "[define]"] + [f"{n} = {e}" for n, e in self.definitions]
        if self.algebra:
            out += ["", "[lie_algebra]"]
            out.append(f"dim = {self.algebra['dim']}")
            for (a, b), rhs in self.algebra.get("brackets", []):
                out.append(f"[{a}, {b}] = {rhs}")
        if self.action:
            out += ["", "[action]"] + [f"{n} = {e}" for n, e in self.action]
        if self.system:
            out += ["", "[system]"] + [f"{k} = {v}" for k, v in self.system.items()]
        if self.comomentum or self.comomentum_options:
            out += ["", "[comomentum]"] + [f"{k} = {v}" for k, v in self.comomentum_options.items()]
            out += [f"f({p}) = {e}" for p, e in self.comomentum]
        if self.tasks:
            out += ["", "[tasks]"]
            for t in self.tasks:
                parts = [t.name] + t.args + [f"{k}={v}" for k, v in t.options.items()]
                out.append(" ".join(parts))
        return "\n".join(out) + "\n"


_SECTION_RE = re.compile(r"^\[(\w+)\]$")
_ASSIGN_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9']*)\s*=\s*(.+)$")
_COMPLEX_RE = re.compile(r"^complex\s+([A-Za-z_]\w*)\s*=\s*([A-Za-z_]\w*)\s*\+\s*i\s*\*\s*([A-Za-z_]\w*)$")
_BRACKET_RE = re.compile(r"^\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=\s*(.+)$")
_COMOM_RE = re.compile(r"^f\(\s*([\w^ ]+?)\s*\)\s*=\s*(.+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_workspace(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace_text(fh.read(), source=str(path))


def parse_workspace_text(text: str, source: str = "<text>") -> Workspace:
    ws = Workspace(source)
    section = None
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m and not _BRACKET_RE.match(line):
            section = m.group(1)
            if section not in SECTIONS:
                raise ParseError(f"unknown section [{section}]", number, 1, source)
            if section in seen:
                raise ParseError(f"section [{section}] appears twice", number, 1, source)
            seen.add(section)
            continue
        if section is None:
            raise ParseError("content before the first section", number, 1, source)
        _section_line(ws, section, line, number, source)
    if ws.chart is None:
        raise ParseError("missing [chart] section", 0, 0, source)
    return ws


def _need_chart(ws: Workspace, number: int, source: str):
    if ws.chart is None:
        raise ParseError("[chart] must come first", number, 1, source)


def _eval_into_scope(ws: Workspace, name: str, expr: str, number: int, source: str, col: int):
    try:
        value = parse_value(ws.scope, expr, number, source)
    except ParseError as exc:
        raise ParseError(exc.msg, number, exc.col + col, source) from None
    try:
        ws.scope.define(name, value)
    except ValueError as exc:
        raise ParseError(str(exc), number, 1, source) from None
    return value


def _section_line(ws: Workspace, section: str, line: str, number: int, source: str):
    if section == "chart":
        m = _COMPLEX_RE.match(line)
        if m:
            _need_chart(ws, number, source)
            try:
                ws.scope.declare_complex(*m.groups())
            except ValueError as exc:
                raise ParseError(str(exc), number, 1, source) from None
            ws.complex.append(m.groups())
            return
        m = _ASSIGN_RE.match(line)
        if not m or m.group(1) != "coords":
            raise ParseError("expected 'coords = a, b, ...' or 'complex z = x + i*y'", number, 1, source)
        if ws.chart is not None:
            raise ParseError("coordinates declared twice", number, 1, source)
        names = [c.strip() for c in m.group(2).split(",")]
        if any(not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", c) for c in names) or "i" in names:
            raise ParseError("bad coordinate list", number, 1, source)
        try:
            ws.chart = Chart(names)
        except ValueError as exc:
            raise ParseError(str(exc), number, 1, source) from None
        ws.scope = Scope(ws.chart)
        return
    _need_chart(ws, number, source)
    if section == "lie_algebra":
        m = _BRACKET_RE.match(line)
        if m:
            ws.algebra.setdefault("brackets", []).append(((m.group(1), m.group(2)), m.group(3).strip()))
            return
        m = _ASSIGN_RE.match(line)
        if not m or m.group(1) not in ("dim", "name"):
            raise ParseError("expected 'dim = N', 'name = ...' or '[ea, eb] = ...'", number, 1, source)
        ws.algebra[m.group(1)] = int(m.group(2)) if m.group(1) == "dim" else m.group(2).strip()
        return
    if section == "tasks":
        parts = line.split()
        args = [p for p in parts[1:] if "=" not in p]
        opts = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
        ws.tasks.append(TaskSpec(parts[0], args, opts, number))
        return
    if section == "comomentum":
        m = _COMOM_RE.match(line)
        if m:
            col = line.index("=") + 2
            try:
                parse_value(ws.scope, m.group(2), number, source)
            except ParseError as exc:
                raise ParseError(exc.msg, number, exc.col + col, source) from None
            ws.comomentum.append((m.group(1).replace(" ", ""), m.group(2).strip()))
            return
        m = _ASSIGN_RE.match(line)
        if not m:
            raise ParseError("expected 'f(e1^e2) = expr' or 'weak = true|false'", number, 1, source)
        ws.comomentum_options[m.group(1)] = m.group(2).strip()
        return
    m = _ASSIGN_RE.match(line)
    if not m:
        raise ParseError("expected 'name = expression'", number, 1, source)
    name, expr = m.group(1), m.group(2).strip()
    col = line.index("=") + 2
    if section == "define":
        _eval_into_scope(ws, name, expr, number, source, col)
        ws.definitions.append((name, expr))
    elif section == "action":
        value = _eval_into_scope(ws, name, expr, number, source, col)
        if _is_form(value) or value.degree != 1 or value.im:
            raise ParseError(f"generator {name} must be a real vector field", number, col, source)
        ws.action.append((name, expr))
    elif section == "system":
        if name in ("convention", "hamiltonian_sign", "comomentum_sign", "slack"):
            ws.system[name] = expr
            return
        value = _eval_into_scope(ws, name, expr, number, source, col)
        if not _is_form(value) or value.im:
            raise ParseError(f"{name} must be a real form", number, col, source)
        ws.system[name] = expr
