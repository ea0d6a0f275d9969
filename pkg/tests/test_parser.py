from fractions import Fraction

import pytest

from msplect.cli import EXAMPLES, bundled
from msplect.exterior import Form, MultiVec
from msplect.parser import ParseError, format_value, parse_expr, parse_workspace, parse_workspace_text
from msplect.polynomial import Chart

XYZ = Chart(["x", "y", "z"])

BASIC = """[chart]
coords = x, y, z

[system]
omega = d(x)^d(y)^d(z)
H = -x*d(y)
"""


def test_basic_expressions():
    ws = parse_workspace_text(BASIC)
    assert ws.value("omega") == Form.basis(XYZ, (0, 1, 2))
    assert ws.value("H") == -Form.basis(XYZ, (1,), XYZ.var(0))
    assert ws.warnings == []


def test_grammar_precedence():
    # '*' binds tighter than '^', '^' is left-associative, '**' only for scalars
    assert parse_expr(XYZ, "2*d(x)^y*d(z)") == parse_expr(XYZ, "(2*d(x))^(y*d(z))")
    assert parse_expr(XYZ, "d(x)^d(y)^d(z)") == parse_expr(XYZ, "(d(x)^d(y))^d(z)")
    assert parse_expr(XYZ, "(x + y)**2") == parse_expr(XYZ, "x*x + 2*x*y + y*y")
    assert parse_expr(XYZ, "1/2*@x^@y") == MultiVec.basis(XYZ, (0, 1)) * Fraction(1, 2)
    assert parse_expr(XYZ, "-(x - y)") == parse_expr(XYZ, "y - x")


def test_complex_shorthand():
    ch = Chart(["x1", "y1"])
    z = {"z": ("x1", "y1")}
    assert parse_expr(ch, "Re(z*z)", complex_coords=z) == parse_expr(ch, "x1**2 - y1**2")
    assert parse_expr(ch, "Im(z*z)", complex_coords=z) == parse_expr(ch, "2*x1*y1")
    assert parse_expr(ch, "z*conj(z)", complex_coords=z) == parse_expr(ch, "x1**2 + y1**2")


def test_zero_wedge_warns():
    ws = parse_workspace_text(BASIC.replace("omega = d(x)^d(y)^d(z)", "omega = d(x)^d(x)\nW = d(x)^d(y)^d(z)")
                              .replace("H = -x*d(y)\n", ""))
    assert ws.value("omega").is_zero()
    assert any("identically zero" in w for w in ws.warnings)


@pytest.mark.parametrize("text,line,col,msg", [
    ("[chart]\ncoords = x, y\n[define]\na = x +* y\n", 4, 8, "unexpected"),
    ("[chart]\ncoords = x, y\n[define]\na = x\na = y\n", 5, 1, "duplicate name"),
    ("[chart]\ncoords = x, y\n[define]\na = q*x\n", 4, 5, "unknown identifier"),
    ("[chart]\ncoords = x, y\n[define]\na = d(x) + x\n", 4, 10, "cannot add degrees"),
    ("[chart]\ncoords = x, x\n", 2, 1, "duplicate coordinate"),
    ("[foo]\n", 1, 1, "unknown section"),
    ("[chart]\ncoords = x\n[chart]\n", 3, 1, "twice"),
    ("coords = x\n", 1, 1, "before the first section"),
    ("[define]\na = 1\n", 2, 1, "[chart] must come first"),
])
def test_errors_have_line_and_column(text, line, col, msg):
    with pytest.raises(ParseError) as info:
        parse_workspace_text(text, source="t.msw")
    err = info.value
    assert (err.line, err.col) == (line, col)
    assert msg in str(err)
    assert str(err).startswith(f"t.msw:{line}:{col}:")


def test_format_value_roundtrip():
    for text in ("-x*d(y)", "1/2*(x*d(y) - y*d(x))", "x**2*@y^@z - 3*@x^@y", "d(x)^d(y)^d(z)", "0"):
        v = parse_expr(XYZ, text)
        assert parse_expr(XYZ, format_value(v)) == v


@pytest.mark.parametrize("name", EXAMPLES)
def test_canonical_text_roundtrip(name):
    ws = parse_workspace(str(bundled(name)))
    text = ws.to_text()
    again = parse_workspace_text(text)
    assert again.to_text() == text
    assert [n for n, _ in again.definitions] == [n for n, _ in ws.definitions]
    for key in ws.system:
        if key in ("omega", "H"):
            assert again.value(key) == ws.value(key)
    assert [(t.name, t.args, t.options) for t in again.tasks] == [(t.name, t.args, t.options) for t in ws.tasks]
