"""Running the tasks of a parsed workspace file.

Every task produces a ``TaskResult`` holding named residuals (exact forms
or multivectors, printed canonically) and informational values.  A task
passes when all of its residuals are zero and no check inside it failed.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .comomentum import (
    ComomentumMap,
    build_exact_comomentum,
    closure_defects,
    construct_weak_comomentum,
    verify_comomentum,
    verify_weak_comomentum,
)
from .exterior import Form, ext_d
from .g2 import G2Data, g2_torus_example, metric_identity_defects, pi7, pi14
from .identities import CORE_IDENTITIES, check_core_identities
from .lie import ActionData, LieAlgebraData, WedgePower
from .multisymplectic import (
    DEFINITION,
    Convention,
    NotHamiltonian,
    PlecticSystem,
    classify_symmetry,
    hamiltonian_field,
    noether_correspondence,
)
from .parser import ParseError, Workspace, parse_value
from .phase_space import build_phase_space, random_kernel_element, verify_phase_brackets
from .polynomial import Chart
from .random_gen import rand_form

CONVENTIONS = {"strict": DEFINITION, "paper": Convention(1, 1)}


class TaskError(ValueError):
    """A task could not run: bad arguments, missing sections or inputs outside its domain."""


@dataclass
class Residual:
    label: str
    value: object

    @property
    def zero(self) -> bool:
        return self.value.is_zero() if hasattr(self.value, "is_zero") else not self.value

    def text(self) -> str:
        return self.value.to_str() if hasattr(self.value, "to_str") else str(self.value)


@dataclass
class TaskResult:
    name: str
    line: int
    residuals: List[Residual] = field(default_factory=list)
    info: List[Tuple[str, str]] = field(default_factory=list)
    checks: List[Tuple[str, bool]] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if all(r.zero for r in self.residuals) and all(ok for _, ok in self.checks):
            return "pass"
        return "fail"

    def first_failure(self) -> Optional[str]:
        for r in self.residuals:
            if not r.zero:
                return f"{r.label} = {r.text()}"
        for label, ok in self.checks:
            if not ok:
                return label
        return None


@dataclass
class Report:
    source: str
    seed: int
    convention: Convention
    convention_name: str
    convention_source: str
    tasks: List[TaskResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.status == "pass" for t in self.tasks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


# ---------------------------------------------------------------------------
# workspace pieces

def resolve_convention(ws: Workspace, override: Optional[str] = None) -> Tuple[Convention, str, str]:
    """(convention, its name, where it came from): command line, file or default."""
    if override is not None:
        if override not in CONVENTIONS:
            raise TaskError(f"unknown convention {override!r}")
        return CONVENTIONS[override], override, "command line"
    sysd = ws.system
    if "convention" in sysd:
        name = sysd["convention"]
        if name not in CONVENTIONS:
            raise TaskError(f"unknown convention {name!r} in [system]")
        return CONVENTIONS[name], name, "workspace file"
    if "hamiltonian_sign" in sysd or "comomentum_sign" in sysd:
        s = int(sysd.get("hamiltonian_sign", -1))
        c = int(sysd.get("comomentum_sign", -1))
        conv = Convention(s, c)
        name = next((k for k, v in CONVENTIONS.items() if v == conv), "custom")
        return conv, name, "workspace file"
    return DEFINITION, "strict", "default"


_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z_]\w*)\s*")


def _linear_combination(text: str, names: List[str]) -> Dict[int, Fraction]:
    """'e3', '-e1 + 1/2*e2' -> {index: coefficient}."""
    out: Dict[int, Fraction] = {}
    if text.strip() == "0":
        return out
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise TaskError(f"cannot read bracket value {text!r}")
        sign, coeff, name = m.groups()
        if pos > 0 and not sign:
            raise TaskError(f"cannot read bracket value {text!r}")
        if name not in names:
            raise TaskError(f"unknown basis element {name!r}")
        c = Fraction(coeff or 1) * (-1 if sign == "-" else 1)
        i = names.index(name)
        out[i] = out.get(i, Fraction(0)) + c
        pos = m.end()
    return out


class Context:
    """Lazily built objects shared by the tasks of one run."""

    def __init__(self, ws: Workspace, convention: Convention, seed: int):
        self.ws = ws
        self.convention = convention
        self.seed = seed
        self._system = None
        self._action = None

    @property
    def chart(self):
        return self.ws.chart

    def expr(self, text: str):
        """Evaluate an expression against the workspace names; real part required."""
        v = parse_value(self.ws.scope, text)
        if v.im:
            raise TaskError(f"expression {text!r} is not real")
        return v.re

    def basis_names(self) -> List[str]:
        if self.ws.action:
            return [n for n, _ in self.ws.action]
        dim = self.ws.algebra.get("dim")
        if dim is None:
            raise TaskError("no [lie_algebra] or [action] section")
        return [f"e{i + 1}" for i in range(dim)]

    def algebra(self) -> LieAlgebraData:
        names = self.basis_names()
        dim = self.ws.algebra.get("dim", len(names))
        if dim != len(names):
            raise TaskError(f"[lie_algebra] has dim = {dim} but [action] lists {len(names)} generators")
        br = {}
        for (a, b), rhs in self.ws.algebra.get("brackets", []):
            if a not in names or b not in names:
                raise TaskError(f"unknown basis element in [{a}, {b}]")
            i, j = names.index(a), names.index(b)
            if i == j:
                raise TaskError(f"[{a}, {a}] must vanish")
            vals = _linear_combination(rhs, names)
            if i > j:
                i, j = j, i
                vals = {k: -v for k, v in vals.items()}
            br[(i, j)] = vals
        return LieAlgebraData.from_brackets(dim, br, names=names)

    def action(self) -> ActionData:
        if self._action is None:
            if not self.ws.action:
                raise TaskError("no [action] section")
            gens = [self.ws.value(n) for n, _ in self.ws.action]
            self._action = ActionData(self.algebra(), self.chart, gens)
        return self._action

    def system(self) -> PlecticSystem:
        if self._system is None:
            if "omega" not in self.ws.system:
                raise TaskError("[system] needs omega")
            omega = self.ws.value("omega")
            H = self.ws.value("H") if "H" in self.ws.system else None
            slack = int(self.ws.system.get("slack", 2))
            self._system = PlecticSystem(self.chart, omega, H, self.convention, slack=slack)
        return self._system

    def element(self, text: str) -> WedgePower:
        names = self.basis_names()
        idx = []
        for part in text.split("^"):
            if part not in names:
                raise TaskError(f"unknown basis element {part!r}")
            idx.append(names.index(part))
        if len(set(idx)) != len(idx):
            raise TaskError(f"repeated factor in {text!r}")
        return WedgePower.basis(*idx)

    def comomentum(self) -> ComomentumMap:
        if not self.ws.comomentum:
            raise TaskError("no [comomentum] section")
        weak = self.ws.comomentum_options.get("weak", "false").lower() == "true"
        comps: Dict[int, List[Tuple[WedgePower, Form]]] = {}
        for p_text, expr in self.ws.comomentum:
            p = self.element(p_text)
            comps.setdefault(p.degree, []).append((p, self.expr(expr)))
        return ComomentumMap(self.action(), self.system().n, comps, weak=weak, name="workspace")


def _name(g: LieAlgebraData, p: WedgePower) -> str:
    return p.to_str(g.names)


# ---------------------------------------------------------------------------
# tasks

def _task_verify_identities(ctx: Context, t, res: TaskResult):
    cases = int(t.options.get("cases", 100))
    degree = int(t.options.get("degree", 2))
    dim = int(t.options.get("dim", ctx.chart.dim))
    results = check_core_identities(dim, degree, cases, ctx.seed)
    for name in CORE_IDENTITIES:
        failures, first = results[name]
        res.info.append((name, f"{cases - failures}/{cases} zero"))
        res.residuals.append(Residual(name, first if first is not None else Form.zero(ctx.chart, 0)))


def _task_hamiltonian_field(ctx: Context, t, res: TaskResult):
    if len(t.args) != 1:
        raise TaskError("usage: hamiltonian-field <form> [as=<name>] [expect=<expr>]")
    sys = ctx.system()
    alpha = ctx.expr(t.args[0])
    try:
        X = hamiltonian_field(sys, alpha)
    except NotHamiltonian as exc:
        res.checks.append((f"{t.args[0]} is Hamiltonian: {exc}", False))
        return
    res.info.append(("field", X.to_str()))
    if "expect" in t.options:
        res.residuals.append(Residual("field - expected", X - ctx.expr(t.options["expect"])))
    if "as" in t.options:
        try:
            ctx.ws.scope.define(t.options["as"], ctx.ws.scope.real(X))
        except ValueError as exc:
            raise TaskError(str(exc)) from None


def _task_classify(ctx: Context, t, res: TaskResult):
    if len(t.args) != 1:
        raise TaskError("usage: classify <form or multivector> [expect=none|local|global|strict]")
    sys = ctx.system()
    if sys.hamiltonian is None:
        raise TaskError("[system] needs H for classification")
    obj = ctx.expr(t.args[0])
    if isinstance(obj, Form):
        rep = noether_correspondence(sys, obj)
        res.info += [("conserved", rep.conserved.level), ("symmetry", rep.symmetry.level),
                     ("field", rep.pair.x_alpha.to_str())]
        note = rep.conserved.note or rep.symmetry.note
        level = rep.conserved.level
        res.residuals.append(Residual("Noether residual", rep.residual))
        res.checks.append(("levels transfer across the correspondence", rep.transfer_ok))
    else:
        weak = t.options.get("weak", "false") == "true"
        r = classify_symmetry(sys, obj, weak=weak)
        res.info.append(("symmetry", r.level))
        note = r.note
        level = r.level
    if note:
        res.info.append(("note", note))
    if "expect" in t.options:
        res.checks.append((f"level {level} == {t.options['expect']}", level == t.options["expect"]))


def _task_comomentum_verify(ctx: Context, t, res: TaskResult):
    cmap = ctx.comomentum()
    sys = ctx.system()
    rep = verify_weak_comomentum(cmap, sys) if cmap.weak else verify_comomentum(cmap, sys)
    g = cmap.action.algebra
    res.info.append(("equation", rep.note))
    for e in rep.entries:
        res.residuals.append(Residual(f"f_{e.degree}({_name(g, e.element)})", e.residual))


def _built_map(ctx: Context, t) -> ComomentumMap:
    sys, action = ctx.system(), ctx.action()
    method = t.options.get("method", "homotopy")
    if method == "homotopy":
        return construct_weak_comomentum(sys, action)
    if method == "exact":
        if "theta" not in t.options:
            raise TaskError("method=exact needs theta=<form>")
        return build_exact_comomentum(sys, ctx.expr(t.options["theta"]), action)
    raise TaskError(f"unknown method {method!r}")


def _task_comomentum_build(ctx: Context, t, res: TaskResult):
    cmap = _built_map(ctx, t)
    sys = ctx.system()
    g = cmap.action.algebra
    for k in cmap.degrees():
        for p, f in cmap.components[k]:
            res.info.append((f"f_{k}({_name(g, p)})", f.to_str()))
    for e in verify_weak_comomentum(cmap, sys).entries:
        res.residuals.append(Residual(f"f_{e.degree}({_name(g, e.element)})", e.residual))


def _task_closure_defect(ctx: Context, t, res: TaskResult):
    """Closure defects of the [comomentum] map, or of a built one when method= is given."""
    sys = ctx.system()
    if ctx.ws.comomentum and "method" not in t.options:
        cmap = ctx.comomentum()
    else:
        cmap = _built_map(ctx, t)
    g = cmap.action.algebra
    for cd in closure_defects(cmap, sys):
        label = f"({_name(g, cd.p)}, {_name(g, cd.q)})"
        res.info.append((f"defect {label}", cd.form.to_str()))
        res.residuals.append(Residual(f"d defect {label}", ext_d(cd.form)))
        res.residuals.append(Residual(f"field {label}", cd.field_residual))


def _task_phase_space(ctx: Context, t, res: TaskResult):
    k = int(t.options.get("k", 1))
    cases = int(t.options.get("cases", 3))
    names = t.options["base"].split(",") if "base" in t.options else list(ctx.chart.coord_names)
    base = Chart(names)
    ps = build_phase_space(base, k, ctx.convention)
    rng = random.Random(f"{ctx.seed}:phase-space:{k}")
    res.info.append(("phase space", f"Λ^{k}T*N over ({', '.join(names)})"))
    for case in range(cases):
        momenta = [random_kernel_element(rng, base, l, max_deg=1, n_terms=2)
                   for l in range(1, min(k, base.dim) + 1)]
        positions = [rand_form(rng, base, j, max_deg=1, n_comps=2) for j in range(k)]
        rep = verify_phase_brackets(ps, momenta, positions)
        for i, e in enumerate(rep.entries):
            res.residuals.append(Residual(f"case {case + 1} {e.relation} {i + 1}", e.residual))


def _task_g2_example(ctx: Context, t, res: TaskResult):
    which = t.args[0] if t.args else "phi"
    if which == "torus":
        rep = g2_torus_example(ctx.convention)
        res.info += [("f_2(A^B)", rep.f2.to_str()), ("B⌟A⌟φ / d Re(z1 z2 z3)", str(rep.ba_ratio / 4)),
                     ("4(A×B)♭ / d Re(z1 z2 z3)", str(rep.cross_ratio))]
        res.checks.append(("coordinate display of A and B", rep.display_matches))
        res.checks.append(("B⌟A⌟φ = -1/4 d Re(z1 z2 z3)", rep.ba_ratio == -1))
        res.checks.append(("4(A×B)♭ = -d Re(z1 z2 z3)", rep.cross_ratio == -1))
        for key, r in rep.curl_ratios.items():
            res.checks.append((f"curl f_1{key}♯ = {3 * ctx.convention.comomentum_sign}·V", r == 3 * ctx.convention.comomentum_sign))
            res.checks.append((f"π14 d f_1{key} = 0", rep.pi14_zero[key]))
        for e in rep.residuals.entries:
            res.residuals.append(Residual(f"f_{e.degree}({e.element.to_str(['A', 'B'])})", e.residual))
        return
    if which != "phi":
        raise TaskError(f"unknown G2 example {which!r}")
    omega = ctx.system().omega
    g2 = G2Data(ctx.chart, omega)
    res.info.append(("orientation", str(g2.orientation)))
    for i, j, val in metric_identity_defects(g2):
        res.residuals.append(Residual(f"metric identity ({i + 1},{j + 1})", val))
    res.residuals.append(Residual("d phi", ext_d(g2.phi)))
    res.residuals.append(Residual("d psi", ext_d(g2.psi)))
    rng = random.Random(f"{ctx.seed}:g2")
    for case in range(int(t.options.get("cases", 5))):
        a = rand_form(rng, ctx.chart, 2, max_deg=1, n_comps=4)
        p7, p14 = pi7(g2, a), pi14(g2, a)
        res.residuals.append(Residual(f"case {case + 1} pi7 + pi14 - id", p7 + p14 - a))
        res.residuals.append(Residual(f"case {case + 1} pi7 pi14", pi7(g2, p14)))
        res.residuals.append(Residual(f"case {case + 1} pi7 idempotent", pi7(g2, p7) - p7))


def _task_expect(ctx: Context, t, res: TaskResult):
    if len(t.args) != 1:
        raise TaskError("usage: expect <expr> [equals=<expr>]")
    lhs = ctx.expr(t.args[0])
    rhs = ctx.expr(t.options["equals"]) if "equals" in t.options else None
    res.info.append(("value", lhs.to_str()))
    if rhs is None:
        res.residuals.append(Residual(t.args[0], lhs))
    elif type(lhs) is type(rhs) and (lhs.degree == rhs.degree or lhs.is_zero() or rhs.is_zero()):
        diff = lhs - rhs if lhs.degree == rhs.degree else (lhs if rhs.is_zero() else -rhs)
        res.residuals.append(Residual(f"{t.args[0]} - ({t.options['equals']})", diff))
    else:
        res.checks.append((f"{t.args[0]} and {t.options['equals']} differ in kind or degree", False))


TASKS: Dict[str, Callable] = {
    "verify-identities": _task_verify_identities,
    "hamiltonian-field": _task_hamiltonian_field,
    "classify": _task_classify,
    "comomentum-verify": _task_comomentum_verify,
    "comomentum-build": _task_comomentum_build,
    "closure-defect": _task_closure_defect,
    "phase-space": _task_phase_space,
    "g2-example": _task_g2_example,
    "expect": _task_expect,
}


def run(ws: Workspace, seed: int = 0, convention: Optional[str] = None) -> Report:
    """Execute the tasks in file order; a failing or broken task does not stop later ones."""
    conv, name, source = resolve_convention(ws, convention)
    report = Report(ws.source, seed, conv, name, source, warnings=list(ws.warnings))
    ctx = Context(ws, conv, seed)
    for t in ws.tasks:
        res = TaskResult(t.name, t.line)
        fn = TASKS.get(t.name)
        if fn is None:
            res.error = f"unknown task {t.name!r}"
        else:
            try:
                fn(ctx, t, res)
            except ParseError as exc:
                res.error = str(exc)
            except (ValueError, TypeError, KeyError) as exc:
                res.error = f"{type(exc).__name__}: {exc}"
        report.tasks.append(res)
    return report
