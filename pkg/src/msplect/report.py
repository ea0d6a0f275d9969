"""Text and json-lines renderings of a run report.

Both renderings are deterministic: tasks appear in file order, residuals
in the order the task produced them, and json fields in a fixed order.
"""

from __future__ import annotations

import json
from typing import List

from .workspace import Report, TaskResult

FORMATS = ("text", "json-lines")


def _convention_line(report: Report) -> str:
    return f"{report.convention_name} ({report.convention.describe()}), from {report.convention_source}"


def _task_text(i: int, t: TaskResult) -> List[str]:
    out = [f"[{i}] {t.name} (line {t.line}): {t.status.upper()}"]
    if t.error is not None:
        out.append(f"    error: {t.error}")
        return out
    for key, value in t.info:
        out.append(f"    {key}: {value}")
    for r in t.residuals:
        out.append(f"    residual {r.label}: {r.text() if not r.zero else '0'}")
    for label, ok in t.checks:
        out.append(f"    check {label}: {'ok' if ok else 'FAILED'}")
    first = t.first_failure()
    if first is not None:
        out.append(f"    first failure: {first}")
    return out


def emit_text(report: Report) -> str:
    lines = [f"workspace: {report.source}", f"seed: {report.seed}", f"convention: {_convention_line(report)}"]
    for w in report.warnings:
        lines.append(f"warning: {w}")
    for i, t in enumerate(report.tasks, start=1):
        lines += _task_text(i, t)
    counts = {s: sum(t.status == s for t in report.tasks) for s in ("pass", "fail", "error")}
    lines.append("")
    lines.append("PASS" if report.ok else "FAIL")
    lines.append(f"  tasks: {len(report.tasks)}, passed: {counts['pass']}, failed: {counts['fail']}, errors: {counts['error']}")
    if not report.ok:
        bad = next(t for t in report.tasks if t.status != "pass")
        lines.append(f"  first failing task: {bad.name} (line {bad.line}): {bad.error or bad.first_failure()}")
    return "\n".join(lines) + "\n"


def _dump(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(", ", ": "))


def emit_json_lines(report: Report) -> str:
    """A header record, one record per residual, one per task, and a summary."""
    rows = [{
        "record": "header",
        "workspace": report.source,
        "seed": report.seed,
        "convention": report.convention_name,
        "hamiltonian_sign": report.convention.hamiltonian_sign,
        "comomentum_sign": report.convention.comomentum_sign,
        "convention_source": report.convention_source,
        "warnings": report.warnings,
    }]
    for i, t in enumerate(report.tasks, start=1):
        for j, r in enumerate(t.residuals, start=1):
            rows.append({
                "record": "residual",
                "task": i,
                "name": t.name,
                "index": j,
                "label": r.label,
                "zero": r.zero,
                "value": r.text() if not r.zero else "0",
            })
        rows.append({
            "record": "task",
            "task": i,
            "name": t.name,
            "line": t.line,
            "status": t.status,
            "info": [[k, v] for k, v in t.info],
            "checks": [[label, ok] for label, ok in t.checks],
            "error": t.error,
            "first_failure": t.error or t.first_failure(),
        })
    rows.append({
        "record": "summary",
        "status": "pass" if report.ok else "fail",
        "tasks": len(report.tasks),
        "passed": sum(t.status == "pass" for t in report.tasks),
        "exit_code": report.exit_code,
    })
    return "".join(_dump(r) + "\n" for r in rows)


def emit(report: Report, fmt: str = "text") -> bytes:
    if fmt == "text":
        return emit_text(report).encode("utf-8")
    if fmt == "json-lines":
        return emit_json_lines(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
