"""Command-line entry point.

    msplect run <file> [--seed N] [--format text|json-lines] [--convention paper|strict]
    msplect check-identities --dim D --degree K --cases N --seed S
    msplect examples [--dest DIR]

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import shutil
import sys
from importlib import resources
from pathlib import Path

from .identities import CORE_IDENTITIES, check_core_identities
from .parser import ParseError, parse_workspace
from .report import FORMATS, emit
from .workspace import CONVENTIONS, TaskError, run

EXAMPLES = ("translation.msw", "g2_torus.msw", "r3_noether.msw", "complex_volume.msw",
            "kahler.msw", "phase_space.msw")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def bundled(name: str) -> Path:
    """Path of a bundled example workspace."""
    return Path(str(resources.files("msplect") / "data" / name))


def _cmd_run(args) -> int:
    try:
        ws = parse_workspace(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(ws, seed=args.seed, convention=args.convention)
    except TaskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    return report.exit_code


def _cmd_check_identities(args) -> int:
    if args.dim < 1 or args.degree < 0 or args.cases < 1:
        print("error: need dim >= 1, degree >= 0, cases >= 1", file=sys.stderr)
        return 2
    results = check_core_identities(args.dim, args.degree, args.cases, args.seed)
    ok = True
    for name in CORE_IDENTITIES:
        failures, first = results[name]
        status = "PASS" if failures == 0 else "FAIL"
        ok = ok and failures == 0
        line = f"{status} {name}: {args.cases - failures}/{args.cases} zero"
        if first is not None:
            line += f"; first residual {first.to_str()}"
        print(line)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_examples(args) -> int:
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    for name in EXAMPLES:
        shutil.copyfile(bundled(name), dest / name)
        print(dest / name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="msplect", description="Exact multisymplectic calculus on coordinate charts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run the tasks of a workspace file")
    r.add_argument("file")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--format", choices=FORMATS, default="text")
    r.add_argument("--convention", choices=sorted(CONVENTIONS), default=None,
                   help="override the sign convention of the file")
    r.set_defaults(fn=_cmd_run)

    c = sub.add_parser("check-identities", help="randomized core identity suite")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--cases", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.set_defaults(fn=_cmd_check_identities)

    e = sub.add_parser("examples", help="copy the bundled example workspaces")
    e.add_argument("--dest", default=".")
    e.set_defaults(fn=_cmd_examples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
