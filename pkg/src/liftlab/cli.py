"""Command-line front end.

    liftlab run <script> [--format text|json] [--seed N] [--count N]
    liftlab check <suite> [--input <script>] [--define NAME ...]
                  [--format text|json] [--seed N] [--count N]

Exit status: 0 when every check passed, 1 when some check failed, 2 on
parse or runtime errors (reported with source locations, never a traceback).
"""

from __future__ import annotations

import argparse
import json
import sys

from .chart import ChartError
from .coeff import UnsupportedSubstitution
from .dsl import ParseError, Parser, Session, SessionError, execute


def _add_common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized property batteries")
    p.add_argument("--count", type=int, default=100,
                   help="battery size for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liftlab",
                                 description="exact checks for Poisson/Jacobi structures and their lifts")
    sub = ap.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a script")
    runp.add_argument("script")
    _add_common(runp)
    checkp = sub.add_parser("check", help="run one suite against objects bound by a script")
    checkp.add_argument("suite")
    checkp.add_argument("--input", help="script that defines the objects")
    checkp.add_argument("--define", action="append", default=[],
                        help="name bound by the script to check (repeatable)")
    _add_common(checkp)
    return ap


def _emit(outputs, fmt: str, out) -> bool:
    ok = True
    if fmt == "json":
        payload = []
        for kind, item in outputs:
            if kind == "report":
                payload.append(item.to_dict())
                ok = ok and item.passed
            else:
                payload.append({"output": item})
        json.dump(payload, out, indent=2)
        out.write("\n")
        return ok
    for kind, item in outputs:
        if kind == "report":
            out.write(item.render_text() + "\n")
            ok = ok and item.passed
        else:
            out.write(item + "\n")
    return ok


def _load_script(path: str, session: Session):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    outputs = []
    for stmt in Parser(text).parse_script():
        outputs.extend(execute(session, stmt))
    return outputs


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    session = Session(seed=args.seed, count=args.count)
    try:
        if args.command == "run":
            outputs = _load_script(args.script, session)
        else:
            outputs = []
            if args.input:
                outputs.extend(_load_script(args.input, session))
            from .dsl import Statement
            stmt = Statement("check", (args.suite, tuple(args.define)), 0, 0)
            outputs.extend(execute(session, stmt))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SessionError, ChartError, UnsupportedSubstitution) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = _emit(outputs, args.format, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
