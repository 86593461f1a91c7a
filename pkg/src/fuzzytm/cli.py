"""Command line interface: ``ftm <command> ...``.

Exit codes: 0 success, 1 parse or validation failure, 2 search budget
exhausted, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import constructions as cons
from .engine import InvariantError, SearchBudget, Status, run
from .ftmfile import ParseError, load, serialize
from .machine import MachineError, validate
from .oracle import OracleLimitError, enumerate_paths, oracle_degrees
from .report import report_emit

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3


def _cmd_validate(args) -> int:
    spec = load(args.file)
    problems = validate(spec)
    for v in problems:
        print(v, file=sys.stderr)
    if problems:
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def _cmd_run(args) -> int:
    spec = load(args.file)
    budget = SearchBudget.from_env(max_levels=args.max_levels,
                                   max_configurations=args.max_configs)
    if args.inputs_file:
        with open(args.inputs_file, encoding="utf-8") as fh:
            words = fh.read().splitlines()
    else:
        words = [args.input]
    code = EXIT_OK
    for text in words:
        report = run(spec, spec.word(text), budget, bound=args.bound)
        line = report_emit(report, args.format)
        if args.inputs_file and args.format == "text":
            line = f"{text!r}: {line}"
        print(line)
        if report.status is Status.BUDGET_EXHAUSTED:
            code = EXIT_BUDGET
    return code


def _cmd_oracle(args) -> int:
    spec = load(args.file)
    paths = enumerate_paths(spec, spec.word(args.input), args.depth)
    for p in paths:
        mark = " ..." if p.truncated else ""
        print(f"{p.composed:.12g}\t" + " -> ".join(p.ids) + mark)
    od = oracle_degrees(paths, spec)
    indet = "none" if od.indeterminacy is None else f"{od.indeterminacy:.12g}"
    print(f"e={od.accept:.12g} e'={od.reject:.12g} e''<={indet} "
          f"[depth {args.depth}, {len(paths)} paths]")
    return EXIT_OK


def _cmd_lift(args) -> int:
    spec = load(args.file)
    if args.command == "lift-loopcatcher":
        out = cons.lift_loop_catcher(spec, cons.LiftParams(args.degree, args.hub_name, args.hub))
    elif args.command == "lift-re":
        out = cons.lift_re(spec, args.degree, hub_name=args.hub_name, hub=args.hub)
    else:
        out = cons.lift_core(spec, args.degree, hub_name=args.hub_name, hub=args.hub)
    sys.stdout.write(serialize(out))
    return EXIT_OK


def _cmd_swap(args) -> int:
    sys.stdout.write(serialize(cons.swap_roles(load(args.file))))
    return EXIT_OK


def _cmd_union(args) -> int:
    sys.stdout.write(serialize(cons.union_conorm(load(args.file1), load(args.file2))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ftm", description="Fuzzy Turing machine workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a machine file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("run", help="compute accepting/rejecting/indeterminacy degrees")
    p.add_argument("file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--inputs-file", help="one input per line")
    p.add_argument("--max-levels", type=int)
    p.add_argument("--max-configs", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--bound", choices=("auto", "always", "never"), default="auto")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("oracle", help="enumerate all paths up to a depth")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    for name, flag in (("lift-loopcatcher", "--degree"), ("lift-re", "--degree"),
                       ("lift-core", "--degree")):
        p = sub.add_parser(name, help="print the lifted machine")
        p.add_argument("file")
        p.add_argument(flag, type=float, required=True, dest="degree")
        p.add_argument("--hub", choices=cons.HUB_MODES, default="per-state")
        p.add_argument("--hub-name", default="qI")
        p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("swap", help="exchange accepting and rejecting states")
    p.add_argument("file")
    p.set_defaults(func=_cmd_swap)

    p = sub.add_parser("union", help="t-conorm union of two machines")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=_cmd_union)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{getattr(args, 'file', '')}:{d}", file=sys.stderr)
        return EXIT_INVALID
    except (MachineError, cons.ConstructionError, OracleLimitError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
