"""Command-line interface: decide | qe | eval | witness | axioms | defcheck.

Exit codes: `decide` returns 0 for True and 1 for False; every command
returns 2 on usage, parse or admissibility errors.  With ``--format
json`` a single report object is printed:

    {"schema": 1, "command": ..., "theory": ..., "input": ...,
     "verdict"|"result": ..., "trace"?: [...], "timing_ms": ...}
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import formulas as F
from .engine import (
    LevelError, NotSentenceError, TheoryLevel, decide, eliminate_all,
)
from .epmodel import eval_qf, format_epset, parse_assignment, witness_search
from .harness import EnumerationSpec, defcheck, generate_axioms
from .syntax import ParseError, format_formula, parse


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="boolqe")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, formula_arg=True):
        if formula_arg:
            p.add_argument("formula", help="formula text, or @FILE to read a file")
        p.add_argument("--theory", default="T3", choices=["T1", "T2", "T3"])
        p.add_argument("--format", default="text", choices=["text", "json"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-transient", type=int, default=8)
        p.add_argument("--max-period", type=int, default=6)
        p.add_argument("--trace", action="store_true")

    p = sub.add_parser("decide", help="decide a sentence")
    common(p)

    p = sub.add_parser("qe", help="print a quantifier-free equivalent")
    common(p)

    p = sub.add_parser("eval", help="evaluate on eventually periodic sets")
    common(p)
    p.add_argument("--assign", action="append", default=[],
                   help="FILE or inline 'x = EP{...}; y = EP{...}' bindings")

    p = sub.add_parser("witness", help="search for an existential witness")
    common(p)
    p.add_argument("--assign", action="append", default=[])

    p = sub.add_parser("axioms", help="decide all axiom instances")
    common(p, formula_arg=False)
    p.add_argument("--bound", type=int, default=8)

    p = sub.add_parser("defcheck", help="search for a defining formula")
    common(p, formula_arg=False)
    p.add_argument("--target", required=True)
    p.add_argument("--level", default="L1", choices=["L1", "L2", "L3"])
    p.add_argument("--size", type=int, default=7)
    p.add_argument("--allow", action="append", default=[],
                   help="extra vocabulary: Fin, C<k>, Res<n> (repeatable)")
    return top


def _read_formula(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    return parse(text)


def _load_assignment(chunks: list) -> dict:
    merged: dict = {}
    for chunk in chunks:
        try:
            with open(chunk, encoding="utf-8") as fh:
                chunk = fh.read()
        except OSError:
            pass
        merged.update(parse_assignment(chunk))
    return merged


def _report(args, payload: dict, started: float) -> None:
    if args.format == "json":
        doc = {"schema": 1, "command": args.command, "theory": args.theory}
        doc.update(payload)
        doc["timing_ms"] = int((time.monotonic() - started) * 1000)
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in payload.get("lines", []):
            print(line)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.monotonic()
    theory = TheoryLevel.parse(args.theory)
    try:
        return _dispatch(args, theory, started)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (LevelError, NotSentenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, theory: TheoryLevel, started: float) -> int:
    if args.command == "decide":
        sentence = _read_formula(args.formula)
        verdict = decide(sentence, theory, want_trace=args.trace)
        payload = {
            "input": format_formula(sentence),
            "verdict": verdict.value,
            "lines": [("True" if verdict.value else "False")],
        }
        if args.trace:
            payload["trace"] = list(verdict.trace)
            payload["lines"] = list(verdict.trace) + payload["lines"]
        _report(args, payload, started)
        return 0 if verdict.value else 1

    if args.command == "qe":
        f = _read_formula(args.formula)
        out = eliminate_all(f, theory)
        text = format_formula(out)
        _report(args, {"input": format_formula(f), "result": text,
                       "lines": [text]}, started)
        return 0

    if args.command == "eval":
        f = _read_formula(args.formula)
        if not args.assign:
            raise ValueError("eval requires at least one --assign")
        lines, values = [], []
        for chunk in args.assign:
            assignment = _load_assignment([chunk])
            missing = sorted(F.free_vars(f) - set(assignment))
            if missing:
                raise ValueError(f"assignment misses variables: {missing}")
            value = eval_qf(f, assignment)
            values.append(value)
            lines.append("true" if value else "false")
        _report(args, {"input": format_formula(f), "result": values,
                       "lines": lines}, started)
        return 0

    if args.command == "witness":
        f = _read_formula(args.formula)
        if not isinstance(f, F.Exists):
            raise ValueError("witness requires an existential formula")
        assignment = _load_assignment(args.assign)
        found = witness_search(f, assignment, args.max_transient, args.max_period)
        text = format_epset(found) if found is not None else "inconclusive"
        _report(args, {"input": format_formula(f),
                       "result": None if found is None else text,
                       "lines": [text]}, started)
        return 0

    if args.command == "axioms":
        instances = generate_axioms(theory, args.bound)
        failures = []
        for name, sentence in instances:
            if not decide(sentence, theory).value:
                failures.append(name)
        lines = [f"{len(instances)} instances, " +
                 ("all True" if not failures else f"{len(failures)} failed")]
        lines += [f"FAILED {name}" for name in failures]
        _report(args, {"input": f"bound={args.bound}",
                       "result": {"instances": len(instances),
                                  "failures": failures},
                       "lines": lines}, started)
        return 0 if not failures else 1

    if args.command == "defcheck":
        target = _read_formula(args.target)
        spec = _defcheck_spec(args)
        result = defcheck(target, spec)
        if result.definable:
            text = f"DefinableBy: {format_formula(result.found)} (checked {result.checked})"
        else:
            text = f"NotDefinable (checked {result.checked})"
        _report(args, {"input": format_formula(target),
                       "result": {"definable": result.definable,
                                  "by": None if result.found is None
                                  else format_formula(result.found),
                                  "checked": result.checked},
                       "lines": [text]}, started)
        return 0

    raise ValueError(f"unknown command {args.command!r}")


def _defcheck_spec(args) -> EnumerationSpec:
    level = int(args.level[1])
    max_count = 4
    moduli: list = []
    include_fin = None
    for token in args.allow:
        if token == "Fin":
            include_fin = True
        elif token.startswith("Res") and token[3:].isdigit():
            moduli.append(int(token[3:]))
        elif token.startswith("C") and token[1:].isdigit():
            max_count = int(token[1:])
        else:
            raise ValueError(f"unknown --allow token {token!r}")
    return EnumerationSpec(level=level, size=args.size, max_count=max_count,
                           moduli=tuple(sorted(set(moduli))),
                           include_fin=include_fin)


if __name__ == "__main__":
    sys.exit(main())
