"""Command-line front end.

Exit codes: 0 on success, 1 when a computation fails or a check does not
pass, 2 when an input cannot be read or validated.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import catalog
from .curves import (CurveError, PLCurve, Reflect, Twist, apply_mapping_class, curve_to_type_d,
                     filling_dimensions, format_curve, parse_curve, pegboard_summary, to_svg,
                     type_d_to_curve)
from .gluing import GluingMatrix, h1_of_gluing
from .grading import format_rational
from .pairing import box_tensor, filling_class_dimensions, homology
from .surgery import FilteredComplex, SurgeryError, d_lens, d_surgery, knot_complement_type_d, v_h
from .typea import (assign_gradings_a, format_type_a, from_type_d,
                    grading_violations_a, parse_type_a)
from .typed import (TypeDError, TypeDStructure, assign_gradings, edge_reduce, format_type_d,
                    grading_violations, parse_type_d, to_dot, validate)
from .verification import verify

OK, MATH_FAILURE, INPUT_FAILURE = 0, 1, 2


class InputFailure(Exception):
    pass


# -- output -----------------------------------------------------------------


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "as_tuple"):
        return str(value)
    return value


def _emit(args, data: Dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(_jsonable(data), sort_keys=True, ensure_ascii=False))
    else:
        print(text)


# -- input ------------------------------------------------------------------


def _read(source: str, kind: str, root) -> Any:
    """A payload from a file path, or failing that from a catalog entry name."""
    path = Path(source)
    if path.is_file():
        parser = {"type_d": parse_type_d, "type_a": parse_type_a, "curve": parse_curve,
                  "filtered_complex": catalog.parse_filtered_complex,
                  "gluing": catalog.parse_gluing}[kind]
        try:
            payload = parser(path.read_text())
        except ValueError as exc:
            raise InputFailure(f"{source}: {exc}") from None
        if kind == "type_d":
            problems = validate(payload)
            if problems:
                raise InputFailure(f"{source}: " + "; ".join(map(str, problems)))
        return payload
    try:
        entry = catalog.load(source, root)
    except catalog.UnknownEntry:
        raise InputFailure(f"{source}: no such file or catalog entry") from None
    except ValueError as exc:
        raise InputFailure(str(exc)) from None
    if entry.kind != kind:
        raise InputFailure(f"{source} is a {entry.kind} entry, expected {kind}")
    return entry.payload


def _knot(name: str, root) -> FilteredComplex:
    for candidate in (name, f"cfk.{name}", f"cfk.staircase.{name}"):
        try:
            return _read(candidate, "filtered_complex", root)
        except InputFailure:
            continue
    raise InputFailure(f"{name}: unknown knot complex")


def _slope(text: str):
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+))?\s*", text)
    if not m:
        raise InputFailure(f"cannot read slope {text!r}; expected p or p/q")
    return int(m.group(1)), int(m.group(2) or 1)


# -- commands ---------------------------------------------------------------


def cmd_pair(args) -> int:
    a = _read(args.cfa, "type_a", args.fixtures)
    d = _read(args.cfd, "type_d", args.fixtures)
    graded = args.gradings and a.names and d.names
    if graded:
        rep = homology(box_tensor(assign_gradings_a(a, args.base_a or a.names[0]),
                                  assign_gradings(d, args.base_d or d.names[0])))
    else:
        rep = homology(box_tensor(a, d))
    data = {"dimension": rep.dimension, "surviving": [str(g) for g in rep.surviving]}
    lines = [f"dimension {rep.dimension}"] + [f"  {g}" for g in rep.surviving]
    if graded:
        data["spinc_classes"] = [[str(g) for g in c] for c in rep.spinc_classes]
        data["relative_gradings"] = {str(g): v for g, v in rep.relative_gradings.items()}
        lines += [f"  {g}: {format_rational(v)}" for g, v in rep.relative_gradings.items()]
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_grade(args) -> int:
    if args.kind == "a":
        a = _read(args.structure, "type_a", args.fixtures)
        g = assign_gradings_a(a, args.base or a.names[0])
        problems = grading_violations_a(g)
    else:
        d = _read(args.structure, "type_d", args.fixtures)
        g = assign_gradings(d, args.base or d.names[0])
        problems = grading_violations(g)
    data = {"base": g.base_generator, "indeterminacy": str(g.indeterminacy),
            "gradings": {n: str(v) for n, v in g.gradings.items()},
            "violations": [str(p) for p in problems]}
    lines = [f"indeterminacy {g.indeterminacy}"]
    lines += [f"  gr({n}) = {v}" for n, v in g.gradings.items()]
    lines += [f"  violation: {p}" for p in problems]
    _emit(args, data, "\n".join(lines))
    return MATH_FAILURE if problems else OK


def cmd_dinv(args) -> int:
    try:
        q = int(args.second)
    except ValueError:
        values = d_surgery(args.p, v_h(_knot(args.second, args.fixtures)))
        data = {"p": args.p, "knot": args.second, "d": dict(sorted(values.items()))}
        text = "\n".join(f"[{s}] {format_rational(v)}" for s, v in sorted(values.items()))
    else:
        values = d_lens(args.p, q)
        data = {"p": args.p, "q": q, "d": values}
        text = " ".join(format_rational(v) for v in values)
    _emit(args, data, text)
    return OK


def cmd_h1(args) -> int:
    text = args.matrix_option or args.matrix
    if text is None:
        raise InputFailure("give the matrix as q,r,p,s")
    try:
        q, r, p, s = (int(x) for x in text.split(","))
    except ValueError:
        raise InputFailure("matrix must be four integers q,r,p,s") from None
    m = GluingMatrix(q, r, p, s)
    group = h1_of_gluing(m.normalized())
    data = {"matrix": m.rows(), "determinant": m.determinant, "group": str(group),
            "order": group.order}
    _emit(args, data, str(group))
    return OK if m.is_gluing else MATH_FAILURE


def _describe(dims: Sequence[int]) -> str:
    groups = sorted(Counter(dims).items())
    return ", ".join(f"{n} class{'es' if n != 1 else ''} × dim {d}" for d, n in groups)


def cmd_fill(args) -> int:
    p, q = _slope(args.slope)
    try:
        curve = _read(args.knot, "curve", args.fixtures)
        complex_ = None
    except InputFailure:
        complex_ = _knot(args.knot, args.fixtures)
        curve = type_d_to_curve(knot_complement_type_d(complex_, 0))
    summary = pegboard_summary(curve)
    dims = filling_dimensions(summary, p, q)
    data = {"slope": f"{p}/{q}", "classes": dims, "genus": summary.genus, "tau": summary.tau,
            "epsilon": summary.epsilon, "n": summary.n}
    text = _describe(list(dims.values()))
    if args.oracle:
        if complex_ is None:
            raise InputFailure("--oracle needs a knot complex, not a curve")
        oracle = filling_class_dimensions(complex_, p, q)
        data["oracle"] = oracle
        text += f"\noracle: {_describe(oracle)}"
        if oracle != sorted(dims.values()):
            _emit(args, data, text)
            return MATH_FAILURE
    _emit(args, data, text)
    return OK


_MOVE = re.compile(r"^(twist):(-?\d+),(-?\d+):(-?\d+)$|^(reflect):(y=1/2|y=x|y=-x)$")


def _moves(text: str):
    out = []
    for token in filter(None, text.split(";")):
        m = _MOVE.match(token.strip())
        if not m:
            raise InputFailure(f"cannot read move {token!r}; use twist:a,b:n or reflect:AXIS")
        if m.group(1):
            out.append(Twist((int(m.group(2)), int(m.group(3))), int(m.group(4))))
        else:
            out.append(Reflect(m.group(6)))
    return out


def cmd_twist(args) -> int:
    try:
        curve = _read(args.curve, "curve", args.fixtures)
    except InputFailure:
        curve = type_d_to_curve(_read(args.curve, "type_d", args.fixtures))
    moved = apply_mapping_class(curve, _moves(args.moves))
    d = curve_to_type_d(moved)
    if d.has_identity_edges() and args.reduce:
        d = edge_reduce(d)
    data = {"curve": format_curve(moved), "type_d": format_type_d(d)}
    _emit(args, data, format_type_d(d) if args.output == "type_d" else format_curve(moved))
    return OK


def cmd_reduce(args) -> int:
    d = edge_reduce(_read(args.structure, "type_d", args.fixtures))
    _emit(args, {"type_d": format_type_d(d)}, format_type_d(d).rstrip())
    return OK


def cmd_convert(args) -> int:
    if args.to == "a":
        out = format_type_a(from_type_d(_read(args.source, "type_d", args.fixtures),
                                        max_length=args.max_length))
    elif args.to == "curve":
        out = format_curve(type_d_to_curve(_read(args.source, "type_d", args.fixtures)))
    else:
        out = format_type_d(curve_to_type_d(_read(args.source, "curve", args.fixtures)))
    _emit(args, {"result": out}, out.rstrip())
    return OK


def cmd_verify(args) -> int:
    report = verify(args.fixtures)
    if args.json:
        data = {"summary": report.summary,
                "criteria": [{"number": r.number, "title": r.title, "pass": r.passed,
                              "error": r.error,
                              "checks": [vars(c) for c in r.checks]} for r in report.criteria]}
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        for r in report.criteria:
            print(r.line())
            if r.error:
                print(f"    error: {r.error}")
            for c in r.checks:
                if args.verbose or not c.passed:
                    print(f"    {c.name}: {'PASS' if c.passed else 'FAIL'}"
                          f" (expected {c.expected}, computed {c.computed})")
        s = report.summary
        print(f"{s['passed']} checks passed, {s['failed']} failed")
        for c in report.checks:
            if c.name.startswith("gap 3/2"):
                print(f"{c.name}: {'PASS' if c.passed else 'FAIL'}")
    return OK if report.passed else MATH_FAILURE


def cmd_export(args) -> int:
    try:
        entry = catalog.load(args.entry, args.fixtures)
    except catalog.UnknownEntry:
        raise InputFailure(f"{args.entry}: unknown catalog entry") from None
    payload = entry.payload
    if args.format == "text":
        print(catalog.format_payload(payload), end="")
    elif args.format == "json":
        print(json.dumps({"name": entry.name, "kind": entry.kind, "provenance": entry.provenance,
                          "figure_derived": entry.figure_derived,
                          "text": catalog.format_payload(payload)}, sort_keys=True))
    elif args.format == "dot":
        if not isinstance(payload, TypeDStructure):
            raise InputFailure("dot export needs a type D entry")
        print(to_dot(payload, entry.name), end="")
    else:
        if isinstance(payload, TypeDStructure):
            payload = type_d_to_curve(payload)
        if not isinstance(payload, PLCurve):
            raise InputFailure("svg export needs a curve or a loop-type type D entry")
        print(to_svg(payload))
    return OK


def cmd_list(args) -> int:
    names = catalog.list_entries(args.fixtures)
    _emit(args, {"entries": names}, "\n".join(names))
    return OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", default=None,
                        help="fixture directory (default: the packaged catalog)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="bordered-calc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", parents=[common], help="box tensor product and its homology")
    p.add_argument("cfa")
    p.add_argument("cfd")
    p.add_argument("--gradings", action="store_true", help="attach refined gradings")
    p.add_argument("--base-a")
    p.add_argument("--base-d")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("grade", parents=[common], help="refined gradings of a structure")
    p.add_argument("structure")
    p.add_argument("--kind", choices=("a", "d"), default="d")
    p.add_argument("--base")
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("dinv", parents=[common],
                       help="d-invariants of L(p,q), or of p-surgery on a catalog knot")
    p.add_argument("p", type=int)
    p.add_argument("second", metavar="q|knot")
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("h1", parents=[common], help="first homology of a gluing q,r,p,s")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--matrix", dest="matrix_option", metavar="Q,R,P,S")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("fill", parents=[common], help="per-class dimensions of a filling")
    p.add_argument("knot", help="knot complex or curve (file or catalog name)")
    p.add_argument("slope", help="p or p/q")
    p.add_argument("--oracle", action="store_true", help="also compute by box tensor")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("twist", parents=[common], help="apply twists and reflections to a curve")
    p.add_argument("curve", help="curve or loop-type type D structure")
    p.add_argument("moves", help="e.g. 'reflect:y=1/2;twist:0,-1:-2;reflect:y=x'")
    p.add_argument("--output", choices=("type_d", "curve"), default="type_d")
    p.add_argument("--reduce", action="store_true", help="cancel identity edges")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("reduce", parents=[common], help="cancel identity edges")
    p.add_argument("structure")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("convert", parents=[common], help="type D to type A, graph to curve")
    p.add_argument("source")
    p.add_argument("--to", choices=("a", "curve", "d"), required=True)
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", parents=[common], help="recompute every acceptance check")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="export a catalog entry")
    p.add_argument("entry")
    p.add_argument("--format", choices=("text", "json", "dot", "svg"), default="text")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("list", parents=[common], help="list catalog entries")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_FAILURE
    except (TypeDError, CurveError, SurgeryError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return MATH_FAILURE


if __name__ == "__main__":
    sys.exit(main())
