"""Named fixtures: bordered structures, curves, knot complexes and gluings.

Fixtures live as text files under ``fixtures/<kind>/<name>.txt`` in the
formats of their modules.  Solid tori with integer framing are generated on
demand rather than stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .curves import PLCurve, curve_to_type_d, format_curve, line, parse_curve
from .gluing import GluingMatrix
from .surgery import FilteredComplex
from .typea import TypeAStructure, format_type_a, parse_type_a
from .typed import ParseError, TypeDStructure, format_type_d, parse_type_d, validate

__all__ = [
    "CatalogEntry",
    "CatalogError",
    "UnknownEntry",
    "InvalidFixture",
    "KINDS",
    "FRAMING_RANGE",
    "load",
    "list_entries",
    "parse_filtered_complex",
    "format_filtered_complex",
    "parse_gluing",
    "format_gluing",
    "format_payload",
    "solid_torus",
]

KINDS = ("type_d", "type_a", "curve", "filtered_complex", "gluing")
FRAMING_RANGE = range(-5, 10)

_FRAMING = re.compile(r"^cfd\.solid-torus\.framing-(-?\d+)$")

# Entries reconstructed from a picture rather than transcribed from a list,
# and the acceptance check that guards each of them.
_FIGURE_DERIVED = {
    "cfd.N.s1.twisted-2": "test_acceptance.py::test_criterion_02_grading_tables",
    "cfd.N.s1.sheared-unreduced": "test_acceptance.py::test_criterion_09_solid_torus_property",
    "curve.N.s0": "test_acceptance.py::test_criterion_11_property_suites",
    "curve.N.s1": "test_acceptance.py::test_criterion_11_property_suites",
}


class CatalogError(ValueError):
    pass


class UnknownEntry(CatalogError, KeyError):
    pass


class InvalidFixture(CatalogError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    payload: Any
    provenance: str
    figure_derived: bool = False
    acceptance_test: Optional[str] = None


# -- formats without a home module -----------------------------------------


def parse_filtered_complex(text: str) -> FilteredComplex:
    """Read ``generator <name> <alexander> <maslov>`` and ``arrow <from> <to> <n>`` lines."""
    gens, arrows = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "generator" and len(parts) == 4:
                gens.append((parts[1], int(parts[2]), int(parts[3])))
                continue
            if parts[0] == "arrow" and len(parts) == 4:
                arrows.append((parts[1], parts[2], int(parts[3])))
                continue
        except ValueError:
            pass
        raise ParseError(f"cannot read {raw.strip()!r}", lineno)
    return FilteredComplex(tuple(gens), tuple(arrows))


def format_filtered_complex(c: FilteredComplex) -> str:
    lines = [f"generator {n} {a} {m}" for n, a, m in c.generators]
    lines += [f"arrow {a} {b} {u}" for a, b, u in c.differentials]
    return "\n".join(lines) + "\n"


def parse_gluing(text: str) -> GluingMatrix:
    """Read a single ``matrix q r p s`` line."""
    rows = [line.split("#", 1)[0].split() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if len(rows) != 1 or rows[0][0] != "matrix" or len(rows[0]) != 5:
        raise ParseError("expected one line 'matrix q r p s'")
    try:
        q, r, p, s = map(int, rows[0][1:])
    except ValueError:
        raise ParseError("matrix entries must be integers") from None
    return GluingMatrix(q, r, p, s)


def format_gluing(m: GluingMatrix) -> str:
    return f"matrix {m.q} {m.r} {m.p} {m.s}\n"


_PARSERS = {
    "type_d": parse_type_d,
    "type_a": parse_type_a,
    "curve": parse_curve,
    "filtered_complex": parse_filtered_complex,
    "gluing": parse_gluing,
}

_FORMATTERS = {
    TypeDStructure: format_type_d,
    TypeAStructure: format_type_a,
    PLCurve: format_curve,
    FilteredComplex: format_filtered_complex,
    GluingMatrix: format_gluing,
}


def format_payload(payload: Any) -> str:
    for cls, fmt in _FORMATTERS.items():
        if isinstance(payload, cls):
            return fmt(payload)
    raise TypeError(f"no text format for {type(payload).__name__}")


# -- loading ----------------------------------------------------------------


Root = Union[str, Path, None]


def _root(root: Root):
    return Path(root) if root is not None else files("bordered_calc") / "fixtures"


def _kind_of(name: str) -> str:
    prefix = name.split(".", 1)[0]
    return {"cfd": "type_d", "cfa": "type_a", "curve": "curve", "cfk": "filtered_complex",
            "gluing": "gluing"}.get(prefix, "")


def _header(text: str) -> str:
    lines = []
    for raw in text.splitlines():
        if not raw.startswith("#"):
            break
        lines.append(raw.lstrip("# ").rstrip())
    return " ".join(lines)


def _check(kind: str, name: str, payload: Any) -> None:
    if kind == "type_d":
        problems = validate(payload)
        if problems:
            raise InvalidFixture(f"{name}: " + "; ".join(map(str, problems)))
    elif kind == "curve":
        payload.validate()
    elif kind == "gluing" and not payload.is_gluing:
        raise InvalidFixture(f"{name}: determinant must be +-1")


def solid_torus(n: int) -> TypeDStructure:
    """The solid torus whose meridian is the slope ``n`` curve."""
    return curve_to_type_d(line(1, n))


def load(name: str, root: Root = None) -> CatalogEntry:
    """The validated fixture called ``name``."""
    m = _FRAMING.match(name)
    if m:
        n = int(m.group(1))
        return CatalogEntry(name, "type_d", solid_torus(n),
                            f"solid torus, meridian of slope {n}, read off the slope {n} line")
    kind = _kind_of(name)
    path = _root(root) / kind / f"{name}.txt" if kind else None
    if path is None or not path.is_file():
        raise UnknownEntry(name)
    text = path.read_text()
    try:
        payload = _PARSERS[kind](text)
    except ValueError as exc:
        raise InvalidFixture(f"{name}: {exc}") from exc
    _check(kind, name, payload)
    test = _FIGURE_DERIVED.get(name)
    return CatalogEntry(name, kind, payload, _header(text), test is not None, test)


def list_entries(root: Root = None) -> List[str]:
    names = []
    base = _root(root)
    for kind in KINDS:
        folder = base / kind
        if folder.is_dir():
            names += [p.name[:-4] for p in folder.iterdir() if p.name.endswith(".txt")]
    names += [f"cfd.solid-torus.framing-{n}" for n in FRAMING_RANGE]
    return sorted(names)


def load_all(root: Root = None) -> Dict[str, CatalogEntry]:
    return {name: load(name, root) for name in list_entries(root)}


__all__ += ["load_all"]
