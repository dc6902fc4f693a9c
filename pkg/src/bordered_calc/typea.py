"""Type A structures: operation tables and conversion from decorated graphs.

The conversion walks directed paths of a loop-type decorated graph, swaps
the digits 1 and 3 in every edge label, concatenates them, and regroups the
resulting string into the fewest chords that compose along the path.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraElement, ChordSequence, chord_from_digits, parse_element
from .grading import (CENTRAL, CosetGrading, GradingElement, IDENTITY, coset_equal,
                      cyclic_generator, inverse, multiply, power)
from .typed import (Diagnostic, DisconnectedGraph, ParseError, TypeDError, TypeDStructure,
                    _dfs_tree)

__all__ = [
    "TypeAStructure",
    "GradedTypeA",
    "NotLoopType",
    "parse_type_a",
    "format_type_a",
    "from_type_d",
    "convert",
    "regroup",
    "assign_gradings_a",
    "grading_violations_a",
]

log = logging.getLogger(__name__)

Operation = Tuple[str, ChordSequence, str]

# "13" is not a chord of the torus algebra, so it is not a block.
BLOCKS = ("1", "2", "3", "12", "23", "123")
_SWAP = str.maketrans("13", "31")


class NotLoopType(TypeDError):
    pass


@dataclass(frozen=True)
class TypeAStructure:
    generators: Tuple[Tuple[str, int], ...]
    operations: Tuple[Operation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(i)) for n, i in self.generators))
        ops = []
        idem = dict(self.generators)
        for x, chords, y in self.operations:
            chords = ChordSequence(chords)
            if x not in idem or y not in idem:
                raise TypeDError(f"operation {x}->{y} uses an unknown generator")
            if chords and (chords.left != idem[x] or chords.right != idem[y]):
                raise TypeDError(f"operation m({x}, {chords}) = {y} is not idempotent-compatible")
            ops.append((x, chords, y))
        object.__setattr__(self, "operations", tuple(ops))

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.generators]

    def idem(self, name: str) -> int:
        return dict(self.generators)[name]

    def operations_from(self, name: str) -> List[Operation]:
        return [op for op in self.operations if op[0] == name]


def parse_type_a(text: str) -> TypeAStructure:
    """Read ``generator <name> <i0|i1>`` and ``op <input> <chord>... <output>`` lines."""
    gens, ops = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "generator" and len(parts) == 3 and parts[2] in ("i0", "i1"):
            gens.append((parts[1], 0 if parts[2] == "i0" else 1))
        elif parts[0] == "op" and len(parts) >= 4:
            try:
                chords = ChordSequence(parse_element(c) for c in parts[2:-1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            ops.append((parts[1], chords, parts[-1]))
        else:
            raise ParseError(f"cannot read {line!r}", lineno)
    return TypeAStructure(tuple(gens), tuple(ops))


def format_type_a(a: TypeAStructure) -> str:
    lines = [f"generator {n} i{i}" for n, i in a.generators]
    lines += ["op {} {} {}".format(x, " ".join(c.value for c in chords), y)
              for x, chords, y in a.operations]
    return "\n".join(lines) + "\n"


def regroup(digits: str, start: int, end: int) -> List[Tuple[AlgebraElement, ...]]:
    """All minimum-length splittings of ``digits`` into composable chords.

    The first chord must leave idempotent ``start`` and the last must arrive
    at ``end``.
    """
    n = len(digits)
    # best[i][e]: (min blocks, splittings) covering digits[:i] ending at idempotent e
    best: List[Dict[int, Tuple[int, list]]] = [dict() for _ in range(n + 1)]
    best[0][start] = (0, [()])
    for i in range(n):
        for e, (k, splits) in list(best[i].items()):
            for block in BLOCKS:
                if not digits.startswith(block, i):
                    continue
                chord = chord_from_digits(block)
                if chord.left != e:
                    continue
                j = i + len(block)
                cand = (k + 1, [s + (chord,) for s in splits])
                cur = best[j].get(chord.right)
                if cur is None or cand[0] < cur[0]:
                    best[j][chord.right] = cand
                elif cand[0] == cur[0]:
                    best[j][chord.right] = (cur[0], cur[1] + cand[1])
    if n == 0 or end not in best[n]:
        return []
    return best[n][end][1]


def _paths(d: TypeDStructure, max_length: Optional[int]):
    """Directed paths from every generator.

    Without ``max_length`` a path never repeats a directed edge; with it,
    edges may repeat and paths stop at that length.
    """
    out_by = defaultdict(list)
    for idx, (s, t, label) in enumerate(d.edges):
        out_by[s].append((idx, t, label))
    for start in d.names:
        stack = [(start, (), ())]
        while stack:
            node, used, labels = stack.pop()
            if labels:
                yield start, labels, node
            if max_length is not None and len(labels) >= max_length:
                continue
            for idx, t, label in out_by[node]:
                if max_length is None and idx in used:
                    continue
                stack.append((t, used + (idx,), labels + (label,)))


def convert(d: TypeDStructure, max_length: Optional[int] = None
            ) -> Tuple[TypeAStructure, List[Diagnostic]]:
    """The conversion together with diagnostics for rejected paths."""
    if not d.is_loop_type():
        raise NotLoopType("every generator must have valence at most two")
    if d.has_identity_edges():
        raise TypeDError("reduce identity edges before converting")
    idem = dict(d.generators)
    counts: Counter = Counter()
    diags: List[Diagnostic] = []
    for start, labels, end in _paths(d, max_length):
        digits = "".join(label.digits.translate(_SWAP) for label in labels)
        splits = regroup(digits, idem[start], idem[end])
        if not splits:
            continue
        if len(splits) > 1:
            diags.append(Diagnostic(
                "ambiguous", f"path {start}->{end} with string {digits} regroups in "
                             f"{len(splits)} minimal ways"))
            continue
        counts[(start, splits[0], end)] += 1
    ops = [(x, ChordSequence(c), y) for (x, c, y), n in counts.items() if n % 2]
    ops.sort(key=lambda op: (op[0], len(op[1]), [c.value for c in op[1]], op[2]))
    return TypeAStructure(d.generators, tuple(ops)), diags


def from_type_d(d: TypeDStructure, max_length: Optional[int] = None) -> TypeAStructure:
    a, diags = convert(d, max_length)
    for diag in diags:
        log.warning("%s", diag)
    return a


@dataclass(frozen=True)
class GradedTypeA:
    structure: TypeAStructure
    base_generator: str
    gradings: Dict[str, GradingElement]
    indeterminacy: Optional[GradingElement]

    def coset(self, name: str) -> CosetGrading:
        return CosetGrading(self.gradings[name], self.indeterminacy, None)


def _op_output_grading(gr_x: GradingElement, chords: Sequence[AlgebraElement]) -> GradingElement:
    out = multiply(power(CENTRAL, len(chords) - 1), gr_x)
    return multiply(out, ChordSequence(chords).grading())


def assign_gradings_a(a: TypeAStructure, base: str) -> GradedTypeA:
    """Refined gradings relative to ``base`` and the indeterminacy ``f``.

    Each operation imposes ``gr(m(x, rho...)) = lambda^(k-1) gr(x) gr(rho...)``
    in ``<f> \\ G``.
    """
    if base not in a.names:
        raise TypeDError(f"unknown base generator {base!r}")
    edges = [(x, y, chords[0]) for x, chords, y in a.operations]
    _, tree = _dfs_tree(a.names, edges, base, dict(a.generators))
    gr = {base: IDENTITY}
    for idx in tree:
        x, chords, y = a.operations[idx]
        if x in gr and y not in gr:
            gr[y] = _op_output_grading(gr[x], chords)
        elif y in gr and x not in gr:
            # gr(x) = lambda^(1-k) gr(y) gr(rho...)^-1
            gr[x] = multiply(multiply(power(CENTRAL, 1 - len(chords)), gr[y]),
                             inverse(ChordSequence(chords).grading()))
    tree_set = set(tree)
    closures = []
    for idx, (x, chords, y) in enumerate(a.operations):
        if idx in tree_set:
            continue
        expected = _op_output_grading(gr[x], chords)
        closures.append(multiply(gr[y], inverse(expected)))
    f = cyclic_generator(closures)
    return GradedTypeA(a, base, {n: gr[n] for n in a.names}, f)


def grading_violations_a(g: GradedTypeA) -> List[Diagnostic]:
    out = []
    for x, chords, y in g.structure.operations:
        expected = CosetGrading(_op_output_grading(g.gradings[x], chords), g.indeterminacy)
        actual = CosetGrading(g.gradings[y], g.indeterminacy)
        if not coset_equal(expected, actual):
            out.append(Diagnostic("grading", f"m({x}, {chords}) = {y} breaks the grading relation"))
    return out


__all__ += ["DisconnectedGraph"]
