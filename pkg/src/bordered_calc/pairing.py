"""Box tensor products, their F2 homology, and spin^c bookkeeping."""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .algebra import ChordSequence
from .curves import curve_to_type_d, line
from .grading import CosetGrading, multiply, normalize_spinc, same_spinc
from .surgery import FilteredComplex, knot_complement_type_d
from .typea import GradedTypeA, TypeAStructure, assign_gradings_a, from_type_d
from .typed import (GradedTypeD, TypeDError, TypeDStructure, assign_gradings, delta_k,
                    is_bounded)

__all__ = [
    "TensorGenerator",
    "BoxComplex",
    "PairingReport",
    "UnboundedTypeD",
    "NotAComplex",
    "MissingGradings",
    "box_tensor",
    "homology",
    "spinc_partition",
    "relative_gradings",
    "cancellation_key",
    "pair_bounded",
    "filling_class_dimensions",
    "ORACLE_FRAMING",
]


class UnboundedTypeD(TypeDError):
    pass


class NotAComplex(ValueError):
    pass


class MissingGradings(ValueError):
    pass


class TensorGenerator(NamedTuple):
    a: str
    d: str

    def __str__(self) -> str:
        return f"{self.a}⊗{self.d}"


_NAME = re.compile(r"^(.*?)(\d*)$")


def _name_key(name: str):
    letters, digits = _NAME.match(name).groups()
    return (int(digits) if digits else -1, letters)


def cancellation_key(g: TensorGenerator):
    """Order used to pick arrows for cancellation: index first, then letters."""
    return (_name_key(g.a), _name_key(g.d))


@dataclass(frozen=True)
class BoxComplex:
    generators: Tuple[TensorGenerator, ...]
    differential: Tuple[Tuple[TensorGenerator, TensorGenerator], ...]
    gradings: Optional[Dict[TensorGenerator, CosetGrading]] = None

    def boundary(self, g: TensorGenerator) -> List[TensorGenerator]:
        return [t for s, t in self.differential if s == g]

    def square_defects(self) -> List[Tuple[TensorGenerator, TensorGenerator]]:
        out_by = defaultdict(list)
        for s, t in self.differential:
            out_by[s].append(t)
        bad = []
        for g in self.generators:
            hits = Counter(u for t in out_by[g] for u in out_by[t])
            bad += [(g, u) for u, n in hits.items() if n % 2]
        return bad


@dataclass
class PairingReport:
    surviving: List[TensorGenerator]
    spinc_classes: Optional[List[List[TensorGenerator]]] = None
    relative_gradings: Optional[Dict[TensorGenerator, Fraction]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.surviving)

    def class_dimensions(self) -> List[int]:
        if self.spinc_classes is None:
            return []
        return sorted(len(c) for c in self.spinc_classes)


def _unwrap(obj):
    if isinstance(obj, (GradedTypeA, GradedTypeD)):
        return obj.structure, obj
    return obj, None


def box_tensor(a: Union[TypeAStructure, GradedTypeA],
               d: Union[TypeDStructure, GradedTypeD]) -> BoxComplex:
    """The complex ``CFA (x) CFD`` with differential summed over ``delta^k``.

    Gradings are attached when both factors carry them.
    """
    a_struct, a_graded = _unwrap(a)
    d_struct, d_graded = _unwrap(d)
    if not is_bounded(d_struct):
        raise UnboundedTypeD("the type D factor has a directed cycle")
    a_idem = dict(a_struct.generators)
    d_idem = dict(d_struct.generators)
    gens = tuple(TensorGenerator(x, y) for x in a_struct.names for y in d_struct.names
                 if a_idem[x] == d_idem[y])
    ops = defaultdict(list)
    for x, chords, x2 in a_struct.operations:
        ops[(x, tuple(chords))].append(x2)
    max_k = len(d_struct.edges)
    counts: Counter = Counter()
    for x, y in gens:
        for x2 in ops.get((x, ()), []):
            counts[(TensorGenerator(x, y), TensorGenerator(x2, y))] += 1
        for k in range(1, max_k + 1):
            paths = delta_k(d_struct, y, k)
            if not paths:
                break
            for seq, y2 in paths:
                if not isinstance(seq, ChordSequence):
                    # An identity coefficient acts by m2(x, iota) = x; longer
                    # sequences through one vanish by strict unitality.
                    if k == 1:
                        counts[(TensorGenerator(x, y), TensorGenerator(x, y2))] += 1
                    continue
                for x2 in ops.get((x, tuple(seq)), []):
                    counts[(TensorGenerator(x, y), TensorGenerator(x2, y2))] += 1
    diff = tuple(sorted((pair for pair, n in counts.items() if n % 2),
                        key=lambda p: (cancellation_key(p[0]), cancellation_key(p[1]))))
    gradings = None
    if a_graded is not None and d_graded is not None:
        gradings = {
            g: CosetGrading(multiply(a_graded.gradings[g.a], d_graded.gradings[g.d]),
                            a_graded.indeterminacy, d_graded.indeterminacy)
            for g in gens
        }
    return BoxComplex(gens, diff, gradings)


def _reduce(c: BoxComplex, choose: Callable[[List[Tuple]], Tuple]) -> List[TensorGenerator]:
    arrows = {pair: None for pair in c.differential}
    alive = set(c.generators)
    while arrows:
        src, tgt = choose(list(arrows))
        into_tgt = [u for u, v in arrows if v == tgt and u != src]
        from_src = [v for u, v in arrows if u == src and v != tgt]
        arrows = {p: None for p in arrows if not ({p[0], p[1]} & {src, tgt})}
        for u in into_tgt:
            for v in from_src:
                key = (u, v)
                if key in arrows:
                    del arrows[key]
                else:
                    arrows[key] = None
        alive -= {src, tgt}
    return [g for g in c.generators if g in alive]


def _largest_arrow(arrows):
    return max(arrows, key=lambda p: (cancellation_key(p[0]), cancellation_key(p[1])))


def spinc_partition(c: BoxComplex, survivors: Optional[Sequence[TensorGenerator]] = None
                    ) -> List[List[TensorGenerator]]:
    """Group generators (by default the homology survivors) by spin^c class."""
    if c.gradings is None:
        raise MissingGradings("both factors need refined gradings")
    if survivors is None:
        survivors = _reduce(c, _largest_arrow)
    classes: List[List[TensorGenerator]] = []
    for g in survivors:
        for cls in classes:
            if same_spinc(c.gradings[cls[0]], c.gradings[g]):
                cls.append(g)
                break
        else:
            classes.append([g])
    return classes


def relative_gradings(c: BoxComplex, survivors: Optional[Sequence[TensorGenerator]] = None
                      ) -> Dict[TensorGenerator, Fraction]:
    """Maslov component of each survivor after moving its spin^c part to (0, 0).

    Comparisons across classes assume both generators restrict to the same
    spin^c structures on the two pieces.
    """
    if c.gradings is None:
        raise MissingGradings("both factors need refined gradings")
    if survivors is None:
        survivors = _reduce(c, _largest_arrow)
    return {g: normalize_spinc(c.gradings[g]) for g in survivors}


def homology(c: BoxComplex,
             choose: Optional[Callable[[List[Tuple]], Tuple]] = None) -> PairingReport:
    """Cancel arrows until none remain; survivors keep their original names.

    By default the arrow with the largest :func:`cancellation_key` pair is
    cancelled first.  A different ``choose`` changes which representatives
    survive, never how many.
    """
    if c.square_defects():
        raise NotAComplex("the differential does not square to zero")
    survivors = _reduce(c, choose or _largest_arrow)
    report = PairingReport(survivors)
    if c.gradings is not None:
        report.spinc_classes = spinc_partition(c, survivors)
        report.relative_gradings = relative_gradings(c, survivors)
        report.notes.append("relative gradings compare generators with equal restrictions "
                            "to both pieces")
    return report


def pair_bounded(d1: TypeDStructure, d2: TypeDStructure, graded: bool = True) -> BoxComplex:
    """Box tensor of two type D structures, one turned into type A.

    The bounded one stays type D.  The other is converted with paths
    truncated at ``3 L + 3`` edges, where ``L`` is the edge count of the
    bounded factor; no longer operation can pair with it.
    """
    if is_bounded(d2):
        a_side, d_side = d1, d2
    elif is_bounded(d1):
        a_side, d_side = d2, d1
    else:
        raise UnboundedTypeD("neither factor is bounded")
    a = from_type_d(a_side, max_length=3 * len(d_side.edges) + 3)
    if not graded:
        return box_tensor(a, d_side)
    return box_tensor(assign_gradings_a(a, a.names[0]), assign_gradings(d_side, d_side.names[0]))


# A framing for which the complements of the unknot and thin torus knots of
# small genus are bounded, so every slope has a bounded partner.
ORACLE_FRAMING = -1


def filling_class_dimensions(c: FilteredComplex, p: int, q: int = 1, framing: int = ORACLE_FRAMING) -> List[int]:
    """Sorted per-spin^c dimensions of the ``p/q`` filling of a knot complement.

    ``c`` is a simplified knot Floer complex.  The complement with the given
    framing is paired with the solid torus whose meridian, measured in that
    framing, has slope ``(p - framing q)/q``.
    """
    knot = knot_complement_type_d(c, framing)
    filling = curve_to_type_d(line(q, p - framing * q))
    return homology(pair_bounded(knot, filling)).class_dimensions()
