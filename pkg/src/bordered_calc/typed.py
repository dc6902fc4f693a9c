"""Type D structures over the torus algebra, stored as decorated graphs.

A term ``rho_I (x) y`` in ``delta^1 x`` is an edge ``x -> y`` labelled by the
chord ``rho_I``.  An edge labelled by an idempotent is an identity-coefficient
edge (written ``e`` in files) and is removed by :func:`edge_reduce`.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .algebra import (AlgebraElement, ChordSequence, algebra_multiply, grading_of,
                      idempotent, parse_element)
from .grading import (CENTRAL, CosetGrading, GradingElement, IDENTITY, coset_equal,
                      cyclic_generator, inverse, multiply, rational_power)

__all__ = [
    "TypeDStructure",
    "GradedTypeD",
    "Diagnostic",
    "TypeDError",
    "DisconnectedGraph",
    "ParseError",
    "parse_type_d",
    "format_type_d",
    "to_dot",
    "validate",
    "is_bounded",
    "edge_reduce",
    "delta_k",
    "assign_gradings",
    "grading_violations",
    "is_isomorphic",
]

log = logging.getLogger(__name__)

Edge = Tuple[str, str, AlgebraElement]


class TypeDError(ValueError):
    pass


class DisconnectedGraph(TypeDError):
    pass


class ParseError(TypeDError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class TypeDStructure:
    generators: Tuple[Tuple[str, int], ...]
    edges: Tuple[Edge, ...] = ()
    spinc_tag: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(i)) for n, i in self.generators))
        object.__setattr__(self, "edges", tuple(self.edges))
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise TypeDError("duplicate generator names")
        known = set(names)
        for s, t, _ in self.edges:
            if s not in known or t not in known:
                raise TypeDError(f"edge {s}->{t} uses an unknown generator")

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.generators]

    def idem(self, name: str) -> int:
        return dict(self.generators)[name]

    def out_edges(self, name: str) -> List[Edge]:
        return [e for e in self.edges if e[0] == name]

    def valence(self, name: str) -> int:
        return sum((s == name) + (t == name) for s, t, _ in self.edges)

    def is_loop_type(self) -> bool:
        return all(self.valence(n) <= 2 for n in self.names)

    def has_identity_edges(self) -> bool:
        return any(label.is_idempotent for _, _, label in self.edges)

    def __len__(self) -> int:
        return len(self.generators)


def _edge_token(label: AlgebraElement) -> str:
    return "e" if label.is_idempotent else label.value


def parse_type_d(text: str) -> TypeDStructure:
    """Read the line format ``generator``/``edge``/``spinc``; ``#`` starts a comment."""
    gens: List[Tuple[str, int]] = []
    raw_edges: List[Tuple[str, str, str, int]] = []
    tag = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "generator" and len(parts) == 3 and parts[2] in ("i0", "i1"):
            gens.append((parts[1], 0 if parts[2] == "i0" else 1))
        elif head == "edge" and len(parts) == 4:
            raw_edges.append((parts[1], parts[2], parts[3], lineno))
        elif head == "spinc" and len(parts) == 2:
            tag = parts[1]
        else:
            raise ParseError(f"cannot read {line!r}", lineno)
    idem = dict(gens)
    counts: Counter = Counter()
    for s, t, token, lineno in raw_edges:
        if s not in idem or t not in idem:
            raise ParseError(f"edge {s}->{t} uses an unknown generator", lineno)
        if token == "e":
            label = idempotent(idem[s])
        else:
            try:
                label = parse_element(token)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if not label.is_chord:
                raise ParseError(f"edge label {token!r} is not a chord or 'e'", lineno)
        counts[(s, t, label)] += 1
    edges = []
    for key, n in counts.items():
        if n % 2 == 0:
            log.warning("parallel edges %s cancel over F2", key)
        else:
            if n > 1:
                log.warning("parallel edges %s reduced mod 2", key)
            edges.append(key)
    return TypeDStructure(tuple(gens), tuple(edges), tag)


def format_type_d(d: TypeDStructure) -> str:
    lines = []
    if d.spinc_tag:
        lines.append(f"spinc {d.spinc_tag}")
    lines += [f"generator {n} i{i}" for n, i in d.generators]
    lines += [f"edge {s} {t} {_edge_token(l)}" for s, t, l in d.edges]
    return "\n".join(lines) + "\n"


def to_dot(d: TypeDStructure, name: str = "CFD") -> str:
    """Graphviz source: filled dots for iota0 generators, open circles for iota1."""
    out = [f'digraph "{name}" {{']
    for n, i in d.generators:
        style = "style=filled fillcolor=black" if i == 0 else "style=solid"
        out.append(f'  "{n}" [shape=circle width=0.15 label="" xlabel="{n}" {style}];')
    for s, t, label in d.edges:
        text = "" if label.is_idempotent else label.digits
        out.append(f'  "{s}" -> "{t}" [label="{text}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def validate(d: TypeDStructure) -> List[Diagnostic]:
    """Idempotent typing violations and witnesses of ``d^2 != 0``."""
    diags: List[Diagnostic] = []
    idem = dict(d.generators)
    for s, t, label in d.edges:
        if label.is_idempotent:
            if idem[s] != idem[t] or label.left != idem[s]:
                diags.append(Diagnostic("typing", f"identity edge {s}->{t} joins different idempotents"))
        elif label.left != idem[s] or label.right != idem[t]:
            diags.append(Diagnostic(
                "typing", f"edge {s}->{t} labelled {label} needs i{label.left}->i{label.right}, "
                          f"got i{idem[s]}->i{idem[t]}"))
    if diags:
        return diags
    for x in d.names:
        square: Counter = Counter()
        for _, y, a in d.out_edges(x):
            for _, z, b in d.out_edges(y):
                ab = algebra_multiply(a, b)
                if ab is not AlgebraElement.ZERO:
                    square[(ab, z)] += 1
        for (ab, z), n in sorted(square.items(), key=lambda kv: (kv[0][1], kv[0][0].value)):
            if n % 2:
                diags.append(Diagnostic("d-squared", f"{ab} (x) {z} survives in d^2({x})"))
    return diags


def is_bounded(d: TypeDStructure) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(d.names)
    g.add_edges_from((s, t) for s, t, _ in d.edges)
    return nx.is_directed_acyclic_graph(g)


def _toggle(edges: Dict[Tuple[str, str, AlgebraElement], None], key) -> None:
    if key in edges:
        del edges[key]
    else:
        edges[key] = None


def edge_reduce(d: TypeDStructure) -> TypeDStructure:
    """Cancel identity-coefficient edges until none remain.

    Cancelling ``x -> y`` deletes both generators and adds the zig-zag
    ``w -a-> y <- x -b-> z`` as an edge ``w -ab-> z`` over F2.
    """
    gens = list(d.generators)
    edges: Dict[Edge, None] = dict.fromkeys(d.edges)
    while True:
        candidates = sorted((s, t) for s, t, l in edges if l.is_idempotent and s != t)
        if not candidates:
            break
        x, y = candidates[0]
        into_y = [(w, a) for w, t, a in edges if t == y and w not in (x, y)]
        from_x = [(z, b) for s, z, b in edges if s == x and z not in (x, y)]
        edges = {e: None for e in edges if not ({e[0], e[1]} & {x, y})}
        for w, a in into_y:
            for z, b in from_x:
                ab = algebra_multiply(a, b)
                if ab is not AlgebraElement.ZERO:
                    _toggle(edges, (w, z, ab))
        gens = [(n, i) for n, i in gens if n not in (x, y)]
    return TypeDStructure(tuple(gens), tuple(edges), d.spinc_tag)


def delta_k(d: TypeDStructure, x: str, k: int) -> List[Tuple[tuple, str]]:
    """Length-``k`` directed paths from ``x`` with their coefficient sequences, mod 2.

    Sequences made only of chords are returned as :class:`ChordSequence`;
    a sequence through an identity edge is returned as a plain tuple.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    frontier: Counter = Counter({((), x): 1})
    out_by = defaultdict(list)
    for s, t, l in d.edges:
        out_by[s].append((t, l))
    for _ in range(k):
        nxt: Counter = Counter()
        for (seq, y), n in frontier.items():
            for z, label in out_by[y]:
                nxt[(seq + (label,), z)] += n
        frontier = Counter({key: n % 2 for key, n in nxt.items() if n % 2})
    result = []
    for (seq, y) in sorted(frontier, key=lambda kv: ([c.value for c in kv[0]], kv[1])):
        if all(c.is_chord for c in seq):
            seq = ChordSequence(seq)
        result.append((seq, y))
    return result


@dataclass(frozen=True)
class GradedTypeD:
    structure: TypeDStructure
    base_generator: str
    gradings: Dict[str, GradingElement]
    indeterminacy: Optional[GradingElement]
    closure_element: Optional[GradingElement] = None

    def coset(self, name: str) -> CosetGrading:
        return CosetGrading(self.gradings[name], None, self.indeterminacy)


def _edge_step(label: AlgebraElement) -> GradingElement:
    """``gr(y) = step * gr(x)`` for an edge ``x -> y``."""
    return multiply(inverse(grading_of(label)), inverse(CENTRAL))


def _dfs_tree(names: Sequence[str], edges: Sequence[Edge], base: str,
              idem: Optional[Dict[str, int]] = None):
    """DFS over the underlying undirected graph.

    Neighbours sharing the current idempotent are visited first, then by name.
    """
    idem = idem or {}
    adj = defaultdict(list)
    for idx, (s, t, l) in enumerate(edges):
        adj[s].append((idem.get(t) != idem.get(s), t, l.value, 0, idx))
        adj[t].append((idem.get(t) != idem.get(s), s, l.value, 1, idx))
    for v in adj.values():
        v.sort()
    order, tree = [base], []
    seen = {base}
    stack = [(base, iter(adj[base]))]
    while stack:
        node, it = stack[-1]
        for _, nb, _, _, idx in it:
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
                tree.append(idx)
                stack.append((nb, iter(adj[nb])))
                break
        else:
            stack.pop()
    if len(seen) != len(names):
        missing = sorted(set(names) - seen)
        raise DisconnectedGraph(f"generators {missing} are not connected to {base}")
    return order, tree


def _propagate(d: TypeDStructure, base: str):
    order, tree = _dfs_tree(d.names, d.edges, base, dict(d.generators))
    gr = {base: IDENTITY}
    pending = [d.edges[i] for i in tree]
    # Tree edges come out in discovery order, so one pass suffices.
    for s, t, label in pending:
        step = _edge_step(label)
        if s in gr and t not in gr:
            gr[t] = multiply(step, gr[s])
        elif t in gr and s not in gr:
            gr[s] = multiply(inverse(step), gr[t])
    tree_set = set(tree)
    closures = []
    for idx, (s, t, label) in enumerate(d.edges):
        if idx in tree_set:
            continue
        expected = multiply(_edge_step(label), gr[s])
        closures.append(multiply(inverse(expected), gr[t]))
    return gr, closures


def _integral_roots(h: GradingElement) -> List[GradingElement]:
    """``h^(1/n)`` for every ``n >= 1`` keeping the root in the integral group."""
    # A root h^(1/n) is integral only if n divides every doubled component.
    bound = max(abs(2 * x) for x in h.as_tuple())
    roots = []
    for n in range(1, int(bound) + 1):
        r = rational_power(h, Fraction(1, n))
        if r.is_integral():
            roots.append(r)
    return roots


def assign_gradings(d: TypeDStructure, base: str,
                    expected_classes: Optional[int] = None,
                    class_count: Optional[Callable[[GradingElement], int]] = None) -> GradedTypeD:
    """Refined gradings relative to ``base`` and the indeterminacy ``h``.

    Every edge ``x -rho-> y`` imposes ``lambda^-1 gr(x) = gr(rho) gr(y)`` in
    ``G / <h>``.  When ``expected_classes`` and ``class_count`` are given,
    the generator is chosen among the integral roots of the closure element
    as the one whose spin^c class count matches.
    """
    if base not in d.names:
        raise TypeDError(f"unknown base generator {base!r}")
    gr, closures = _propagate(d, base)
    closure = cyclic_generator(closures)
    h = closure
    if closure is not None and expected_classes is not None and class_count is not None:
        matches = [r for r in _integral_roots(closure) if class_count(r) == expected_classes]
        if len(matches) != 1:
            raise TypeDError(
                f"{len(matches)} divisors of {closure} give {expected_classes} spin^c classes")
        h = matches[0]
    return GradedTypeD(d, base, {n: gr[n] for n in d.names}, h, closure)


def grading_violations(g: GradedTypeD) -> List[Diagnostic]:
    """Edges whose grading relation fails modulo the indeterminacy."""
    out = []
    for s, t, label in g.structure.edges:
        expected = multiply(_edge_step(label), g.gradings[s])
        lhs = CosetGrading(expected, None, g.indeterminacy)
        rhs = CosetGrading(g.gradings[t], None, g.indeterminacy)
        if not coset_equal(lhs, rhs):
            out.append(Diagnostic("grading", f"edge {s}->{t} ({label}) breaks the grading relation"))
    return out


def _as_multigraph(d: TypeDStructure) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    for n, i in d.generators:
        g.add_node(n, idem=i)
    for s, t, label in d.edges:
        g.add_edge(s, t, label=label.value)
    return g


def _edge_match(e1, e2) -> bool:
    return sorted(v["label"] for v in e1.values()) == sorted(v["label"] for v in e2.values())


def is_isomorphic(d1: TypeDStructure, d2: TypeDStructure) -> bool:
    """Decorated-graph isomorphism preserving idempotents and edge labels."""
    return nx.is_isomorphic(_as_multigraph(d1), _as_multigraph(d2),
                            node_match=lambda a, b: a["idem"] == b["idem"],
                            edge_match=_edge_match)
