"""Piecewise-linear immersed curves in the marked torus.

The torus is the unit square with opposite sides identified.  The vertical
line ``x = 0`` is alpha, the horizontal line ``y = 0`` is beta, and the
marked point sits at ``(1 - eps, 1 - eps)``.  A component is stored as a
path in the plane together with the integer translation that closes it, so
wrapping around the torus needs no special casing.

An arc between two consecutive crossings with alpha or beta lies in one
cell.  Its label is the set of cell corners it cuts off from the marked
point; the six possible corner sets are the six chords of the torus algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import AlgebraElement
from .typea import NotLoopType
from .typed import TypeDStructure

__all__ = [
    "Point",
    "CurveComponent",
    "PLCurve",
    "CurveError",
    "NotReduced",
    "NotNormalPosition",
    "UnsupportedMove",
    "Twist",
    "Reflect",
    "EPSILON",
    "parse_curve",
    "format_curve",
    "line",
    "type_d_to_curve",
    "curve_to_type_d",
    "crossings",
    "apply_mapping_class",
    "to_svg",
    "Crossing",
    "KnotCurveSummary",
    "NoEssentialComponent",
    "InvalidSlope",
    "pegboard_summary",
    "filling_dimensions",
    "segment_crossings",
    "lift_heights",
    "loose_crossings",
]

Point = Tuple[Fraction, Fraction]
GRID = 20
EPSILON = Fraction(1, 100)

A = AlgebraElement


class CurveError(ValueError):
    pass


class NotReduced(CurveError):
    pass


class NotNormalPosition(CurveError):
    pass


class UnsupportedMove(CurveError):
    pass


def _pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


@dataclass(frozen=True)
class CurveComponent:
    vertices: Tuple[Point, ...]
    wrap: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_pt(*v) for v in self.vertices))
        object.__setattr__(self, "wrap", (int(self.wrap[0]), int(self.wrap[1])))
        if len(self.vertices) < 1:
            raise CurveError("a component needs at least one vertex")

    def closed_path(self) -> List[Point]:
        """Vertices followed by the first vertex translated by the wrap."""
        first = self.vertices[0]
        return list(self.vertices) + [(first[0] + self.wrap[0], first[1] + self.wrap[1])]

    def segments(self):
        path = self.closed_path()
        return list(zip(path, path[1:]))


@dataclass(frozen=True)
class PLCurve:
    components: Tuple[CurveComponent, ...]
    epsilon: Fraction = EPSILON
    basepoint: Optional[Point] = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.basepoint is None:
            object.__setattr__(self, "basepoint", (1 - self.epsilon, 1 - self.epsilon))

    def validate(self) -> None:
        """Vertices must stay outside the eps-ball of every lift of the basepoint."""
        bx, by = self.basepoint
        eps2 = self.epsilon ** 2
        for comp in self.components:
            path = comp.closed_path()
            for (x, y) in comp.vertices:
                dx = (x - bx) - round(x - bx)
                dy = (y - by) - round(y - by)
                if dx * dx + dy * dy < eps2:
                    raise NotNormalPosition(f"vertex ({x}, {y}) is within eps of the basepoint")
            for p, q in zip(path, path[1:]):
                if p == q:
                    raise CurveError("consecutive vertices coincide")


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_curve(c: PLCurve) -> str:
    lines = []
    for comp in c.components:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in comp.vertices)
        wrap = f" wrap {comp.wrap[0]},{comp.wrap[1]}" if comp.wrap != (0, 0) else ""
        lines.append(f"component {pts}{wrap}")
    return "\n".join(lines) + "\n"


def parse_curve(text: str) -> PLCurve:
    """Read ``component x1,y1 x2,y2 ... [wrap a,b]`` lines."""
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "component":
            raise CurveError(f"line {lineno}: expected 'component'")
        wrap = (0, 0)
        if "wrap" in parts:
            k = parts.index("wrap")
            a, b = parts[k + 1].split(",")
            wrap = (int(a), int(b))
            parts = parts[:k]
        pts = []
        for token in parts[1:]:
            x, y = token.split(",")
            pts.append(_pt(Fraction(x), Fraction(y)))
        comps.append(CurveComponent(tuple(pts), wrap))
    return PLCurve(tuple(comps))


def line(a: int, b: int, offset: Fraction = Fraction(1, 2)) -> PLCurve:
    """Closed straight curve in the class ``b * [horizontal] + a * [vertical]``.

    The slope is ``a / b``.  The offset places the line as far as possible
    from the lifts of the basepoint.
    """
    if math.gcd(a, b) != 1:
        raise CurveError("slope must be a primitive vector")
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    eps = EPSILON
    # Points (x, y) on the line satisfy a*x - b*y = k; lifts of the basepoint
    # give k in (a - b)(1 - eps) + Z, so stay half a unit away from those.
    k = (a - b) * (1 - eps) + Fraction(offset)
    if b != 0:
        start = _pt(0, -k / b)
    else:
        start = _pt(k / a, 0)
    end = (start[0] + b, start[1] + a)
    mid = ((start[0] + end[0]) / 2, (start[1] + end[1]) / 2)
    return PLCurve((CurveComponent((start, mid), (b, a)),))


# ---------------------------------------------------------------------------
# Arc dictionary

_CORNERS = {"BL": (0, 0), "BR": (1, 0), "TR": (1, 1), "TL": (0, 1)}

# corner set cut off from the basepoint -> (chord, side of the source generator)
_DICTIONARY = {
    frozenset({"BR"}): (A.RHO1, "R"),
    frozenset({"BL"}): (A.RHO2, "B"),
    frozenset({"TL"}): (A.RHO3, "L"),
    frozenset({"BR", "BL"}): (A.RHO12, "R"),
    frozenset({"BL", "TL"}): (A.RHO23, "B"),
    frozenset({"BR", "BL", "TL"}): (A.RHO123, "R"),
}
_BY_CHORD = {chord: (corners, side) for corners, (chord, side) in _DICTIONARY.items()}
_OTHER_SIDE = {
    A.RHO1: "B", A.RHO2: "L", A.RHO3: "T", A.RHO12: "L", A.RHO23: "T", A.RHO123: "T",
}
_OPPOSITE = {"L": "R", "R": "L", "B": "T", "T": "B"}


def _side_point(side: str, t: Fraction) -> Point:
    return {"L": (Fraction(0), t), "R": (Fraction(1), t),
            "B": (t, Fraction(0)), "T": (t, Fraction(1))}[side]


def _placements(d: TypeDStructure) -> Dict[str, Fraction]:
    """Coordinates along alpha (iota0) or beta (iota1), spread over [1/4, 3/4].

    Positions snap to the 1/20 grid whenever that keeps them distinct.
    """
    pos = {}
    for idem in (0, 1):
        names = [n for n, i in d.generators if i == idem]
        k = len(names)
        raw = [Fraction(1, 2) if k == 1 else Fraction(1, 4) + Fraction(j, 2 * (k - 1))
               for j in range(k)]
        snapped = [Fraction(round(x * GRID), GRID) for x in raw]
        use = snapped if len(set(snapped)) == k else raw
        pos.update(zip(names, use))
    return pos


def type_d_to_curve(d: TypeDStructure) -> PLCurve:
    """Realize a reduced loop-type decorated graph as an immersed multicurve.

    Every generator must meet exactly one edge on each side of its axis.  An
    isolated generator is drawn as a circle parallel to its axis.
    """
    if d.has_identity_edges():
        raise NotReduced("identity edges must be reduced first")
    if not d.is_loop_type():
        raise NotLoopType("every generator must have valence at most two")
    pos = _placements(d)
    idem = dict(d.generators)
    # For each generator and side, the unique incident edge.
    incident: Dict[Tuple[str, str], int] = {}
    for idx, (s, t, label) in enumerate(d.edges):
        _, src_side = _BY_CHORD[label]
        for name, side in ((s, src_side), (t, _OTHER_SIDE[label])):
            if (name, side) in incident:
                raise NotLoopType(f"{name} has two edges on side {side}")
            incident[(name, side)] = idx
    components = []
    used = set()
    for name in d.names:
        if any(n == name for n, _ in incident) or name in used:
            continue
        used.add(name)
        t = pos[name]
        if idem[name] == 0:
            components.append(CurveComponent(((Fraction(0), t), (Fraction(1, 2), t)), (1, 0)))
        else:
            components.append(CurveComponent(((t, Fraction(0)), (t, Fraction(1, 2))), (0, 1)))
    for name in d.names:
        if name in used:
            continue
        sides = [s for (n, s) in incident if n == name]
        if len(sides) != 2 or _OPPOSITE[sides[0]] != sides[1]:
            raise NotLoopType(f"{name} does not have one edge on each side of its axis")
        components.append(_trace(d, name, incident, pos, used))
    return PLCurve(tuple(components))


def _trace(d, start, incident, pos, used) -> CurveComponent:
    idem = dict(d.generators)
    # Leave the start through the cell to the right of alpha / above beta.
    side = "L" if idem[start] == 0 else "B"
    here = _side_point(side, pos[start])
    verts = [here]
    name = start
    while True:
        used.add(name)
        s, t, label = d.edges[incident[(name, side)]]
        corners, src_side = _BY_CHORD[label]
        at_source = name == s and side == src_side
        other, other_side = (t, _OTHER_SIDE[label]) if at_source else (s, src_side)
        local_here = _side_point(side, pos[name])
        corner = (here[0] - local_here[0], here[1] - local_here[1])
        local_there = _side_point(other_side, pos[other])
        there = (corner[0] + local_there[0], corner[1] + local_there[1])
        name, side, here = other, _OPPOSITE[other_side], there
        if name == start and side == ("L" if idem[start] == 0 else "B"):
            break
        verts.append(here)
    wrap = (here[0] - verts[0][0], here[1] - verts[0][1])
    return CurveComponent(tuple(verts), (int(wrap[0]), int(wrap[1])))


# ---------------------------------------------------------------------------
# Reading a curve back


@dataclass(frozen=True)
class Crossing:
    kind: str          # "alpha" (x integer) or "beta" (y integer)
    point: Point       # lifted position
    segment: int       # index of the segment on which it occurs


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _vertex(comp: CurveComponent, i: int) -> Point:
    """The ``i``-th vertex of the periodic lifted path."""
    n = len(comp.vertices)
    q, r = divmod(i, n)
    x, y = comp.vertices[r]
    return (x + q * comp.wrap[0], y + q * comp.wrap[1])


def crossings(comp: CurveComponent) -> List[Crossing]:
    """Transverse crossings with alpha and beta, in order along the component."""
    out: List[Crossing] = []
    for k in range(len(comp.vertices)):
        (x0, y0), (x1, y1) = _vertex(comp, k), _vertex(comp, k + 1)
        if (x0, y0) == (x1, y1):
            raise CurveError("consecutive vertices coincide")
        after = _vertex(comp, k + 2)
        hits = []
        for axis, a0, a1, kind in ((0, x0, x1, "alpha"), (1, y0, y1, "beta")):
            if a0 == a1:
                if a0.denominator == 1:
                    raise NotNormalPosition("a segment runs along alpha or beta")
                continue
            lo, hi = sorted((a0, a1))
            for m in range(math.floor(lo) + 1, math.ceil(hi)):
                hits.append(((Fraction(m) - a0) / (a1 - a0), kind))
            if a1.denominator == 1:
                # A vertex on a line counts once, as the end of this segment.
                if (a0 - a1) * (after[axis] - a1) >= 0:
                    raise NotNormalPosition("the curve touches alpha or beta without crossing")
                hits.append((Fraction(1), kind))
        hits.sort()
        for j, (t, kind) in enumerate(hits):
            if j + 1 < len(hits) and hits[j + 1][0] == t:
                raise NotNormalPosition("the curve passes through a corner of the square")
            out.append(Crossing(kind, (x0 + t * (x1 - x0), y0 + t * (y1 - y0)), k))
    return out


def _inside(pt: Point, poly: Sequence[Point]) -> bool:
    """Even-odd point in polygon test."""
    x, y = pt
    inside = False
    for (x0, y0), (x1, y1) in zip(poly, list(poly[1:]) + [poly[0]]):
        if (y0 > y) != (y1 > y):
            xi = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if xi > x:
                inside = not inside
    return inside


_CCW = ["BL", "BR", "TR", "TL"]


def _side_of(p: Point) -> str:
    x, y = p
    if x == 0:
        return "L"
    if x == 1:
        return "R"
    if y == 0:
        return "B"
    return "T"


def _boundary_param(p: Point) -> Fraction:
    """Position along the square boundary, counter-clockwise from BL in [0, 4)."""
    x, y = p
    if y == 0:
        return x
    if x == 1:
        return 1 + y
    if y == 1:
        return 3 - x
    return 4 - y


def _walk(start: Point, end: Point, ccw: bool) -> List[str]:
    """Corners met walking the boundary from ``start`` to ``end``."""
    s, e = _boundary_param(start), _boundary_param(end)
    if not ccw:
        s, e = 4 - s, 4 - e
        order = {"BL": 0, "TL": 1, "TR": 2, "BR": 3}
    else:
        order = {"BL": 0, "BR": 1, "TR": 2, "TL": 3}
    span = (e - s) % 4
    out = []
    for corner, c in sorted(order.items(), key=lambda kv: (kv[1] - s) % 4):
        if 0 < (c - s) % 4 < span:
            out.append(corner)
    return out


def _classify(points: List[Point], basepoint: Point):
    """Corner set of a cell arc that is cut off from the basepoint."""
    start, end = points[0], points[-1]
    ccw_corners = _walk(end, start, True)
    poly = points + [_CORNERS_PT[c] for c in ccw_corners]
    if _inside(basepoint, poly):
        corners = _walk(end, start, False)
    else:
        corners = ccw_corners
    return frozenset(corners)


_CORNERS_PT = {k: (Fraction(v[0]), Fraction(v[1])) for k, v in _CORNERS.items()}


def curve_to_type_d(c: PLCurve, names: str = "xy") -> TypeDStructure:
    """Read the decorated graph of a curve in normal position.

    Alpha crossings become iota0 generators and beta crossings iota1
    generators.  The curve must be in minimal position: an arc that leaves
    and returns to the same side without cutting off a corner is a bigon,
    and the arc-by-arc reading would then miss differentials.
    """
    bx, by = c.basepoint
    gens: List[Tuple[str, int]] = []
    edges = []
    seen_points = {}
    counter = {0: 0, 1: 0}
    for comp in c.components:
        cross = crossings(comp)
        if not cross:
            raise NotNormalPosition("a component misses both alpha and beta")
        ids = []
        for cr in cross:
            idem = 0 if cr.kind == "alpha" else 1
            key = (idem, _frac_part(cr.point[1] if idem == 0 else cr.point[0]))
            if key in seen_points:
                raise NotNormalPosition("two crossings share a point of alpha or beta")
            counter[idem] += 1
            name = f"{names[idem]}{counter[idem]}"
            seen_points[key] = name
            gens.append((name, idem))
            ids.append(name)
        m = len(cross)
        n = len(comp.vertices)
        for k in range(m):
            a = cross[k]
            if k + 1 < m:
                b_point, b_seg = cross[k + 1].point, cross[k + 1].segment
            else:
                b = cross[0]
                b_point = (b.point[0] + comp.wrap[0], b.point[1] + comp.wrap[1])
                b_seg = b.segment + n
            inner = [_vertex(comp, j) for j in range(a.segment + 1, b_seg + 1)]
            inner = [p for p in inner if p != a.point and p != b_point]
            pts = [a.point] + inner + [b_point]
            probe = ((pts[0][0] + pts[1][0]) / 2, (pts[0][1] + pts[1][1]) / 2)
            cell = (math.floor(probe[0]), math.floor(probe[1]))
            local = [(x - cell[0], y - cell[1]) for x, y in pts]
            for x, y in local:
                if not (0 <= x <= 1 and 0 <= y <= 1):
                    raise NotNormalPosition("an arc leaves its cell")
            base_local = (bx - math.floor(bx), by - math.floor(by))
            corners = _classify(local, base_local)
            s_side, e_side = _side_of(local[0]), _side_of(local[-1])
            if not corners:
                raise NotNormalPosition("the curve and alpha or beta bound a bigon; "
                                        "it is not in minimal position")
            entry = _DICTIONARY.get(corners)
            if entry is None or {s_side, e_side} != {entry[1], _OTHER_SIDE[entry[0]]}:
                raise NotNormalPosition(f"arc with corners {sorted(corners)} is not in the dictionary")
            chord, src_side = entry
            if s_side == src_side:
                edges.append((ids[k], ids[(k + 1) % m], chord))
            else:
                edges.append((ids[(k + 1) % m], ids[k], chord))
    return TypeDStructure(tuple(gens), tuple(edges))


# ---------------------------------------------------------------------------
# Mapping classes


@dataclass(frozen=True)
class Twist:
    """``count`` Dehn twists along the primitive direction ``(dx, dy)``."""

    direction: Tuple[int, int]
    count: int = 1


@dataclass(frozen=True)
class Reflect:
    axis: str   # "y=1/2", "y=x" or "y=-x"


def _linear(move) -> Tuple[Tuple[int, int], Tuple[int, int], Tuple[Fraction, Fraction]]:
    if isinstance(move, Twist):
        u, v = move.direction
        if math.gcd(u, v) != 1:
            raise UnsupportedMove("twist direction must be primitive")
        n = move.count
        # w -> w + n * det(u, w) * u
        return ((1 - n * u * v, n * u * u), (-n * v * v, 1 + n * u * v)), (0, 0)
    if isinstance(move, Reflect):
        if move.axis == "y=1/2":
            return ((1, 0), (0, -1)), (Fraction(0), Fraction(1))
        if move.axis == "y=x":
            return ((0, 1), (1, 0)), (Fraction(0), Fraction(0))
        if move.axis == "y=-x":
            return ((0, -1), (-1, 0)), (Fraction(0), Fraction(0))
        raise UnsupportedMove(f"unknown reflection axis {move.axis!r}")
    raise UnsupportedMove(f"unsupported move {move!r}")


def apply_mapping_class(c: PLCurve, moves: Iterable) -> PLCurve:
    """Apply twists and reflections, then slide everything so the basepoint
    returns to the top-right corner region along a path inside the cell."""
    comps = list(c.components)
    for move in moves:
        (m00, m01), (m10, m11) = _linear(move)[0]
        off = _linear(move)[1]

        def f(p):
            x, y = p
            return (m00 * x + m01 * y + off[0], m10 * x + m11 * y + off[1])

        bx, by = f(c.basepoint)
        target = c.basepoint
        slide = (target[0] - _frac_part(bx), target[1] - _frac_part(by))
        new = []
        for comp in comps:
            verts = tuple((x + slide[0], y + slide[1]) for x, y in map(f, comp.vertices))
            wx, wy = comp.wrap
            wrap = (m00 * wx + m01 * wy, m10 * wx + m11 * wy)
            new.append(CurveComponent(verts, wrap))
        comps = new
    return PLCurve(tuple(comps), c.epsilon, c.basepoint)


def to_svg(c: PLCurve, size: int = 300) -> str:
    """Draw the curve in the unit square with the basepoint; layout is approximate."""
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="-0.05 -0.05 1.1 1.1">',
           '<rect x="0" y="0" width="1" height="1" fill="none" stroke="gray" stroke-width="0.005"/>']
    bx, by = c.basepoint
    out.append(f'<circle cx="{float(bx)}" cy="{float(1 - by)}" r="0.015" fill="black"/>')
    for comp in c.components:
        for (x0, y0), (x1, y1) in comp.segments():
            cx, cy = math.floor(min(x0, x1)), math.floor(min(y0, y1))
            out.append(
                f'<line x1="{float(x0 - cx)}" y1="{float(1 - (y0 - cy))}" '
                f'x2="{float(x1 - cx)}" y2="{float(1 - (y1 - cy))}" stroke="blue" stroke-width="0.006"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"



# ---------------------------------------------------------------------------
# Pegboard statistics in the cylinder cover
#
# Horizontal is the longitude and vertical the meridian, so the cylinder cover
# unwraps the vertical direction.  Lifts of the basepoint ("pegs") sit just
# left of alpha at heights k - eps.  Up to homotopy a lifted component is its
# cyclic word of alpha crossings, each recorded by the gap between pegs that
# it passes through and its horizontal direction.


class NoEssentialComponent(CurveError):
    pass


class InvalidSlope(CurveError):
    pass


@dataclass(frozen=True)
class KnotCurveSummary:
    """Pegboard data of a knot complement curve: ``n[i]`` counts vertical
    segments at height ``i``."""

    genus: int
    tau: int
    epsilon: int
    n: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        n = {int(i): int(v) for i, v in dict(self.n).items() if v}
        object.__setattr__(self, "n", n)
        if self.genus < 0 or abs(self.tau) > self.genus:
            raise CurveError("need 0 <= |tau| <= genus")
        if self.epsilon not in (-1, 0, 1):
            raise CurveError("epsilon must be -1, 0 or 1")
        if self.epsilon == 0 and self.tau != 0:
            raise CurveError("epsilon = 0 forces tau = 0")
        if any(v < 0 for v in n.values()):
            raise CurveError("vertical segment counts are non-negative")
        if any(n.get(-i, 0) != v for i, v in n.items()):
            raise CurveError("vertical segment counts must satisfy n[-i] = n[i]")
        if any(abs(i) >= self.genus for i in n):
            raise CurveError("vertical segments only occur at heights |i| < genus")

    @property
    def essential_slope(self) -> int:
        return 2 * self.tau - self.epsilon

    def count(self, i: int) -> int:
        return self.n.get(i, 0)

    @classmethod
    def l_space(cls, genus: int, positive: bool = True) -> "KnotCurveSummary":
        """Summary of an L-space knot complement (or its mirror)."""
        sign = 1 if positive else -1
        if genus == 0:
            return cls(0, 0, 0, {})
        return cls(genus, sign * genus, sign, {i: 1 for i in range(1 - genus, genus)})


def _alpha_word(comp: CurveComponent, eps: Fraction) -> List[Tuple[int, int, int]]:
    """``(gap, direction, column)`` for each alpha crossing, in order."""
    word = []
    for cr in crossings(comp):
        if cr.kind != "alpha":
            continue
        (x0, _), (x1, _) = _vertex(comp, cr.segment), _vertex(comp, cr.segment + 1)
        direction = 1 if x1 > x0 else -1
        word.append((math.floor(cr.point[1] + eps), direction, int(cr.point[0])))
    return word


def _reduce_word(word):
    """Cancel consecutive crossings of one gap in opposite directions."""
    out = list(word)
    changed = True
    while changed and out:
        changed = False
        for k in range(len(out)):
            a, b = out[k], out[(k + 1) % len(out)]
            if len(out) > 1 and a[0] == b[0] and a[1] == -b[1]:
                if k + 1 < len(out):
                    del out[k:k + 2]
                else:
                    del out[k]
                    del out[0]
                changed = True
                break
    return out


def _contacts(word):
    """Pegs touched by the tight curve, as ``(column, peg)``, in order.

    Columns are those of one period; the cyclic successor of the last contact
    lies one wrap further on.
    """
    out = []
    m = len(word)
    for k in range(m):
        (g1, d1, x1), (g2, d2, _) = word[k], word[(k + 1) % m]
        if d1 == d2:
            continue
        step = 1 if g2 > g1 else -1
        # Peg k sits between gaps k - 1 and k.
        first = g1 + 1 if step > 0 else g1
        last = g2 if step > 0 else g2 + 1
        out += [(x1, peg) for peg in range(first, last + step, step)]
    return out


def pegboard_summary(c: PLCurve) -> KnotCurveSummary:
    """Genus, tau, epsilon and vertical segment counts of the tight representative.

    ``c`` is the curve of a knot complement in the zero framing: longitude
    horizontal, meridian vertical.
    """
    words = []
    for comp in c.components:
        if comp.wrap[1] != 0:
            raise NoEssentialComponent("a component is not closed in the cylinder cover")
        word = _reduce_word(_alpha_word(comp, c.epsilon))
        if comp.wrap[0] < 0:
            word = [(g, -d, x) for g, d, x in reversed(word)]
        words.append((comp, word))
    essential = [(comp, w) for comp, w in words if comp.wrap[0] != 0]
    if len(essential) != 1 or abs(essential[0][0].wrap[0]) != 1 or essential[0][0].wrap[1] != 0:
        raise NoEssentialComponent("expected exactly one component homologous to the longitude")
    ess_comp, ess_word = essential[0]
    all_contacts = [(comp, _contacts(w)) for comp, w in words]
    pegs = [peg for _, cs in all_contacts for _, peg in cs]
    if not pegs:
        if not ess_word:
            raise NoEssentialComponent("the essential component misses alpha")
        return KnotCurveSummary(0, 0, 0, {})
    if (min(pegs) + max(pegs)) % 2 == 0:
        raise CurveError("peg contacts are not symmetric about a gap")
    center = (min(pegs) + max(pegs) - 1) // 2
    n: Dict[int, int] = {}
    for comp, cs in all_contacts:
        m = len(cs)
        for k in range(m):
            (xa, pa), (xb, pb) = cs[k], cs[(k + 1) % m]
            if k + 1 == m:
                xb += 1 if comp.wrap[0] else 0
            if xa != xb or pa == pb:
                continue
            for gap in range(min(pa, pb), max(pa, pb)):
                n[gap - center] = n.get(gap - center, 0) + 1
    genus = max(abs(Fraction(2 * (peg - center) - 1, 2)) for peg in pegs) + Fraction(1, 2)
    ess = _contacts(ess_word)
    if not ess:
        return KnotCurveSummary(int(genus), 0, 0, n)
    # The first wrap is the peg reached by the slanted (column-changing) piece.
    m = len(ess)
    for k in range(m):
        (xa, _), (xb, pb) = ess[k], ess[(k + 1) % m]
        if k + 1 == m:
            xb += 1
        if xa != xb:
            after = ess[(k + 2) % m][1]
            break
    else:
        raise NoEssentialComponent("the essential component never goes around the cylinder")
    height = Fraction(2 * (pb - center) - 1, 2)
    eps = 1 if after < pb else -1
    tau = int(height + Fraction(eps, 2))
    return KnotCurveSummary(int(genus), tau, eps, n)


def _lift_offset(q: int) -> Fraction:
    """A generic height for the lowest filling lift: avoids pegs and segment ends."""
    return Fraction(1, 4 * q)


def lift_heights(p: int, q: int, j: int, low: int, high: int) -> List[Fraction]:
    """Heights at which lift ``j`` of the slope ``p/q`` line crosses alpha,
    restricted to ``[low, high]``."""
    c = _lift_offset(q) + j
    out = []
    step = Fraction(p, q)
    if p == 0:
        return [c] if low <= c <= high else []
    m_lo = math.floor((low - c) / step) if step > 0 else math.floor((high - c) / step)
    m_hi = math.ceil((high - c) / step) if step > 0 else math.ceil((low - c) / step)
    for m in range(m_lo, m_hi + 1):
        h = c + m * step
        if low <= h <= high:
            out.append(h)
    return out


def _check_slope(p: int, q: int) -> None:
    if q < 1 or math.gcd(p, q) != 1 or p == 0:
        raise InvalidSlope("slope must be p/q with q >= 1, gcd(p, q) = 1 and p != 0")


def segment_crossings(p: int, q: int, height: int) -> List[int]:
    """Crossings of each filling lift with a vertical segment at ``height``."""
    _check_slope(p, q)
    lo, hi = Fraction(2 * height - 1, 2), Fraction(2 * height + 1, 2)
    return [sum(1 for h in lift_heights(p, q, j, lo, hi) if lo < h < hi) for j in range(abs(p))]


def filling_dimensions(s: KnotCurveSummary, p: int, q: int = 1) -> Dict[int, int]:
    """Minimal intersection of the tight curve with each lift of the filling line.

    Lifts are labelled ``0 .. |p| - 1`` from the lowest.  A lift meets the
    vertical segments at the heights where it crosses the peg column, and
    meets the slanted piece of the essential curve, which rises by the
    essential slope over one period, where the two lines cross.
    """
    _check_slope(p, q)
    slope = Fraction(p, q)
    e = Fraction(s.essential_slope)
    reach = s.genus + abs(e) + abs(slope) + 2
    out = {}
    for j in range(abs(p)):
        total = 0
        for h in lift_heights(p, q, j, -reach, reach):
            total += s.count(math.floor(h + Fraction(1, 2)))
            if e != slope:
                # The line leaving height h meets the slanted piece from
                # (0, -e/2) to (1, e/2) at horizontal position x.
                x = (h + e / 2) / (e - slope)
                if 0 < x < 1:
                    total += 1
        out[j] = total
    return out


def loose_crossings(p: int, q: int, height: int) -> List[int]:
    """Crossings of each lift of a loose component parallel to the slope
    ``p/q`` line with a vertical segment at ``height``.

    The loose component is a thin closed loop around the line, so each of
    its two strands contributes the line's count.
    """
    return [2 * k for k in segment_crossings(p, q, height)]
