"""First homology of a knot complement in S^3 glued to the twisted I-bundle
over the Klein bottle, via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

__all__ = [
    "GluingMatrix",
    "AbelianGroup",
    "smith_normal_form",
    "abelian_group_from_relations",
    "h1_presentation",
    "h1_of_gluing",
    "order_formula",
    "twist_orbit",
    "orbit_representative",
    "classify_cyclic_slope2",
    "PROTOTYPE",
]


@dataclass(frozen=True)
class GluingMatrix:
    """The matrix ``[[q, r], [p, s]]`` of the induced map on boundary homology.

    ``phi0 -> q lambda + p mu`` and ``phi1 -> r lambda + s mu``.
    """

    q: int
    r: int
    p: int
    s: int

    @property
    def determinant(self) -> int:
        return self.q * self.s - self.r * self.p

    @property
    def is_gluing(self) -> bool:
        return abs(self.determinant) == 1

    @property
    def slope(self) -> Tuple[int, int]:
        return (self.p, self.q)

    def normalized(self) -> "GluingMatrix":
        """Orientation-reversing form: determinant -1 (negates phi1 if needed)."""
        if self.determinant == 1:
            return GluingMatrix(self.q, -self.r, self.p, -self.s)
        return self

    def rows(self) -> List[List[int]]:
        return [[self.q, self.r], [self.p, self.s]]

    def __str__(self) -> str:
        return f"[[{self.q},{self.r}],[{self.p},{self.s}]]"


@dataclass(frozen=True)
class AbelianGroup:
    factors: Tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError("each invariant factor must divide the next")
        if any(f <= 1 for f in self.factors):
            raise ValueError("invariant factors must exceed 1")

    @property
    def order(self) -> int:
        """Order of the group, or 0 when it is infinite."""
        if self.free_rank:
            return 0
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) + self.free_rank <= 1

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " ⊕ ".join(parts) if parts else "0"


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith normal form (non-negative, each dividing the next)."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    k = a[i][t] // a[t][t]
                    a[i] = [x - k * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    k = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= k * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done:
                # Enforce divisibility of the remaining block by the pivot.
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                       if a[i][j] % a[t][t]]
                if not bad:
                    break
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (min(rows, cols) - len(diag))


def abelian_group_from_relations(relations: Sequence[Sequence[int]], generators: int) -> AbelianGroup:
    """The group with ``generators`` generators and the given relation rows."""
    diag = smith_normal_form(relations) if relations else []
    factors = tuple(d for d in diag if d > 1)
    free = generators - sum(1 for d in diag if d != 0)
    return AbelianGroup(factors, free)


def h1_presentation(p: int, s: int) -> AbelianGroup:
    """``<mu, x | 2p mu = 0, 2x = s mu>``."""
    return abelian_group_from_relations([[2 * p, 0], [-s, 2]], 2)


def h1_of_gluing(m: GluingMatrix) -> AbelianGroup:
    return h1_presentation(m.p, m.s)


def order_formula(p_slope: int, d: int, torsion_order: int) -> int:
    """``|H1| = 4 d |H| |p|``; zero flags a filling with positive first Betti number."""
    return 4 * d * torsion_order * abs(p_slope)


def twist_orbit(m: GluingMatrix, n: int) -> GluingMatrix:
    """Pre-compose with ``n`` Dehn twists along ``phi1``."""
    return GluingMatrix(m.q, m.r + n * m.q, m.p, m.s + n * m.p)


def orbit_representative(m: GluingMatrix) -> GluingMatrix:
    """The orbit element with ``-|p| < s <= 0`` (the matrix itself when ``p = 0``)."""
    if m.p == 0:
        return m
    step = abs(m.p)
    n = -((m.s + step - 1) // step) if m.p > 0 else (m.s + step - 1) // step
    rep = twist_orbit(m, n)
    assert -step < rep.s <= 0
    return rep


PROTOTYPE = GluingMatrix(1, 0, 2, -1)


def classify_cyclic_slope2(bound: int, denominators: Sequence[int] = (1,)) -> List[GluingMatrix]:
    """Twist-orbit representatives of cyclic order-8 gluings with ``|p| = 2``.

    Matrices have entries in ``[-bound, bound]``, are put in orientation
    reversing form, and have ``q`` in ``denominators``.
    """
    reps = set()
    for q in denominators:
        if abs(q) > bound:
            continue
        for p in (-2, 2):
            if abs(p) > bound:
                continue
            for r in range(-bound, bound + 1):
                for s in range(-bound, bound + 1):
                    m = GluingMatrix(q, r, p, s)
                    if not m.is_gluing:
                        continue
                    m = m.normalized()
                    g = h1_of_gluing(m)
                    if g.is_cyclic and g.order == 8:
                        reps.add(orbit_representative(m))
    return sorted(reps, key=lambda m: (m.p, m.q, m.r, m.s))
