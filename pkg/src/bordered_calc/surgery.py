"""Knot Floer surgery calculus for filtered complexes over F2[U, U^-1].

A generator ``x`` of the U^0 copy sits at filtration ``(i, j) = (0, A(x))``.
A differential ``(a, b, n)`` means ``U^n b`` appears in ``d a``; it must not
raise either filtration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .algebra import AlgebraElement
from .typed import TypeDStructure

__all__ = [
    "FilteredComplex",
    "SurgeryData",
    "SurgeryError",
    "InvalidParameter",
    "NotStaircase",
    "NotLargeSurgery",
    "NotCoprime",
    "staircase",
    "box_summand",
    "direct_sum",
    "f2_rank",
    "a_hat_dimension",
    "a_hat_dimensions",
    "a_plus_bottom_grading",
    "v_h",
    "v_closed_form",
    "unknot_data",
    "d_lens",
    "d_lens_indexed",
    "d_surgery",
    "grading_gap_obstruction",
    "large_surgery_profile",
    "knot_complement_type_d",
    "NotSimplified",
]


class SurgeryError(ValueError):
    pass


class InvalidParameter(SurgeryError):
    pass


class NotStaircase(SurgeryError):
    pass


class NotLargeSurgery(SurgeryError):
    pass


class NotCoprime(SurgeryError):
    pass


class NotSimplified(SurgeryError):
    pass


@dataclass(frozen=True)
class FilteredComplex:
    generators: Tuple[Tuple[str, int, int], ...]
    differentials: Tuple[Tuple[str, str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        object.__setattr__(self, "differentials", tuple(tuple(e) for e in self.differentials))
        alex = {n: a for n, a, _ in self.generators}
        mas = {n: m for n, _, m in self.generators}
        for a, b, n in self.differentials:
            if n < 0 or alex[b] - n > alex[a]:
                raise SurgeryError(f"arrow {a}->U^{n} {b} raises the filtration")
            if mas[b] - 2 * n != mas[a] - 1:
                raise SurgeryError(f"arrow {a}->U^{n} {b} does not lower the Maslov grading by one")
        if self._square_defects():
            raise SurgeryError("the differential does not square to zero")
        if sorted(alex.values()) != sorted(-a for a in alex.values()):
            raise SurgeryError("Alexander gradings are not symmetric")

    def _square_defects(self):
        out: Dict[str, List[Tuple[str, int]]] = {}
        for a, b, n in self.differentials:
            out.setdefault(a, []).append((b, n))
        bad = []
        for g, _, _ in self.generators:
            hits: Dict[Tuple[str, int], int] = {}
            for b, n in out.get(g, []):
                for c, m in out.get(b, []):
                    hits[(c, n + m)] = hits.get((c, n + m), 0) + 1
            bad += [(g, k) for k, v in hits.items() if v % 2]
        return bad

    @property
    def alexander(self) -> Dict[str, int]:
        return {n: a for n, a, _ in self.generators}

    @property
    def maslov(self) -> Dict[str, int]:
        return {n: m for n, _, m in self.generators}

    @property
    def genus(self) -> int:
        return max((a for _, a, _ in self.generators), default=0)


@dataclass(frozen=True)
class SurgeryData:
    V: Dict[int, int]
    H: Dict[int, int]
    genus: int

    def v(self, s: int) -> int:
        if s in self.V:
            return self.V[s]
        # V_s = 0 above the genus and V_s = V_{-s} - s below its negative.
        return 0 if s >= self.genus else -s

    def h(self, s: int) -> int:
        return self.v(-s)


def staircase(k: int, mirror: bool = False) -> FilteredComplex:
    """The thin staircase complex of the torus knot ``T(2, k)``."""
    if k < 3 or k % 2 == 0:
        raise InvalidParameter("k must be an odd integer >= 3")
    n = (k - 1) // 2
    gens = [(f"x{i}", n - i, -i) for i in range(2 * n + 1)]
    arrows = []
    for m in range(n):
        odd = f"x{2 * m + 1}"
        arrows.append((odd, f"x{2 * m}", 1))
        arrows.append((odd, f"x{2 * m + 2}", 0))
    if mirror:
        gens = [(name, -a, -m) for name, a, m in gens]
        arrows = [(b, a, u) for a, b, u in arrows]
    return FilteredComplex(tuple(gens), tuple(arrows))


def box_summand(prefix: str = "b", alexander: int = 0, maslov: int = 0) -> FilteredComplex:
    """A 1x1 acyclic square whose lower-left corner sits at Alexander grading ``alexander``."""
    a, b, c, d = (f"{prefix}{i}" for i in range(4))
    gens = ((a, alexander, maslov), (b, alexander + 1, maslov + 1),
            (c, alexander - 1, maslov - 1), (d, alexander, maslov))
    arrows = ((a, b, 1), (a, c, 0), (b, d, 0), (c, d, 1))
    return FilteredComplex(gens, arrows)


def direct_sum(*parts: FilteredComplex) -> FilteredComplex:
    gens = tuple(g for p in parts for g in p.generators)
    arrows = tuple(e for p in parts for e in p.differentials)
    return FilteredComplex(gens, arrows)


def f2_rank(rows: Sequence[int]) -> int:
    """Rank over F2 of a matrix whose rows are given as integer bit masks."""
    pivots: Dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                rank += 1
                break
    return rank


def _homology_dimension(gens: Sequence, arrows: Sequence[Tuple[int, int]]) -> int:
    rows: Dict[int, int] = {}
    for s, t in arrows:
        rows[s] = rows.get(s, 0) ^ (1 << t)
    return len(gens) - 2 * f2_rank(list(rows.values()))


def a_hat_dimension(c: FilteredComplex, s: int) -> int:
    """Dimension of the homology of ``C{max(i, j - s) = 0}``."""
    names = [n for n, _, _ in c.generators]
    idx = {n: k for k, n in enumerate(names)}
    alex = c.alexander
    # Each generator contributes exactly one U-translate to the subquotient.
    shift = {n: max(0, alex[n] - s) for n in names}
    arrows = [(idx[a], idx[b]) for a, b, u in c.differentials if shift[a] + u == shift[b]]
    return _homology_dimension(names, arrows)


def a_hat_dimensions(c: FilteredComplex) -> Dict[int, int]:
    g = c.genus
    return {s: a_hat_dimension(c, s) for s in range(-g, g + 1)}


def a_plus_bottom_grading(c: FilteredComplex, s: int, depth: int = 12) -> int:
    """Lowest grading of nonzero homology of a truncation of ``A+_s``.

    Uses the translates ``U^n x`` with ``-depth <= n <= max(0, A(x) - s)``.
    This is a brute-force reference for :func:`v_h`; it equals ``-2 V_s``
    when the complex has no reduced homology in ``A+_s`` (staircases).
    """
    alex, mas = c.alexander, c.maslov
    cells = []
    for n, _, _ in c.generators:
        top = max(0, alex[n] - s)
        cells += [(n, u) for u in range(-depth, top + 1)]
    idx = {cell: k for k, cell in enumerate(cells)}
    by_grading: Dict[int, List[int]] = {}
    for (n, u), k in idx.items():
        by_grading.setdefault(mas[n] - 2 * u, []).append(k)
    rows: Dict[int, int] = {}
    for a, b, u in c.differentials:
        for (n, w), k in idx.items():
            if n == a and (b, w + u) in idx:
                rows[k] = rows.get(k, 0) ^ (1 << idx[(b, w + u)])

    def rank_out(gr):
        return f2_rank([rows.get(k, 0) for k in by_grading.get(gr, [])])

    # Stay away from the truncation edge, where spurious classes appear.
    ceiling = min(mas.values()) + 2 * depth - 2
    for gr in sorted(by_grading):
        if gr > ceiling:
            break
        dim = len(by_grading[gr]) - rank_out(gr) - rank_out(gr + 1)
        if dim > 0:
            return gr
    raise SurgeryError("no homology below the truncation ceiling")


def _staircase_corners(c: FilteredComplex) -> List[str]:
    out_deg: Dict[str, int] = {n: 0 for n, _, _ in c.generators}
    kinds: Dict[str, set] = {n: set() for n, _, _ in c.generators}
    alex = c.alexander
    for a, b, u in c.differentials:
        out_deg[a] += 1
        if u > 0 and alex[b] - u == alex[a]:
            kinds[a].add("horizontal")
        elif u == 0:
            kinds[a].add("vertical")
        else:
            raise NotStaircase(f"arrow {a}->{b} is neither horizontal nor vertical")
    corners = [n for n, d in out_deg.items() if d == 0]
    steps = [n for n, d in out_deg.items() if d > 0]
    if len(corners) != len(steps) + 1:
        raise NotStaircase("a staircase has one more corner than step")
    for n in steps:
        if out_deg[n] != 2 or kinds[n] != {"horizontal", "vertical"}:
            raise NotStaircase(f"{n} needs one horizontal and one vertical arrow")
    return corners


def v_h(c: FilteredComplex) -> SurgeryData:
    """V_s and H_s = V_{-s} from the corners of a staircase.

    ``V_s = min over corners x of (max(0, A(x) - s) - M(x) / 2)``.
    """
    corners = _staircase_corners(c)
    alex, mas = c.alexander, c.maslov
    g = c.genus

    def v(s: int) -> int:
        return min(max(0, alex[x] - s) - Fraction(mas[x], 2) for x in corners)

    V = {}
    for s in range(-g, g + 1):
        val = v(s)
        if val.denominator != 1 or val < 0:
            raise NotStaircase("corner gradings are not normalized to d(S^3) = 0")
        V[s] = int(val)
    return SurgeryData(V, {s: V[-s] for s in V}, g)


def v_closed_form(n: int, s: int) -> int:
    """``V_s`` of ``T(2, 2n + 1)``."""
    return max(0, math.ceil(Fraction(n - s, 2))) if s >= 0 else v_closed_form(n, -s) - s


def unknot_data() -> SurgeryData:
    return SurgeryData({0: 0}, {0: 0}, 0)


@lru_cache(maxsize=None)
def _d_lens(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    r = p % q
    return (Fraction(-1, 4) + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
            - _d_lens(q, r, i % q))


def d_lens_indexed(p: int, q: int) -> List[Fraction]:
    """Correction terms of ``L(p, q)`` in the index order of the recursion.

    ``L(p, 1)`` is oriented as +p surgery on the unknot.
    """
    if p < 1 or q < 1 or (p > 1 and q >= p) or (p == 1 and q != 1):
        raise InvalidParameter("need 0 < q < p, or p = q = 1")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    return [_d_lens(p, q, i) for i in range(p)]


def d_lens(p: int, q: int) -> List[Fraction]:
    """Sorted multiset of correction terms of ``L(p, q)``."""
    return sorted(d_lens_indexed(p, q))


def d_surgery(p: int, data: SurgeryData) -> Dict[int, Fraction]:
    """``d(S^3_p(K), [s]) = d(L(p, 1), [s]) - 2 max(V_s, H_{s - p})`` for residues s."""
    lens = d_lens_indexed(p, 1) if p > 1 else [Fraction(0)]
    return {s: lens[s] - 2 * max(data.v(s), data.h(s - p)) for s in range(p)}


def grading_gap_obstruction(values: Sequence, gap) -> bool:
    """True when no two values differ by exactly ``gap``."""
    gap = abs(Fraction(gap))
    vals = [Fraction(v) for v in values]
    return not any(abs(a - b) == gap for k, a in enumerate(vals) for b in vals[k + 1:])


def large_surgery_profile(c: FilteredComplex, p: int) -> Dict[int, int]:
    """Per-residue dimensions of ``HF(S^3_p(K))`` for ``p >= 2 g``."""
    if p < 2 * c.genus or p < 1:
        raise NotLargeSurgery(f"p = {p} is below 2g = {2 * c.genus}")
    out = {}
    for r in range(p):
        # Residue r is represented by the s with |s| <= p/2; A_s and A_-s agree.
        s = r if r <= p // 2 else r - p
        out[r] = a_hat_dimension(c, s)
    return out


def knot_complement_type_d(c: FilteredComplex, framing: int) -> TypeDStructure:
    """Type D structure of the knot complement with the given framing.

    ``c`` must be horizontally and vertically simplified: every arrow is
    either vertical (``U^0``) or horizontal (preserves ``j``).  Each vertical
    arrow of length ``l`` becomes a chain ``rho1, rho23, ..., rho123`` through
    ``l`` iota1 generators, each horizontal arrow a chain ``rho3, rho23, ...,
    rho2``, and the unstable chain joins the generators of vertical and
    horizontal homology according to ``framing - 2 tau``.
    """
    R = AlgebraElement
    alex = c.alexander
    gens = [(name, 0) for name, _, _ in c.generators]
    edges = []
    vertical_ends, horizontal_ends = set(), set()
    for idx, (a, b, u) in enumerate(c.differentials):
        if u == 0:
            length = alex[a] - alex[b]
            chain = [f"k{idx}_{j}" for j in range(1, length + 1)]
            gens += [(n, 1) for n in chain]
            edges.append((a, chain[0], R.RHO1))
            edges += [(chain[j + 1], chain[j], R.RHO23) for j in range(length - 1)]
            edges.append((b, chain[-1], R.RHO123))
            vertical_ends |= {a, b}
        elif alex[b] - u == alex[a]:
            chain = [f"l{idx}_{j}" for j in range(1, u + 1)]
            gens += [(n, 1) for n in chain]
            edges.append((a, chain[0], R.RHO3))
            edges += [(chain[j], chain[j + 1], R.RHO23) for j in range(u - 1)]
            edges.append((chain[-1], b, R.RHO2))
            horizontal_ends |= {a, b}
        else:
            raise NotSimplified(f"arrow {a}->U^{u} {b} is neither vertical nor horizontal")
    names = [n for n, _, _ in c.generators]
    xi = [n for n in names if n not in vertical_ends]
    eta = [n for n in names if n not in horizontal_ends]
    if len(xi) != 1 or len(eta) != 1:
        raise NotSimplified("vertical and horizontal homology must each have rank one")
    xi0, eta0 = xi[0], eta[0]
    tau = alex[xi0]
    m = framing - 2 * tau
    chain = [f"m{j}" for j in range(1, abs(m) + 1)]
    gens += [(n, 1) for n in chain]
    if m == 0:
        edges.append((xi0, eta0, R.RHO12))
    elif m < 0:
        edges.append((xi0, chain[0], R.RHO1))
        edges += [(chain[j + 1], chain[j], R.RHO23) for j in range(len(chain) - 1)]
        edges.append((eta0, chain[-1], R.RHO3))
    else:
        edges.append((xi0, chain[0], R.RHO123))
        edges += [(chain[j], chain[j + 1], R.RHO23) for j in range(len(chain) - 1)]
        edges.append((chain[-1], eta0, R.RHO2))
    return TypeDStructure(tuple(gens), tuple(edges))
