"""The refined grading group G, its rational extension, and cosets.

Elements are triples ``(j; p, q)``: ``j`` is the Maslov component and
``(p, q)`` the spin^c component.  The group law is twisted by the
determinant of the spin^c parts, so the group is not abelian.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "GradingElement",
    "CosetGrading",
    "GradingError",
    "NoRationalSolution",
    "AmbiguousNormalization",
    "MismatchedIndeterminacy",
    "NonCyclicIndeterminacy",
    "IDENTITY",
    "CENTRAL",
    "multiply",
    "inverse",
    "power",
    "rational_power",
    "product",
    "canonical_generator",
    "cyclic_generator",
    "normalize_spinc",
    "same_spinc",
    "coset_equal",
    "parse_grading",
    "format_rational",
    "rational_gcd",
    "in_integer_span",
]

INTEGRAL = "integral"
RATIONAL = "rational"


class GradingError(ValueError):
    """Base class for grading arithmetic failures."""


class NoRationalSolution(GradingError):
    pass


class AmbiguousNormalization(GradingError):
    pass


class MismatchedIndeterminacy(GradingError):
    pass


class NonCyclicIndeterminacy(GradingError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _is_half_integer(x: Fraction) -> bool:
    return (2 * x).denominator == 1


def format_rational(x) -> str:
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GradingElement:
    maslov: Fraction
    spinc_p: Fraction
    spinc_q: Fraction
    regime: str = INTEGRAL

    def __post_init__(self):
        object.__setattr__(self, "maslov", _q(self.maslov))
        object.__setattr__(self, "spinc_p", _q(self.spinc_p))
        object.__setattr__(self, "spinc_q", _q(self.spinc_q))
        if self.regime not in (INTEGRAL, RATIONAL):
            raise GradingError(f"unknown regime {self.regime!r}")
        if self.regime == INTEGRAL and not self.is_integral():
            raise GradingError(f"{self} is not an element of the integral group")

    def is_integral(self) -> bool:
        j, p, q = self.maslov, self.spinc_p, self.spinc_q
        return (_is_half_integer(j) and _is_half_integer(p) and _is_half_integer(q)
                and (p + q).denominator == 1)

    @property
    def spinc(self) -> tuple[Fraction, Fraction]:
        return (self.spinc_p, self.spinc_q)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.maslov, self.spinc_p, self.spinc_q)

    def is_identity(self) -> bool:
        return self.maslov == 0 and self.spinc_p == 0 and self.spinc_q == 0

    def __mul__(self, other: "GradingElement") -> "GradingElement":
        return multiply(self, other)

    def __str__(self) -> str:
        return "({};{},{})".format(*map(format_rational, self.as_tuple()))

    def __repr__(self) -> str:
        return f"GradingElement{self}"


def _make(j, p, q, regime: str) -> GradingElement:
    elt = GradingElement(j, p, q, RATIONAL)
    if regime == INTEGRAL and elt.is_integral():
        return GradingElement(j, p, q, INTEGRAL)
    return elt


def _joint_regime(*elts: GradingElement) -> str:
    return INTEGRAL if all(e.regime == INTEGRAL for e in elts) else RATIONAL


IDENTITY = GradingElement(0, 0, 0)
CENTRAL = GradingElement(1, 0, 0)


def multiply(a: GradingElement, b: GradingElement) -> GradingElement:
    twist = a.spinc_p * b.spinc_q - a.spinc_q * b.spinc_p
    return _make(a.maslov + b.maslov + twist,
                 a.spinc_p + b.spinc_p,
                 a.spinc_q + b.spinc_q,
                 _joint_regime(a, b))


def product(elts: Iterable[GradingElement]) -> GradingElement:
    out = IDENTITY
    for e in elts:
        out = multiply(out, e)
    return out


def inverse(a: GradingElement) -> GradingElement:
    return _make(-a.maslov, -a.spinc_p, -a.spinc_q, a.regime)


def rational_power(a: GradingElement, t) -> GradingElement:
    # Powers of one element have collinear spin^c parts, so the twist vanishes.
    t = _q(t)
    regime = a.regime if t.denominator == 1 else RATIONAL
    return _make(t * a.maslov, t * a.spinc_p, t * a.spinc_q, regime)


def power(a: GradingElement, n: int) -> GradingElement:
    if int(n) != n:
        raise GradingError("power expects an integer exponent")
    return rational_power(a, int(n))


_TRIPLE = re.compile(r"^\(\s*([^;]+?)\s*;\s*([^,]+?)\s*,\s*([^)]+?)\s*\)$")


def parse_grading(text: str) -> GradingElement:
    """Parse the ASCII form ``(j;p,q)``; rationals are written ``a/b``."""
    m = _TRIPLE.match(text.strip())
    if not m:
        raise GradingError(f"cannot parse grading {text!r}")
    j, p, q = (Fraction(s) for s in m.groups())
    return _make(j, p, q, INTEGRAL)


def rational_gcd(values: Iterable) -> Fraction:
    """Non-negative generator of the subgroup of Q generated by ``values``."""
    vals = [_q(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = math.gcd(g, int(v * den))
    return Fraction(g, den)


def _sign_key(vec: Sequence[Fraction]) -> int:
    # Sign of the first nonzero entry, reading spin^c before Maslov.
    for x in (vec[1], vec[2], vec[0]):
        if x != 0:
            return 1 if x > 0 else -1
    return 0


def canonical_generator(g: Optional[GradingElement]) -> Optional[GradingElement]:
    """Sign-normalized generator of the cyclic subgroup generated by ``g``.

    The spin^c part must be lexicographically positive; when it vanishes the
    Maslov component is made positive.  The identity yields ``None``.
    """
    if g is None or g.is_identity():
        return None
    return g if _sign_key(g.as_tuple()) > 0 else inverse(g)


def cyclic_generator(elements: Iterable[GradingElement]) -> Optional[GradingElement]:
    """Generator of the subgroup generated by pairwise commuting ``elements``.

    Every nonzero element must be a rational multiple of one direction in
    ``(j, p, q)`` space; otherwise the subgroup is not cyclic.
    """
    elts = [e for e in elements if not e.is_identity()]
    if not elts:
        return None
    direction = canonical_generator(elts[0]).as_tuple()
    pivot = next(i for i in (1, 2, 0) if direction[i] != 0)
    coeffs = []
    for e in elts:
        vec = e.as_tuple()
        c = vec[pivot] / direction[pivot]
        if any(vec[i] != c * direction[i] for i in range(3)):
            raise NonCyclicIndeterminacy(
                f"closure elements {elts[0]} and {e} do not generate a cyclic subgroup")
        coeffs.append(c)
    g = rational_gcd(coeffs)
    regime = _joint_regime(*elts)
    return canonical_generator(_make(*(g * x for x in direction), regime))


def _solve2(a: Sequence[Fraction], b: Sequence[Fraction], t: Sequence[Fraction]):
    """Solve ``x*a + y*b = t`` in Q^n when ``a`` and ``b`` are independent."""
    n = len(t)
    for i in range(n):
        for k in range(i + 1, n):
            det = a[i] * b[k] - a[k] * b[i]
            if det != 0:
                x = (t[i] * b[k] - t[k] * b[i]) / det
                y = (a[i] * t[k] - a[k] * t[i]) / det
                if all(x * a[r] + y * b[r] == t[r] for r in range(n)):
                    return x, y
                return None
    raise ZeroDivisionError("dependent vectors")


def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    vs = [v for v in vectors if any(x != 0 for x in v)]
    if not vs:
        return 0
    if len(vs) == 1:
        return 1
    a, b = vs[0], vs[1]
    n = len(a)
    for i in range(n):
        for k in range(i + 1, n):
            if a[i] * b[k] - a[k] * b[i] != 0:
                return 2
    return 1


def in_integer_span(target: Sequence, gens: Sequence[Sequence]) -> bool:
    """Whether ``target`` lies in the Z-span of at most two vectors of Q^n."""
    target = [_q(x) for x in target]
    gens = [[_q(x) for x in g] for g in gens if any(x != 0 for x in g)]
    if all(x == 0 for x in target):
        return True
    if not gens:
        return False
    if len(gens) > 2:
        raise GradingError("at most two generators are supported")
    if len(gens) == 2 and _rank(gens) == 2:
        sol = _solve2(gens[0], gens[1], target)
        return sol is not None and all(s.denominator == 1 for s in sol)
    # Rank one: every generator is a rational multiple of gens[0].
    u = gens[0]
    pivot = next(i for i, x in enumerate(u) if x != 0)
    coeffs = [g[pivot] / u[pivot] for g in gens]
    step = rational_gcd(coeffs)
    c = target[pivot] / u[pivot]
    if any(target[i] != c * u[i] for i in range(len(u))):
        return False
    return (c / step).denominator == 1


@dataclass(frozen=True)
class CosetGrading:
    """A double coset ``<f> \\ rep / <h>``; either side may be absent."""

    representative: GradingElement
    left_indeterminacy: Optional[GradingElement] = None
    right_indeterminacy: Optional[GradingElement] = None

    def __post_init__(self):
        object.__setattr__(self, "left_indeterminacy",
                           canonical_generator(self.left_indeterminacy))
        object.__setattr__(self, "right_indeterminacy",
                           canonical_generator(self.right_indeterminacy))

    @property
    def f(self) -> GradingElement:
        return self.left_indeterminacy or IDENTITY

    @property
    def h(self) -> GradingElement:
        return self.right_indeterminacy or IDENTITY

    def __str__(self) -> str:
        parts = []
        if self.left_indeterminacy is not None:
            parts.append(f"<{self.left_indeterminacy}> ")
        parts.append(str(self.representative))
        if self.right_indeterminacy is not None:
            parts.append(f" <{self.right_indeterminacy}>")
        return "".join(parts)


def _check_shared(x: CosetGrading, y: CosetGrading) -> None:
    if (x.left_indeterminacy != y.left_indeterminacy
            or x.right_indeterminacy != y.right_indeterminacy):
        raise MismatchedIndeterminacy(f"{x} and {y} have different indeterminacy")


def same_spinc(x: CosetGrading, y: CosetGrading) -> bool:
    _check_shared(x, y)
    diff = (y.representative.spinc_p - x.representative.spinc_p,
            y.representative.spinc_q - x.representative.spinc_q)
    return in_integer_span(diff, [x.f.spinc, x.h.spinc])


def coset_equal(x: CosetGrading, y: CosetGrading) -> bool:
    """Whether ``f^a x h^b = y`` for some integers ``a`` and ``b``."""
    _check_shared(x, y)
    f, h, r = x.f, x.h, x.representative
    det = f.spinc_p * h.spinc_q - f.spinc_q * h.spinc_p
    if det != 0:
        diff = (y.representative.spinc_p - r.spinc_p, y.representative.spinc_q - r.spinc_q)
        a, b = _solve2(f.spinc, h.spinc, diff)
        if a.denominator != 1 or b.denominator != 1:
            return False
        return multiply(multiply(power(f, a), r), power(h, b)) == _as_regime(
            y.representative, r)
    # With collinear spin^c parts the action is affine in (a, b).
    fa = (f.maslov + f.spinc_p * r.spinc_q - f.spinc_q * r.spinc_p, f.spinc_p, f.spinc_q)
    hb = (h.maslov + r.spinc_p * h.spinc_q - r.spinc_q * h.spinc_p, h.spinc_p, h.spinc_q)
    diff = tuple(u - v for u, v in zip(y.representative.as_tuple(), r.as_tuple()))
    return in_integer_span(diff, [fa, hb])


def _as_regime(target: GradingElement, like: GradingElement) -> GradingElement:
    return _make(*target.as_tuple(), like.regime) if target.regime != like.regime else target


def normalize_spinc(g: CosetGrading) -> Fraction:
    """Maslov component of the coset representative with spin^c part (0, 0).

    Solves ``f^s * rep * h^t`` over the rationals.
    """
    f, h, rep = g.f, g.h, g.representative
    target = (-rep.spinc_p, -rep.spinc_q)

    def value(s, t) -> Fraction:
        out = multiply(multiply(rational_power(f, s), rep), rational_power(h, t))
        assert out.spinc_p == 0 and out.spinc_q == 0
        return out.maslov

    if _rank([f.spinc, h.spinc]) == 2:
        s, t = _solve2(f.spinc, h.spinc, target)
        return value(s, t)
    # Degenerate span: the Maslov value is affine along the solution set, so
    # it is well defined iff it agrees at a particular solution and at that
    # solution moved by each kernel direction.
    particular = _particular_solution(f.spinc, h.spinc, target)
    if particular is None:
        raise NoRationalSolution(f"spin^c part of {rep} is outside the span of f and h")
    s0, t0 = particular
    vals = {value(s0, t0)}
    for ks, kt in _kernel(f.spinc, h.spinc):
        vals.add(value(s0 + ks, t0 + kt))
    if len(vals) > 1:
        raise AmbiguousNormalization(f"normalization of {g} is not unique")
    return vals.pop()


def _particular_solution(u, w, target):
    if all(x == 0 for x in target):
        return Fraction(0), Fraction(0)
    for idx, vec in enumerate((u, w)):
        if any(x != 0 for x in vec):
            pivot = 0 if vec[0] != 0 else 1
            c = target[pivot] / vec[pivot]
            if all(target[k] == c * vec[k] for k in range(2)):
                return (c, Fraction(0)) if idx == 0 else (Fraction(0), c)
            return None
    return None


def _kernel(u, w):
    """Basis of ``{(s, t) : s*u + t*w = 0}`` for dependent ``u`` and ``w``."""
    one, zero = Fraction(1), Fraction(0)
    u_zero = all(x == 0 for x in u)
    w_zero = all(x == 0 for x in w)
    if u_zero and w_zero:
        return [(one, zero), (zero, one)]
    if u_zero:
        return [(one, zero)]
    if w_zero:
        return [(zero, one)]
    pivot = 0 if u[0] != 0 else 1
    return [(-w[pivot] / u[pivot], one)]
