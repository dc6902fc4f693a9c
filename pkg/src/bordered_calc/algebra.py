"""The torus algebra: eight basis elements over F2 plus an explicit zero."""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from .grading import GradingElement, IDENTITY, multiply

__all__ = [
    "AlgebraElement",
    "ChordSequence",
    "AlgebraError",
    "ZeroHasNoGrading",
    "IllTypedSequence",
    "CHORDS",
    "algebra_multiply",
    "grading_of",
    "parse_element",
    "idempotent",
]


class AlgebraError(ValueError):
    pass


class ZeroHasNoGrading(AlgebraError):
    pass


class IllTypedSequence(AlgebraError):
    pass


class AlgebraElement(Enum):
    IOTA0 = "i0"
    IOTA1 = "i1"
    RHO1 = "r1"
    RHO2 = "r2"
    RHO3 = "r3"
    RHO12 = "r12"
    RHO23 = "r23"
    RHO123 = "r123"
    ZERO = "0"

    @property
    def is_idempotent(self) -> bool:
        return self in (AlgebraElement.IOTA0, AlgebraElement.IOTA1)

    @property
    def is_chord(self) -> bool:
        return self.value.startswith("r")

    @property
    def digits(self) -> str:
        """The chord's subscript, e.g. ``"12"`` for rho12."""
        return self.value[1:] if self.is_chord else ""

    @property
    def left(self) -> int:
        return _ENDS[self][0]

    @property
    def right(self) -> int:
        return _ENDS[self][1]

    def __str__(self) -> str:
        return self.value


A = AlgebraElement

# (left idempotent, right idempotent) of every nonzero basis element.
_ENDS = {
    A.IOTA0: (0, 0),
    A.IOTA1: (1, 1),
    A.RHO1: (0, 1),
    A.RHO2: (1, 0),
    A.RHO3: (0, 1),
    A.RHO12: (0, 0),
    A.RHO23: (1, 1),
    A.RHO123: (0, 1),
}

CHORDS = (A.RHO1, A.RHO2, A.RHO3, A.RHO12, A.RHO23, A.RHO123)

_CHORD_PRODUCTS = {
    (A.RHO1, A.RHO2): A.RHO12,
    (A.RHO2, A.RHO3): A.RHO23,
    (A.RHO1, A.RHO23): A.RHO123,
    (A.RHO12, A.RHO3): A.RHO123,
}

_BY_DIGITS = {c.digits: c for c in CHORDS}


def idempotent(i: int) -> AlgebraElement:
    return A.IOTA0 if i == 0 else A.IOTA1


def chord_from_digits(digits: str) -> AlgebraElement:
    try:
        return _BY_DIGITS[digits]
    except KeyError:
        raise AlgebraError(f"no chord with subscript {digits!r}") from None


def parse_element(name: str) -> AlgebraElement:
    try:
        return AlgebraElement(name)
    except ValueError:
        raise AlgebraError(f"unknown algebra element {name!r}") from None


def algebra_multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a is A.ZERO or b is A.ZERO:
        return A.ZERO
    if a.right != b.left:
        return A.ZERO
    if a.is_idempotent:
        return b
    if b.is_idempotent:
        return a
    return _CHORD_PRODUCTS.get((a, b), A.ZERO)


_BASE_GRADINGS = {
    A.RHO1: GradingElement("-1/2", "1/2", "-1/2"),
    A.RHO2: GradingElement("-1/2", "1/2", "1/2"),
    A.RHO3: GradingElement("-1/2", "-1/2", "1/2"),
}


def grading_of(a: AlgebraElement) -> GradingElement:
    if a is A.ZERO:
        raise ZeroHasNoGrading("the zero element carries no grading")
    if a.is_idempotent:
        return IDENTITY
    out = IDENTITY
    for d in a.digits:
        out = multiply(out, _BASE_GRADINGS[chord_from_digits(d)])
    return out


class ChordSequence(tuple):
    """An ordered, composable tuple of chords (idempotents are not allowed)."""

    def __new__(cls, chords: Iterable[AlgebraElement] = ()):
        chords = tuple(chords)
        for c in chords:
            if not isinstance(c, AlgebraElement) or not c.is_chord:
                raise IllTypedSequence(f"{c!r} is not a chord")
        for a, b in zip(chords, chords[1:]):
            if a.right != b.left:
                raise IllTypedSequence(f"{a} and {b} are not composable")
        return super().__new__(cls, chords)

    @property
    def left(self) -> int:
        return self[0].left

    @property
    def right(self) -> int:
        return self[-1].right

    def grading(self) -> GradingElement:
        out = IDENTITY
        for c in self:
            out = multiply(out, grading_of(c))
        return out

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self) + ")"


def sequence(names: Sequence[str]) -> ChordSequence:
    return ChordSequence(parse_element(n) for n in names)
