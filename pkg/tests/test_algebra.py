import itertools

import pytest
from hypothesis import given, strategies as st

from bordered_calc.algebra import (CHORDS, AlgebraElement as A, ChordSequence, IllTypedSequence,
                                   ZeroHasNoGrading, algebra_multiply, grading_of, parse_element)
from bordered_calc.grading import multiply, parse_grading

elements = st.sampled_from(list(A))


@given(elements, elements, elements)
def test_associative(a, b, c):
    assert algebra_multiply(algebra_multiply(a, b), c) is algebra_multiply(a, algebra_multiply(b, c))


@given(elements)
def test_zero_absorbs(a):
    assert algebra_multiply(a, A.ZERO) is A.ZERO is algebra_multiply(A.ZERO, a)


def test_idempotents_sum_to_unit():
    for a in CHORDS:
        left = A.IOTA0 if a.left == 0 else A.IOTA1
        right = A.IOTA0 if a.right == 0 else A.IOTA1
        assert algebra_multiply(left, a) is a is algebra_multiply(a, right)
        other = A.IOTA1 if left is A.IOTA0 else A.IOTA0
        assert algebra_multiply(other, a) is A.ZERO


def test_relations_vanish():
    assert algebra_multiply(A.RHO2, A.RHO1) is A.ZERO
    assert algebra_multiply(A.RHO3, A.RHO2) is A.ZERO
    assert algebra_multiply(A.RHO1, A.RHO3) is A.ZERO


@given(elements, elements)
def test_grading_is_multiplicative(a, b):
    ab = algebra_multiply(a, b)
    if ab is A.ZERO:
        return
    assert grading_of(ab) == multiply(grading_of(a), grading_of(b))


def test_base_gradings():
    assert grading_of(A.RHO1) == parse_grading("(-1/2;1/2,-1/2)")
    assert grading_of(A.RHO2) == parse_grading("(-1/2;1/2,1/2)")
    assert grading_of(A.RHO3) == parse_grading("(-1/2;-1/2,1/2)")
    assert grading_of(A.RHO123) == parse_grading("(-1/2;1/2,1/2)")
    with pytest.raises(ZeroHasNoGrading):
        grading_of(A.ZERO)


def test_chord_sequences():
    seq = ChordSequence([A.RHO3, A.RHO2, A.RHO1])
    assert (seq.left, seq.right) == (0, 1)
    with pytest.raises(IllTypedSequence):
        ChordSequence([A.RHO1, A.RHO1])
    with pytest.raises(IllTypedSequence):
        ChordSequence([A.IOTA0])


def test_parse_names():
    for a in A:
        assert parse_element(str(a)) is a
    with pytest.raises(ValueError):
        parse_element("r13")


def test_nine_basis_elements_with_zero():
    assert len(list(A)) == 9
    nonzero = [(a, b) for a, b in itertools.product(CHORDS, CHORDS)
               if algebra_multiply(a, b) is not A.ZERO]
    assert len(nonzero) == 4
