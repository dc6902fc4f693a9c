import math
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from bordered_calc.catalog import load
from bordered_calc.gluing import (PROTOTYPE, AbelianGroup, GluingMatrix, abelian_group_from_relations,
                                  classify_cyclic_slope2, h1_of_gluing, h1_presentation,
                                  order_formula, orbit_representative, smith_normal_form,
                                  twist_orbit)

small = st.integers(-12, 12)
matrices = st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2)


def minors_oracle(m):
    """Invariant factors of a 2x2 integer matrix from gcds of its minors."""
    d1 = reduce(math.gcd, (abs(x) for row in m for x in row), 0)
    det = abs(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    if d1 == 0:
        return [0, 0]
    return [d1, det // d1]


@given(matrices)
def test_smith_normal_form_matches_minors(m):
    assert smith_normal_form(m) == minors_oracle(m)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_diagonal_divides(m):
    diag = smith_normal_form(m)
    nonzero = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert diag == sorted(nonzero) + [0] * (len(diag) - len(nonzero))


def test_group_text():
    assert str(h1_presentation(2, 1)) == "Z/8"
    assert str(h1_presentation(2, 0)) == "Z/2 ⊕ Z/4"
    assert str(h1_presentation(0, 1)) == "Z"
    assert str(abelian_group_from_relations([], 2)) == "Z^2"
    assert str(AbelianGroup(())) == "0"
    with pytest.raises(ValueError):
        AbelianGroup((4, 2))


@given(small, small)
def test_order_formula(p, s):
    g = h1_presentation(p, s)
    assert g.order == order_formula(p, 1, 1)


def test_prototype_is_the_catalog_gluing():
    assert load("gluing.prototype.slope2").payload == PROTOTYPE
    assert h1_of_gluing(PROTOTYPE).order == 8


@given(small, small, small, small, st.integers(-5, 5))
def test_twists_preserve_h1(q, r, p, s, n):
    m = GluingMatrix(q, r, p, s)
    assert twist_orbit(m, n).determinant == m.determinant
    assert h1_of_gluing(twist_orbit(m, n)).order == h1_of_gluing(m).order


@given(small, small, small.filter(bool), small)
def test_orbit_representative_range(q, r, p, s):
    rep = orbit_representative(GluingMatrix(q, r, p, s))
    assert -abs(p) < rep.s <= 0
    assert (rep.s - s) % abs(p) == 0


def test_normalized_is_orientation_reversing():
    m = GluingMatrix(1, 0, 2, 1)
    assert m.determinant == 1
    assert m.normalized().determinant == -1
    assert PROTOTYPE.normalized() == PROTOTYPE


def test_cyclic_slope_two_classes():
    reps = classify_cyclic_slope2(10)
    # With q = 1 and determinant -1, s = r p - 1; the orbit picks s = -1, r = 0.
    assert reps == [GluingMatrix(1, 0, -2, -1), GluingMatrix(1, 0, 2, -1)]
    assert all(r.p in (-2, 2) and r.s % 2 for r in reps)
    assert all(str(h1_of_gluing(r)) == "Z/8" for r in reps)
