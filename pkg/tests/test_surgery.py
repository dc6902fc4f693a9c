from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from bordered_calc.catalog import load
from bordered_calc.surgery import (FilteredComplex, InvalidParameter, NotCoprime, NotLargeSurgery,
                                   NotSimplified, NotStaircase, SurgeryError, a_hat_dimensions,
                                   a_plus_bottom_grading, box_summand, d_lens, d_lens_indexed,
                                   d_surgery, direct_sum, f2_rank, grading_gap_obstruction,
                                   knot_complement_type_d, large_surgery_profile, staircase,
                                   unknot_data, v_closed_form, v_h)
from bordered_calc.typed import validate

odd = st.sampled_from([3, 5, 7, 9, 11])


def test_fixtures_are_staircases():
    assert load("cfk.staircase.T2-3").payload == staircase(3)
    assert load("cfk.staircase.T2-5").payload == staircase(5)


@given(odd, st.integers(-8, 8))
def test_v_three_routes_agree(k, s):
    n = (k - 1) // 2
    c = staircase(k)
    data = v_h(c)
    assert data.v(s) == v_closed_form(n, s)
    assert data.h(s) == data.v(-s)
    if abs(s) <= n:
        assert a_plus_bottom_grading(c, s) == -2 * data.v(s)


@given(odd)
def test_a_hat_symmetric_and_one_for_l_space_knots(k):
    dims = a_hat_dimensions(staircase(k))
    assert set(dims.values()) == {1}
    assert all(dims[s] == dims[-s] for s in dims)


def test_box_summand_adds_to_a_hat():
    c = direct_sum(staircase(5), box_summand())
    dims = a_hat_dimensions(c)
    assert dims[0] == 3 and dims[2] == 1


def test_lens_space_values():
    assert d_lens(1, 1) == [0]
    assert max(d_lens(8, 1)) == Q(7, 4)
    assert Q(5, 8) in d_lens(8, 3)
    p = 5
    assert d_lens_indexed(p, 1) == [Q((2 * i - p) ** 2 - p, 4 * p) for i in range(p)]


@given(st.integers(2, 30), st.integers(1, 29))
def test_lens_space_d_under_inverse_q(p, q):
    if q >= p:
        return
    try:
        values = d_lens(p, q)
    except NotCoprime:
        return
    assert len(values) == p
    # L(p, q) and L(p, q') with q q' = 1 mod p are orientation-preservingly homeomorphic.
    assert d_lens(p, pow(q, -1, p)) == values


def test_lens_errors():
    with pytest.raises(NotCoprime):
        d_lens(8, 2)
    with pytest.raises(InvalidParameter):
        d_lens(3, 5)


def test_unknot_surgery_is_lens_space():
    assert sorted(d_surgery(8, unknot_data()).values()) == d_lens(8, 1)


def test_gap_obstruction():
    assert grading_gap_obstruction([0, Q(1, 2)], Q(3, 2))
    assert not grading_gap_obstruction([0, Q(3, 2)], Q(3, 2))
    assert not grading_gap_obstruction([Q(3, 2), 0], Q(-3, 2))


@given(odd)
def test_large_surgery_on_l_space_knots(k):
    p = k
    assert large_surgery_profile(staircase(k), p) == {r: 1 for r in range(p)}


def test_large_surgery_bound():
    with pytest.raises(NotLargeSurgery):
        large_surgery_profile(staircase(5), 3)


def test_complex_validation():
    with pytest.raises(SurgeryError):
        FilteredComplex((("a", 1, 0),))
    with pytest.raises(SurgeryError):
        FilteredComplex((("a", 0, 0), ("b", 0, 0)), (("a", "b", 0),))
    with pytest.raises(InvalidParameter):
        staircase(4)


def test_v_needs_a_staircase():
    with pytest.raises(NotStaircase):
        v_h(direct_sum(staircase(3), box_summand()))


def test_f2_rank():
    assert f2_rank([0b11, 0b01, 0b10]) == 2
    assert f2_rank([]) == 0


@given(odd, st.booleans(), st.integers(-4, 6))
def test_complement_structure(k, mirror, framing):
    c = staircase(k, mirror)
    d = knot_complement_type_d(c, framing)
    assert validate(d) == []
    tau = -((k - 1) // 2) if mirror else (k - 1) // 2
    lengths = sum(abs(c.alexander[a] - c.alexander[b]) if u == 0 else u
                  for a, b, u in c.differentials)
    assert len(d) == len(c.generators) + lengths + abs(framing - 2 * tau)


def test_complement_needs_simplified_complex():
    with pytest.raises(NotSimplified):
        knot_complement_type_d(box_summand(), 0)
