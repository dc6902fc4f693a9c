from fractions import Fraction as Q
import math

import pytest
from hypothesis import assume, given, strategies as st

from bordered_calc.algebra import AlgebraElement as A
from bordered_calc.catalog import load
from bordered_calc.curves import (CurveComponent, CurveError, InvalidSlope, KnotCurveSummary,
                                  NoEssentialComponent, NotNormalPosition, NotReduced, PLCurve,
                                  Reflect, Twist, UnsupportedMove, apply_mapping_class,
                                  curve_to_type_d, filling_dimensions, format_curve,
                                  lift_heights, line, loose_crossings, parse_curve,
                                  pegboard_summary, segment_crossings, to_svg, type_d_to_curve)
from bordered_calc.surgery import (FilteredComplex, box_summand, direct_sum, knot_complement_type_d,
                                   staircase)
from bordered_calc.typed import edge_reduce, is_isomorphic

slopes = st.tuples(st.integers(-9, 9), st.integers(1, 6)).filter(
    lambda t: t[0] != 0 and math.gcd(*t) == 1)


def reduced(d):
    return edge_reduce(d) if d.has_identity_edges() else d


def summary_of(cx):
    return pegboard_summary(type_d_to_curve(knot_complement_type_d(cx, 0)))


FIGURE_EIGHT = direct_sum(FilteredComplex((("u", 0, 0),)), box_summand())


def test_horizontal_circle_is_one_generator_with_rho12():
    d = curve_to_type_d(line(0, 1))
    assert d.generators == (("x1", 0),)
    assert d.edges == (("x1", "x1", A.RHO12),)


@given(slopes)
def test_lines_have_one_generator_per_crossing(t):
    p, q = t
    d = curve_to_type_d(line(p, q))
    assert len(d) == abs(p) + abs(q)
    assert len(d.edges) == len(d)


@given(slopes)
def test_line_round_trip(t):
    d = curve_to_type_d(line(*t))
    assert is_isomorphic(curve_to_type_d(type_d_to_curve(d)), d)


def test_catalog_round_trips():
    for name in ("cfd.N.s0", "cfd.N.s1", "cfd.trefoil.mu-lambda"):
        d = load(name).payload
        assert is_isomorphic(curve_to_type_d(type_d_to_curve(d)), d), name


def test_curve_text_round_trip():
    c = load("curve.trefoil.mu-lambda").payload
    assert parse_curve(format_curve(c)) == c


def test_twisted_realizations_from_moves():
    moves = [Reflect("y=1/2"), Twist((0, -1), -2), Reflect("y=x")]
    for key in ("s0", "s1"):
        d = curve_to_type_d(apply_mapping_class(load(f"curve.N.{key}").payload, moves))
        assert is_isomorphic(reduced(d), load(f"cfd.N.{key}.twisted-2").payload), key


def test_identity_move():
    c = load("curve.N.s1").payload
    assert apply_mapping_class(c, [Twist((1, 0), 0)]) == c
    assert apply_mapping_class(c, []) == c


@pytest.mark.parametrize("n", [1, -1])
def test_shear_fixes_both_n_structures(n):
    for key in ("N.s0", "N.s1"):
        sheared = apply_mapping_class(load(f"curve.{key}").payload, [Twist((1, 0), n)])
        assert is_isomorphic(reduced(curve_to_type_d(sheared)), load(f"cfd.{key}").payload)


@pytest.mark.parametrize("n", [3, -3])
def test_large_shear_is_rejected_without_tightening(n):
    # A linear map does not preserve minimal position with respect to the grid.
    sheared = apply_mapping_class(load("curve.N.s1").payload, [Twist((1, 0), n)])
    with pytest.raises(NotNormalPosition):
        curve_to_type_d(sheared)


def test_unsupported_moves():
    c = line(1, 1)
    with pytest.raises(UnsupportedMove):
        apply_mapping_class(c, [Twist((2, 2), 1)])
    with pytest.raises(UnsupportedMove):
        apply_mapping_class(c, [Reflect("x=0")])


def test_identity_edges_must_be_reduced():
    with pytest.raises(NotReduced):
        type_d_to_curve(load("cfd.N.s1.sheared-unreduced").payload)


def test_bigon_is_not_minimal_position():
    loop = CurveComponent(((Q(-1, 4), Q(1, 4)), (Q(1, 4), Q(1, 4)),
                           (Q(1, 4), Q(3, 4)), (Q(-1, 4), Q(3, 4))))
    with pytest.raises(NotNormalPosition):
        curve_to_type_d(PLCurve((loop,)))


def test_basepoint_clearance():
    c = PLCurve((CurveComponent(((Q(99, 100), Q(99, 100)), (Q(1, 2), Q(1, 2))), (1, 0)),))
    with pytest.raises(NotNormalPosition):
        c.validate()


def test_svg_export():
    svg = to_svg(load("curve.N.s0").payload)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


# pegboard summaries

def test_summaries_of_thin_knots():
    assert summary_of(FilteredComplex((("u", 0, 0),))) == KnotCurveSummary(0, 0, 0, {})
    assert summary_of(staircase(3)) == KnotCurveSummary(1, 1, 1, {0: 1})
    assert summary_of(staircase(3, mirror=True)) == KnotCurveSummary(1, -1, -1, {0: 1})
    assert summary_of(staircase(5)) == KnotCurveSummary(2, 2, 1, {-1: 1, 0: 1, 1: 1})
    assert summary_of(FIGURE_EIGHT) == KnotCurveSummary(1, 0, 0, {0: 2})


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_torus_knots_are_l_space_summaries(k):
    g = (k - 1) // 2
    assert summary_of(staircase(k)) == KnotCurveSummary.l_space(g)
    assert summary_of(staircase(k, mirror=True)) == KnotCurveSummary.l_space(g, positive=False)


def test_summary_needs_essential_component():
    with pytest.raises(NoEssentialComponent):
        pegboard_summary(line(1, 0))


def test_summary_validation():
    with pytest.raises(CurveError):
        KnotCurveSummary(1, 2, 1, {})
    with pytest.raises(CurveError):
        KnotCurveSummary(1, 1, 0, {})
    with pytest.raises(CurveError):
        KnotCurveSummary(2, 0, 0, {1: 1})


# fillings

def test_filling_examples():
    t25 = KnotCurveSummary.l_space(2)
    assert filling_dimensions(t25, 4) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert sum(filling_dimensions(KnotCurveSummary.l_space(1), 7).values()) == 7
    fig8 = summary_of(FIGURE_EIGHT)
    assert filling_dimensions(fig8, 1) == {0: 3}
    assert sum(filling_dimensions(fig8, 3, 2).values()) == 7


@given(st.integers(1, 4), st.integers(1, 25), st.integers(1, 4))
def test_l_space_slopes(g, p, q):
    assume(math.gcd(p, q) == 1)
    dims = filling_dimensions(KnotCurveSummary.l_space(g), p, q)
    if Q(p, q) >= 2 * g - 1:
        assert set(dims.values()) == {1}
    assert len(dims) == p


@given(st.integers(2, 4), slopes)
def test_doubled_segment_forces_large_class(n0, t):
    p, q = t
    s = KnotCurveSummary(1, 0, 0, {0: n0})
    assert max(filling_dimensions(s, p, q).values()) > 1


@given(slopes)
def test_lift_heights_are_spaced_by_slope(t):
    p, q = t
    hs = sorted(lift_heights(p, q, 0, -5, 5))
    assert all(b - a == Q(abs(p), q) for a, b in zip(hs, hs[1:]))


@given(slopes.filter(lambda t: t[1] > 1))
def test_loose_components_cross_more_than_once(t):
    p, q = t
    assert max(max(loose_crossings(p, q, h)) for h in range(-2, 3)) > 1
    assert all(lc == 2 * c for lc, c in zip(loose_crossings(p, q, 0), segment_crossings(p, q, 0)))


def test_invalid_slopes():
    s = KnotCurveSummary.l_space(1)
    for p, q in ((0, 1), (2, 4), (1, 0), (1, -2)):
        with pytest.raises(InvalidSlope):
            filling_dimensions(s, p, q)
