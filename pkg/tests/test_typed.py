import pytest
from hypothesis import given, strategies as st

from bordered_calc.algebra import AlgebraElement as A, ChordSequence
from bordered_calc.catalog import load
from bordered_calc.grading import (CosetGrading, canonical_generator, coset_equal, inverse,
                                   multiply)
from bordered_calc.typed import (DisconnectedGraph, ParseError, TypeDStructure, assign_gradings,
                                 delta_k, edge_reduce, format_type_d, grading_violations,
                                 is_bounded, is_isomorphic, parse_type_d, to_dot, validate)

TREFOIL = load("cfd.trefoil.mu-lambda").payload
N_S1 = load("cfd.N.s1").payload


def relabel(d, mapping):
    return TypeDStructure(tuple((mapping[n], i) for n, i in d.generators),
                          tuple((mapping[s], mapping[t], l) for s, t, l in d.edges))


def test_text_round_trip():
    for d in (TREFOIL, N_S1, load("cfd.N.s1.sheared-unreduced").payload):
        assert parse_type_d(format_type_d(d)) == d


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_type_d("generator a i0\nedge a b r1\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_type_d("generator a i2\n")
    with pytest.raises(ParseError):
        parse_type_d("generator a i0\ngenerator b i1\nedge a b r13\n")


def test_parallel_edges_cancel_mod_two():
    d = parse_type_d("generator a i0\ngenerator b i1\nedge a b r1\nedge a b r1\n")
    assert d.edges == ()


def test_validate_flags_typing_and_d_squared():
    bad_type = parse_type_d("generator a i1\ngenerator b i1\nedge a b r1\n")
    assert [x.kind for x in validate(bad_type)] == ["typing"]
    square = parse_type_d("generator a i0\ngenerator b i1\ngenerator c i0\n"
                          "edge a b r1\nedge b c r2\n")
    assert [x.kind for x in validate(square)] == ["d-squared"]
    assert validate(TREFOIL) == []


def test_boundedness():
    assert is_bounded(load("cfd.N.s0.twisted-2").payload)
    assert not is_bounded(load("cfd.N.s0").payload)


def test_edge_reduce_cancels_zigzag():
    reduced = edge_reduce(load("cfd.N.s1.sheared-unreduced").payload)
    assert not reduced.has_identity_edges()
    assert is_isomorphic(reduced, N_S1)
    assert validate(reduced) == []


def test_delta_k_paths():
    paths = delta_k(TREFOIL, "x3", 2)
    assert (ChordSequence([A.RHO3, A.RHO2]), "x2") in paths
    assert delta_k(TREFOIL, "y2", 1) == []
    with pytest.raises(ValueError):
        delta_k(TREFOIL, "x1", -1)


def test_gradings_satisfy_every_edge():
    g = assign_gradings(TREFOIL, "x1")
    assert grading_violations(g) == []
    assert g.gradings["x1"].is_identity()


def test_disconnected_graph_is_reported():
    d = parse_type_d("generator a i0\ngenerator b i0\n")
    with pytest.raises(DisconnectedGraph):
        assign_gradings(d, "a")


@given(st.permutations(range(7)))
def test_isomorphism_ignores_names(perm):
    mapping = {n: f"g{k}" for n, k in zip(TREFOIL.names, perm)}
    assert is_isomorphic(relabel(TREFOIL, mapping), TREFOIL)


def test_isomorphism_sees_labels():
    flipped = TypeDStructure(N_S1.generators,
                             tuple((s, t, A.RHO1 if l is A.RHO3 else l) for s, t, l in N_S1.edges))
    assert not is_isomorphic(flipped, N_S1)


def test_dot_export():
    dot = to_dot(N_S1, "N")
    assert dot.startswith('digraph "N" {')
    assert dot.count("->") == len(N_S1.edges)
    assert '"n1" -> "m2" [label="123"]' in dot


@given(st.sampled_from(["cfd.trefoil.mu-lambda", "cfd.N.s0.twisted-2", "cfd.N.s1.twisted-2"]),
       st.data())
def test_gradings_independent_of_base(name, data):
    # Moving the base right-translates every grading and conjugates h.
    d = load(name).payload
    first = assign_gradings(d, d.names[0])
    base = data.draw(st.sampled_from(d.names))
    other = assign_gradings(d, base)
    shift = inverse(first.gradings[base])
    h = multiply(multiply(inverse(shift), first.indeterminacy), shift)
    assert canonical_generator(h) == canonical_generator(other.indeterminacy)
    for x in d.names:
        moved = CosetGrading(multiply(first.gradings[x], shift), None, h)
        assert coset_equal(moved, CosetGrading(other.gradings[x], None, h)), x
