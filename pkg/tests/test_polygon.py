import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import type1_corpus
from surface_actions.dataset import DataSet
from surface_actions.errors import InvalidPolygon, NotType1
from surface_actions.polygon import (
    NotAnAction,
    SidePairedPolygon,
    build_polygon,
    corner_cycles,
    letter_permutation_order,
    ordered_for_polygon,
    quotient_genus,
    realized_data_set,
    rotation_action,
    vertex_classes,
)
from surface_actions.words import parse_word


def euler_genus(P):
    """2 - 2g = V - E + F for one polygon with paired sides."""
    V = len(vertex_classes(P))
    chi = V - P.k // 2 + 1
    assert chi % 2 == 0
    return (2 - chi) // 2


def test_decagon_golden():
    P = build_polygon(DataSet.parse("(5,0;(1,5),(3,5),(1,5))"))
    assert P.meta == {"q": 1, "j": 2}
    assert P.k == 10 and P.shift == 2
    # odd side 2m+1 carries the inverse of side 2(m+2 mod 5)
    for m in range(5):
        assert P.word[2 * m + 1] == (f"a{2 * ((m + 2) % 5)}", -1)
    assert quotient_genus(P) == 2


def test_hexagon_golden():
    P = build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
    assert P.word_text() == "a0 a1 a2 a0^-1 a1^-1 a2^-1"
    assert rotation_action(P) == {"a0": ("a1", 1), "a1": ("a2", 1), "a2": ("a0", -1)}


def test_order_two_branch_and_handles():
    P = build_polygon(DataSet.parse("(4,1;(1,2),(1,4),(1,4))"))
    assert quotient_genus(P) == DataSet.parse("(4,1;(1,2),(1,4),(1,4))").genus
    assert sum(1 for a, _ in P.word if a.startswith("x")) == 2 * 4


def test_ordered_for_polygon_moves_full_order_last():
    D = ordered_for_polygon(DataSet.parse("(10,0;(1,10),(1,2),(2,5))"))
    assert D.cone[2][1] == 10 and D.cone[0][1] == 2


def test_rejects_type2():
    with pytest.raises(NotType1):
        build_polygon(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"))


def test_malformed_polygons():
    P = SidePairedPolygon(parse_word("a b a^-1 c b^-1 c^-1"))
    with pytest.raises(NotAnAction):
        rotation_action(P, shift=1)
    from surface_actions.polygon import _check_pairing

    with pytest.raises(InvalidPolygon):
        _check_pairing(SidePairedPolygon(parse_word("a a b b")))
    with pytest.raises(InvalidPolygon):
        _check_pairing(SidePairedPolygon(parse_word("a b a^-1")))


def test_corner_cycles_partition_corners():
    P = build_polygon(DataSet.parse("(12,0;(1,3),(1,4),(5,12))"))
    cyc = corner_cycles(P)
    assert sorted(p for c in cyc for p in c) == list(range(P.k))


def test_polygon_json_round_trip():
    P = build_polygon(DataSet.parse("(7,0;(1,7),(2,7),(4,7))"))
    Q = SidePairedPolygon.from_json(P.to_json())
    assert Q.word == P.word and Q.shift == P.shift


def test_every_type1_set_realizes(all_type1):
    for D in all_type1:
        P = build_polygon(D)
        assert quotient_genus(P) == D.genus == euler_genus(P), D
        assert letter_permutation_order(rotation_action(P)) == D.n
        assert realized_data_set(P) == D


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(type1_corpus()[0]), st.integers(0, 11))
def test_other_rotations_realize_powers(D, t):
    """Rotating by t times the realizing shift gives the t-th power."""
    P = build_polygon(D)
    shift = (P.shift * t) % P.k
    E = realized_data_set(P, shift=shift)
    from math import gcd

    assert E.n == D.n // gcd(D.n, t) if t % D.n else E.n == 1
