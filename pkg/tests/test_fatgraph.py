import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import type1_corpus
from surface_actions.dataset import DataSet, compose_pair
from surface_actions.errors import InvalidFatGraph, NotAutomorphism
from surface_actions.fatgraph import (
    FatGraph,
    FatGraphMap,
    automorphism_from_rotation,
    boundary_components,
    compatible_orbit_pairs,
    dataset_from_automorphism,
    from_polygon,
    glue_compatible,
    graph_genus,
    is_irreducible,
    quotient_data,
    special_orbits,
)
from surface_actions.polygon import SidePairedPolygon, build_polygon
from surface_actions.words import parse_word

C6_D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
C6_D2 = DataSet.parse("(6,0;(1,2),(2,3),(5,6))")
C6_TAUS = [
    ["e1", "h3", "f2^-1", "h2^-1"],
    ["e1^-1", "g1", "f2", "g3^-1"],
    ["e2", "g2", "f1^-1", "g1^-1"],
    ["e2^-1", "h1", "f1", "h3^-1"],
    ["e3", "h2", "f3", "h1^-1"],
    ["e3^-1", "g3", "f3^-1", "g2^-1"],
]
C6_ARCS = {"e1": "h3", "e1^-1": "g1", "e2": "g2", "e2^-1": "h1", "e3": "h2", "e3^-1": "g3"}


def cyclic_set(cycles):
    out = []
    for c in cycles:
        k = min(range(len(c)), key=lambda i: c[i])
        out.append(tuple(c[k:]) + tuple(c[:k]))
    return sorted(out)


def trace_faces(G):
    """Boundary count by following sigma0 after sigma1."""
    seen, count = set(), 0
    for x in G.darts:
        if x in seen:
            continue
        count += 1
        y = x
        while y not in seen:
            seen.add(y)
            y = G.sigma0(G.sigma1(y))
    return count


def c6_glued():
    F1 = automorphism_from_rotation(build_polygon(C6_D1)).relabel({"a0": "e1", "a1": "e2", "a2": "e3"})
    F2 = automorphism_from_rotation(build_polygon(C6_D2)).relabel({"a0": "f1", "a1": "f2", "a2": "f3"})
    return glue_compatible(F1, F2, (1, 1), base=("e1", "f2^-1"), arc_names=C6_ARCS)


def test_theta_graph_boundaries():
    G = FatGraph.from_cycles(["e1", "e2", "e3"], [["e1", "e2", "e3"], ["e1^-1", "e3^-1", "e2^-1"]])
    assert len(boundary_components(G)) == 3 == trace_faces(G)
    assert graph_genus(G) == 0
    G2 = FatGraph.from_cycles(["e1", "e2", "e3"], [["e1", "e2", "e3"], ["e1^-1", "e2^-1", "e3^-1"]])
    assert len(boundary_components(G2)) == 1 == trace_faces(G2)
    assert graph_genus(G2) == 1


def test_decagon_fat_graph():
    G = from_polygon(SidePairedPolygon(parse_word("a b c d e a^-1 b^-1 c^-1 d^-1 e^-1")))
    assert cyclic_set(G.vertices()) == cyclic_set(
        [["a", "b^-1", "c", "d^-1", "e"], ["a^-1", "b", "c^-1", "d", "e^-1"]]
    )


def test_invalid_graphs():
    with pytest.raises(InvalidFatGraph):
        FatGraph.from_cycles(["a"], [["a", "a^-1"]])
    with pytest.raises(InvalidFatGraph):
        FatGraph.from_cycles(["a", "b"], [["a", "b", "z"], ["a^-1", "b^-1"]])


def test_non_automorphism_rejected():
    G = FatGraph.from_cycles(["e1", "e2", "e3"], [["e1", "e2", "e3"], ["e1^-1", "e3^-1", "e2^-1"]])
    with pytest.raises(NotAutomorphism):
        FatGraphMap.from_labels(G, {"e1": "e2", "e2": "e1", "e3": "e3", "e1^-1": "e2^-1", "e2^-1": "e1^-1", "e3^-1": "e3^-1"})


def test_graph_json_round_trip():
    G = from_polygon(build_polygon(C6_D1))
    H = FatGraph.from_json(G.to_json())
    assert H.vertices() == G.vertices()


def test_hexagon_automorphism():
    F = automorphism_from_rotation(build_polygon(C6_D1))
    assert F.order() == 6 and F.is_automorphism()
    assert is_irreducible(F)
    assert [o.kind for o in special_orbits(F)] == ["edge", "vertex", "face"]
    assert dataset_from_automorphism(F) == C6_D1


def test_c6_glued_graph_vertices():
    G, F = c6_glued()
    assert cyclic_set(G.vertices()) == cyclic_set(C6_TAUS)
    assert F.is_automorphism() and F.order() == 6
    assert not is_irreducible(F)
    assert quotient_data(F) == compose_pair(C6_D1, C6_D2, (2, 2))


def test_c6_glued_map_on_edges():
    G, F = c6_glued()

    def cycle(x):
        out = [x]
        while F(out[-1]) != x:
            out.append(F(out[-1]))
        return out

    assert cycle("e1") == ["e1", "e2", "e3", "e1^-1", "e2^-1", "e3^-1"]
    assert cycle("g1") == ["g1", "h1", "g3", "h3", "g2", "h2"]
    assert cycle("f1") == ["f1", "f3^-1", "f2^-1", "f1^-1", "f3", "f2"]
    assert cycle("g1^-1") == ["g1^-1", "h1^-1", "g3^-1", "h3^-1", "g2^-1", "h2^-1"]


def test_every_type1_automorphism_recovers_its_data(all_type1):
    for D in all_type1:
        F = automorphism_from_rotation(build_polygon(D))
        assert F.is_automorphism()
        assert quotient_data(F) == D, D
        assert graph_genus(F.graph) == D.genus
        assert is_irreducible(F) == (D.g0 == 0), D


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_gluing_compatible_orbits(data):
    irr = type1_corpus()[0]
    D1 = data.draw(st.sampled_from(irr))
    same = [D for D in irr if D.n == D1.n]
    D2 = data.draw(st.sampled_from(same))
    F1 = automorphism_from_rotation(build_polygon(D1))
    P2 = build_polygon(D2)
    F2 = automorphism_from_rotation(P2).relabel({a: "b" + a for a in P2.letters})
    pairs = compatible_orbit_pairs(F1, F2)
    if not pairs:
        return
    i, j = data.draw(st.sampled_from(pairs))
    G, F = glue_compatible(F1, F2, (i, j))
    assert F.is_automorphism() and F.order() == D1.n
    c1, c2 = special_orbits(F1)[i].cone, special_orbits(F2)[j].cone
    r = [k for k, c in enumerate(D1.cone, 1) if c == c1][0]
    s = [k for k, c in enumerate(D2.cone, 1) if c == c2][0]
    E = compose_pair(D1, D2, (r, s))
    assert quotient_data(F) == E
    assert graph_genus(G) == E.genus
    assert len(boundary_components(G)) == trace_faces(G)
