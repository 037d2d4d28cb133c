import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import type1_corpus
from surface_actions.cellmap import Map
from surface_actions.dataset import DataSet, compose_pair
from surface_actions.errors import DegreeMismatch, NotType1
from surface_actions.intlinalg import block_diag, identity, matmul, transpose
from surface_actions.polygon import build_polygon
from surface_actions.symplectic import (
    IntegralSolveFailed,
    J,
    NotFixedPointCompat,
    basis_names,
    convert_basis,
    cycle_lattice,
    describe_images,
    glued_homology,
    glued_matrix,
    interleaved_to_split,
    is_symplectic,
    matrix_json,
    matrix_order,
    rep_comp_pair,
    rep_direct_sum,
    rep_type1,
    solve_in_lattice,
    split_to_interleaved,
)
from surface_actions.words import parse_word

C6_D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
C6_D2 = DataSet.parse("(6,0;(1,2),(2,3),(5,6))")


def compatible_triples(sets):
    for D1, D2 in itertools.product(sets, sets):
        if D1.n != D2.n:
            continue
        for r, s in itertools.product(range(1, 4), range(1, 4)):
            (c1, m1), (c2, m2) = D1.cone[r - 1], D2.cone[s - 1]
            if m1 == m2 and (c1 + c2) % m1 == 0:
                yield D1, D2, (r, s)


def test_standard_form():
    assert J(1) == [[0, 1], [-1, 0]]
    assert is_symplectic(J(3))
    assert is_symplectic(identity(4))
    assert not is_symplectic([[2, 0], [0, 1]])
    assert not is_symplectic([[1, 0, 0]])


def test_basis_conversion_round_trip():
    M = rep_type1(DataSet.parse("(7,0;(1,7),(2,7),(4,7))"))
    S = interleaved_to_split(M)
    assert split_to_interleaved(S) == M
    assert convert_basis(M, "split") == S
    with pytest.raises(ValueError):
        convert_basis(M, "diagonal")


def test_describe_images():
    assert describe_images([[0, -1], [1, 0]]) == ["l1 -> m1", "m1 -> -l1"]
    assert describe_images([[1, 2], [0, 1]], ["l5", "m5"]) == ["l5 -> l5", "m5 -> 2l5+m5"]


def test_solve_in_lattice():
    assert solve_in_lattice([[1, 0], [1, 1]], [[2], [3]]) == [[2], [1]]
    with pytest.raises(IntegralSolveFailed):
        solve_in_lattice([[2, 0], [0, 1]], [[1], [0]])
    with pytest.raises(IntegralSolveFailed):
        solve_in_lattice([[1, 1], [1, 1]], [[1], [1]])


def test_intersection_form_on_torus():
    M = Map.from_word(parse_word("a b a^-1 b^-1"))
    H = M.homology()
    a, b = M.edge_vector("a"), M.edge_vector("b")
    assert H.omega(a, b) == 1 and H.omega(b, a) == -1 and H.omega(a, a) == 0


def test_cycle_lattice_of_decagon():
    L = cycle_lattice(build_polygon(DataSet.parse("(5,0;(1,5),(2,5),(2,5))")))
    assert L.genus == 2
    assert L.letters == ("a0", "a2", "a4", "a6", "a8")
    assert L.basis[0] == (0, 0, 0, -1, 1)
    assert L.coords(L.basis[3]) == (0, 0, 0, 1)


def test_type1_images():
    M1 = rep_type1(DataSet.parse("(5,0;(1,5),(2,5),(2,5))"))
    assert describe_images(M1) == ["l1 -> -m1+l2", "m1 -> -l2+m2", "l2 -> -m1", "m2 -> l1-2m1+l2-m2"]
    M2 = rep_type1(DataSet.parse("(5,0;(4,5),(3,5),(3,5))"))
    assert describe_images(M2, basis_names(2, 3)) == ["l3 -> m3-2l4+m4", "m3 -> -l4", "l4 -> l3-l4", "m4 -> l3+m3-l4"]


def test_type1_rejects_other_kinds():
    with pytest.raises(NotType1):
        rep_type1(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"))


def test_type1_sweep(all_type1):
    for D in all_type1:
        M = rep_type1(D)
        assert len(M) == 2 * D.genus
        assert is_symplectic(M), D
        assert matrix_order(M) == D.n, D


def test_c6_pair_matrix():
    M = rep_comp_pair(C6_D1, C6_D2, (2, 2))
    assert describe_images(M) == [
        "l1 -> l1-m1+m2",
        "m1 -> l1+m2",
        "l2 -> -m1-l2-l3+m3",
        "m2 -> -m2",
        "l3 -> -m2+m3",
        "m3 -> -l3+m3",
    ]
    assert is_symplectic(M) and matrix_order(M) == 6


def test_direct_sum_across_fixed_points():
    M = rep_direct_sum(C6_D1, C6_D2)
    assert M == block_diag(rep_type1(C6_D1), rep_type1(C6_D2))
    with pytest.raises(NotFixedPointCompat):
        rep_direct_sum(C6_D1, C6_D2, (2, 2))
    with pytest.raises(DegreeMismatch):
        rep_direct_sum(C6_D1, DataSet.parse("(5,0;(1,5),(2,5),(2,5))"))


def test_matrix_json():
    out = matrix_json(J(1), "split")
    assert out == {"matrix": [[0, 1], [-1, 0]], "g": 1, "order": 4, "basis": "split"}


def test_compatible_pair_sweep():
    irr = type1_corpus()[0]
    by_n = {}
    for D in irr:
        by_n.setdefault(D.n, []).append(D)
    count = 0
    for sets in by_n.values():
        for D1, D2, rs in compatible_triples(sets[:5]):
            G = glued_homology(D1, D2, rs)
            M = glued_matrix(G)
            E = compose_pair(D1, D2, rs)
            assert len(M) == 2 * E.genus
            assert is_symplectic(M) and matrix_order(M) == D1.n, (D1, D2, rs)
            g1, conn, _ = G.blocks
            if conn == 0:
                assert M == block_diag(rep_type1(D1), rep_type1(D2))
            # the connector m-classes cycle through the glued circles
            for j in range(conn):
                col = [M[i][2 * (g1 + j) + 1] for i in range(len(M))]
                want = [0] * len(M)
                if j + 1 < conn:
                    want[2 * (g1 + j + 1) + 1] += 1
                want[2 * g1 + 1] -= 1
                assert col == want
            count += 1
    assert count > 100


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(type1_corpus()[0]), st.integers(1, 30))
def test_powers_stay_symplectic(D, t):
    M = rep_type1(D)
    P = identity(len(M))
    for _ in range(t):
        P = matmul(P, M)
    assert is_symplectic(P)
    assert (P == identity(len(M))) == (t % D.n == 0)
