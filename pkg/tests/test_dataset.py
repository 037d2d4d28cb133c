import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surface_actions.dataset import (
    DataSet,
    check_conditions,
    classify,
    compatibility_order,
    compose_pair,
    compose_self,
    compose_trivial_self,
    decompose,
    Decomposition,
    enumerate_datasets,
    pair_size,
    reduction_system_size,
    self_compatible_indices,
    strip_trivial_handles,
    validate,
    validation_report,
)
from surface_actions.errors import (
    ConditionViolated,
    DegreeMismatch,
    NegativeGenus,
    NotCompatible,
    NotRealizable,
    NotType1,
    UnsupportedCase,
)


def rh_genus(n, g0, cone):
    """Riemann-Hurwitz, written out independently."""
    two_g_minus_2 = n * (2 * g0 - 2) + sum(Fraction(n) * (1 - Fraction(1, m)) for _, m in cone)
    return (two_g_minus_2 + 2) / 2


def brute_enumerate(n, g):
    """All data sets of degree n and genus g by exhaustive search."""
    pts = [(c, m) for m in range(2, n + 1) if n % m == 0 for c in range(1, m) if gcd(c, m) == 1]
    found = set()
    for g0 in range(g + 1):
        for r in range(n):
            if not check_conditions(n, g0, r, []) and rh_genus(n, g0, []) == g:
                found.add(DataSet(n, g0, (), r))
        max_ell = int(4 * (g - 1) / n + 4) + 1
        for ell in range(1, max_ell + 1):
            for cone in itertools.combinations_with_replacement(pts, ell):
                if rh_genus(n, g0, cone) == g and not check_conditions(n, g0, 0, cone):
                    found.add(DataSet(n, g0, cone))
    return found


# ---------------------------------------------------------------- validate


def test_golden_genera():
    assert DataSet.parse("(5,0;(1,5),(3,5),(1,5))").genus == 2
    assert DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))").genus == 2
    assert DataSet.parse("(30,1;(1,2),(1,6),(1,10),(7,30))").genus == 49
    assert DataSet.parse("(5,0;(1,5),(2,5),(3,5),(4,5))").genus == 4


def test_condition_iv_violation_reports_which():
    with pytest.raises(ConditionViolated) as exc:
        validate(4, 0, 0, [(1, 2), (1, 4)])
    assert exc.value.report()["which"] == "iv"


@pytest.mark.parametrize(
    "args, which",
    [
        ((0, 0, 0, []), "i"),
        ((3, 0, 0, [(1, 4)]), "ii"),
        ((6, 0, 0, [(2, 6), (1, 3), (1, 2)]), "iii"),
        ((3, 1, 0, []), "i"),
        ((3, 1, 1, [(1, 3), (2, 3)]), "i"),
    ],
)
def test_each_condition_is_detected(args, which):
    assert which in check_conditions(*args)
    with pytest.raises(ConditionViolated):
        validate(*args)


def test_genus_errors():
    with pytest.raises(NegativeGenus):
        validate(2, 0, 1, [])
    assert check_conditions(6, 0, 0, [(1, 6)]) == ["iv", "NonIntegralGenus"]


def test_free_actions_need_a_unit():
    assert DataSet(3, 1, (), 1).genus == 1
    assert DataSet(3, 2, (), 2).genus == 4


def test_report_shape():
    assert validation_report(5, 0, 0, [(1, 5), (3, 5), (1, 5)]) == {"valid": True, "genus": 2}
    rep = validation_report(4, 0, 0, [(1, 2), (1, 4)])
    assert rep["valid"] is False and rep["violations"][0] == "iv"
    assert validation_report(4, 0, 0, [(1, 2)] * 4)["realizable"] is False


def test_equality_ignores_cone_order():
    a = DataSet.parse("(5,0;(1,5),(3,5),(1,5))")
    b = DataSet.parse("(5,0;(1,5),(1,5),(3,5))")
    assert a == b and hash(a) == hash(b)
    assert not a.is_identical(b)
    assert a.canonical().is_identical(b)


def test_text_and_json_round_trip():
    D = DataSet.parse("(30,1;(1,2),(1,6),(1,10),(7,30))")
    assert DataSet.parse(str(D)).is_identical(D)
    assert DataSet.from_json(D.to_json()).is_identical(D)
    assert D.to_json() == {"n": 30, "g0": 1, "r": 0, "cone": [[1, 2], [1, 6], [1, 10], [7, 30]]}


# ---------------------------------------------------------------- classify


@pytest.mark.parametrize(
    "text, kind",
    [
        ("(1,2;)", "Rotational"),
        ("(3,1;(1,3),(2,3))", "Rotational"),
        ("(3,1,1;)", "Rotational"),
        ("(6,0;(1,2),(1,3),(1,6))", "Type1"),
        ("(6,1;(1,2),(1,3),(1,6))", "Type1"),
        ("(6,0;(1,2),(1,2),(1,3),(2,3))", "Type2"),
        ("(30,1;(1,2),(1,6),(1,10),(7,30))", "Type2"),
    ],
)
def test_classify(text, kind):
    assert classify(DataSet.parse(text)).kind == kind


def test_irreducible_flag():
    assert classify(DataSet.parse("(6,0;(1,2),(1,3),(1,6))")).irreducible
    assert not classify(DataSet.parse("(6,1;(1,2),(1,3),(1,6))")).irreducible


# ---------------------------------------------------------------- enumerate


@pytest.mark.parametrize("n, g", [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (4, 3), (6, 3), (2, 1), (3, 0)])
def test_enumeration_matches_brute_force(n, g):
    got = enumerate_datasets(n, g)
    assert len(got) == len(set(got))
    assert set(got) == brute_enumerate(n, g)


def test_enumeration_goldens():
    assert DataSet.parse("(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))") in enumerate_datasets(2, 2)
    assert [str(D) for D in enumerate_datasets(1, 4)] == ["(1,4;)"]
    assert DataSet.parse("(5,0;(1,5),(3,5),(1,5))") in enumerate_datasets(5, 2)


def test_enumeration_is_sorted_and_deterministic():
    a = enumerate_datasets(6, 3)
    assert a == sorted(a, key=DataSet.sort_key)
    assert [x.cone for x in a] == [x.cone for x in enumerate_datasets(6, 3)]


# ---------------------------------------------------------------- compositions


def test_compose_pair_c6_example():
    D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
    D2 = DataSet.parse("(6,0;(1,2),(2,3),(5,6))")
    D = compose_pair(D1, D2, (3, 3))
    assert D == DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))")
    assert pair_size(D1, D2, D) == 1
    assert compatibility_order(D1, D2, (2, 2)) == 3
    assert compose_pair(D1, D2, (2, 2)).genus == 3


def test_compose_pair_errors():
    D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
    with pytest.raises(NotCompatible):
        compose_pair(D1, D1, (3, 3))
    with pytest.raises(DegreeMismatch):
        compose_pair(D1, DataSet.parse("(5,0;(1,5),(2,5),(2,5))"), (1, 1))


def test_self_composition():
    D = DataSet.parse("(5,0;(1,5),(2,5),(3,5),(4,5))")
    assert self_compatible_indices(D) == [(1, 4), (2, 3)]
    assert compose_self(D, (1, 4)) == DataSet.parse("(5,1;(2,5),(3,5))")
    T = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
    assert strip_trivial_handles(compose_trivial_self(T, 2)) == (T, 2)
    with pytest.raises(NotType1):
        strip_trivial_handles(D)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pair_genus_counts_glued_circles(data):
    """Gluing along orbits of size n/m adds n/m - 1 to the genus sum."""
    from conftest import type1_corpus

    irr = type1_corpus(10, 8)[0]
    D1 = data.draw(st.sampled_from(irr))
    partners = [(D2, r, s) for D2 in irr if D2.n == D1.n for r in (1, 2, 3) for s in (1, 2, 3)
                if D1.cone[r - 1][1] == D2.cone[s - 1][1] and (D1.cone[r - 1][0] + D2.cone[s - 1][0]) % D1.cone[r - 1][1] == 0]
    if not partners:
        return
    D2, r, s = data.draw(st.sampled_from(partners))
    D = compose_pair(D1, D2, (r, s))
    m = D1.cone[r - 1][1]
    assert D.genus == D1.genus + D2.genus + D1.n // m - 1


# ---------------------------------------------------------------- decompose


def test_decompose_c6_pair():
    T = decompose(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"))
    assert T.kind == "pair" and tuple(T.rs) == (3, 3)
    assert sorted(T.leaves()) == sorted([DataSet.parse("(6,0;(1,2),(1,3),(1,6))"), DataSet.parse("(6,0;(1,2),(2,3),(5,6))")])


def test_decompose_c30_tree_leaves():
    T = decompose(DataSet.parse("(30,1;(1,2),(1,6),(1,10),(7,30))"))
    want = ["(30,0;(11,15),(19,30),(19,30))", "(30,0;(1,6),(7,15),(11,30))",
            "(30,0;(1,10),(8,15),(11,30))", "(30,0;(1,2),(4,15),(7,30))"]
    assert sorted(T.leaves()) == sorted(DataSet.parse(x) for x in want)
    assert T.evaluate() == DataSet.parse("(30,1;(1,2),(1,6),(1,10),(7,30))")


def test_decomposition_json_round_trip():
    T = decompose(DataSet.parse("(30,1;(1,2),(1,6),(1,10),(7,30))"))
    assert Decomposition.from_json(T.to_json()).evaluate() == T.evaluate()


def test_decompose_rejects_unrealizable():
    with pytest.raises(NotRealizable):
        decompose(DataSet(4, 0, ((1, 2),) * 4))


def test_decompose_round_trip(type2_sets):
    for D in type2_sets:
        if not D.is_realizable() or classify(D).notes:
            continue
        assert decompose(D).evaluate() == D, D


# ---------------------------------------------------------------- reduction systems


def test_reduction_type1():
    assert reduction_system_size(DataSet.parse("(6,1;(1,2),(1,3),(1,6))")) == 12
    assert reduction_system_size(DataSet.parse("(3,2;(1,3),(1,3),(1,3))")) == 15
    assert reduction_system_size(DataSet.parse("(6,0;(1,2),(1,3),(1,6))")) == 0
    with pytest.raises(UnsupportedCase):
        reduction_system_size(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"))


def test_reduction_pair_uses_glued_circles():
    D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
    D2 = DataSet.parse("(6,0;(1,2),(2,3),(5,6))")
    assert reduction_system_size(D1, D2, (3, 3)) == 1
    assert reduction_system_size(D1, D2, (2, 2)) == 2
    assert reduction_system_size(D1, D2, (1, 1)) == 3
    D1g = compose_trivial_self(D1, 2)
    assert reduction_system_size(D1g, D2, (3, 3)) == 6 * 5 + 1
