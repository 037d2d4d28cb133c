import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from surface_actions.cellmap import Map
from surface_actions.errors import MalformedWord
from surface_actions.symplectic import J
from surface_actions.words import (
    NoPair,
    NonOrientableWord,
    abelianize,
    canonical_tail_start,
    canonical_word,
    check_surface_word,
    cyclic_reduce,
    find_interleaved_pair,
    format_word,
    free_reduce,
    handle_count,
    inv,
    normalize_full,
    normalize_step,
    parse_word,
)


@st.composite
def surface_words(draw, max_letters=6):
    """A reduced boundary word pairing every letter with its inverse."""
    k = draw(st.integers(1, max_letters))
    letters = [f"a{i}" for i in range(k)]
    slots = draw(st.permutations(list(range(2 * k))))
    w = [None] * (2 * k)
    for i, a in enumerate(letters):
        s = draw(st.sampled_from([1, -1]))
        w[slots[2 * i]] = (a, s)
        w[slots[2 * i + 1]] = (a, -s)
    return cyclic_reduce(tuple(w))


def test_parse_and_format():
    w = parse_word("a0 a1^-1 b")
    assert w == (("a0", 1), ("a1", -1), ("b", 1))
    assert format_word(w) == "a0 a1^-1 b"
    assert parse_word(["a", "b^-1"]) == (("a", 1), ("b", -1))


def test_reductions():
    assert free_reduce(parse_word("a b b^-1 a^-1 c")) == (("c", 1),)
    assert format_word(cyclic_reduce(parse_word("c a b a^-1 b^-1 c^-1"))) == "a b a^-1 b^-1"
    assert inv(parse_word("a b^-1")) == parse_word("b a^-1")


def test_abelianize():
    assert abelianize(parse_word("a b a b^-1 c"), ["a", "b", "c"]) == (2, 0, 1)
    with pytest.raises(MalformedWord):
        abelianize(parse_word("a z"), ["a"])


def test_surface_word_checks():
    check_surface_word(parse_word("a b a^-1 b^-1"))
    with pytest.raises(NonOrientableWord):
        check_surface_word(parse_word("a b a b^-1"))
    with pytest.raises(MalformedWord):
        check_surface_word(parse_word("a b a^-1"))


def test_tail_and_pair_search():
    assert canonical_tail_start(parse_word("a b c a^-1 b^-1 c^-1 x y x^-1 y^-1")) == 6
    p = find_interleaved_pair(parse_word("a b c a^-1 b^-1 c^-1"))
    assert (p.a, p.b) == (("a", 1), ("b", 1))
    assert find_interleaved_pair(canonical_word(2)) is None


def test_single_step_formula():
    # a b c a^-1 b^-1 c^-1 has Q = R = T = 1, S = c, U = c^-1
    w2, f = normalize_step(parse_word("a b c a^-1 b^-1 c^-1"), ("x", "y"))
    assert format_word(w2) == "c c^-1 x y x^-1 y^-1"
    assert format_word(f.image("x")) == "b^-1 c^-1"
    assert format_word(f.image("y")) == "c a^-1 b^-1 c^-1"
    w2, f = normalize_step(parse_word("a b a^-1 b^-1"), ("x", "y"))
    assert format_word(w2) == "x y x^-1 y^-1"
    assert format_word(f.image("x")) == "b^-1"
    assert format_word(f.image("y")) == "a^-1 b^-1"


def test_hexagon_normalization():
    canon, f = normalize_full(parse_word("a0 a1 a2 a0^-1 a1^-1 a2^-1"))
    assert canon == canonical_word(1)
    L = ["a0", "a1", "a2"]
    assert (f.vector("x1", L), f.vector("y1", L)) == ((0, -1, -1), (-1, -1, 0))


def test_decagon_normalization():
    w = parse_word("a0 a8^-1 a2 a0^-1 a4 a2^-1 a6 a4^-1 a8 a6^-1")
    canon, f = normalize_full(w)
    L = ["a0", "a2", "a4", "a6", "a8"]
    assert canon == canonical_word(2)
    assert [f.vector(x, L) for x in ("x1", "y1", "x2", "y2")] == [
        (0, 0, 0, -1, 1),
        (0, 0, -1, 0, 1),
        (0, -1, 0, 0, 1),
        (-1, -1, 1, 0, 1),
    ]


def test_sphere_word_has_no_handles():
    canon, f = normalize_full(parse_word("a a^-1"))
    assert canon == () and f.images == {}


def test_non_orientable_rejected():
    with pytest.raises(NonOrientableWord):
        normalize_full(parse_word("a b a b^-1"))
    with pytest.raises(NoPair):
        normalize_step(parse_word("a a^-1 b b^-1"))


@settings(max_examples=150, deadline=None)
@given(surface_words())
def test_normalization_gives_a_symplectic_basis(w):
    assume(w)
    M = Map.from_word(w)
    g = M.genus()
    canon, f = normalize_full(w)
    assert canon == canonical_word(g)
    assert handle_count(w) == g
    if g == 0:
        return
    H = M.homology()
    vecs = []
    for k in range(1, g + 1):
        for nm in (f"x{k}", f"y{k}"):
            v = M.word_vector(f.image(nm))
            assert M.is_cycle(v)
            vecs.append(v)
    minus_J = [[-x for x in row] for row in J(g)]
    assert H.gram(vecs) == minus_J
