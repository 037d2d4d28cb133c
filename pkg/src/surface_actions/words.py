r"""
Signed words and handle normalization.

A signed letter is a pair ``(name, sign)`` with ``sign`` in ``{1, -1}``; a
word is a tuple of signed letters. Text form: ``"a3"`` and ``"a3^-1"``.

Handle normalization rewrites the boundary word of an orientable polygon
into ``[x_1,y_1]...[x_g,y_g]`` one handle at a time, recording how each new
letter is expressed in the original ones.

EXAMPLES::

    >>> w = parse_word("a0 a1 a2 a0^-1 a1^-1 a2^-1")
    >>> canon, f = normalize_full(w)
    >>> format_word(canon)
    'x1 y1 x1^-1 y1^-1'
    >>> f.vector("x1", ["a0", "a1", "a2"]), f.vector("y1", ["a0", "a1", "a2"])
    ((0, -1, -1), (-1, -1, 0))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MalformedWord, PreconditionFailed

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class NonOrientableWord(MalformedWord):
    kind = "NonOrientableWord"


class NoPair(PreconditionFailed):
    kind = "NoPair"


def natural_key(name: str):
    """Sort key treating digit runs numerically (``a2 < a10``)."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


def inv(w) -> Word:
    return tuple((a, -s) for a, s in reversed(tuple(w)))


def parse_letter(tok: str) -> Letter:
    tok = tok.strip()
    if tok.endswith("^-1"):
        return (tok[:-3], -1)
    if tok.endswith("'"):
        return (tok[:-1], -1)
    if not tok:
        raise MalformedWord("empty letter")
    return (tok, 1)


def parse_word(text) -> Word:
    """Parse a whitespace separated string or a list of letter strings."""
    toks = text.split() if isinstance(text, str) else list(text)
    return tuple(parse_letter(t) for t in toks)


def format_letter(x: Letter) -> str:
    return x[0] if x[1] == 1 else f"{x[0]}^-1"


def format_word(w) -> str:
    return " ".join(format_letter(x) for x in w)


def word_to_json(w) -> list[str]:
    return [format_letter(x) for x in w]


def free_reduce(w) -> Word:
    out: list[Letter] = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> Word:
    r"""
    Free reduction followed by cancellation across the ends.

    EXAMPLES::

        >>> format_word(cyclic_reduce(parse_word("a b b^-1 a^-1 c")))
        'c'
        >>> format_word(cyclic_reduce(parse_word("c a b a^-1 b^-1 c^-1")))
        'a b a^-1 b^-1'
    """
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def abelianize(w, letters=None) -> tuple[int, ...]:
    r"""
    Exponent-sum vector over ``letters`` (default: sorted letters of ``w``).

    EXAMPLES::

        >>> abelianize(parse_word("a b c a^-1 b^-1 c^-1"))
        (0, 0, 0)
    """
    if letters is None:
        letters = sorted({a for a, _ in w}, key=natural_key)
    pos = {a: i for i, a in enumerate(letters)}
    v = [0] * len(letters)
    for a, s in w:
        if a not in pos:
            raise MalformedWord(f"letter {a} not in the coordinate list")
        v[pos[a]] += s
    return tuple(v)


def check_surface_word(w) -> None:
    """Each letter must occur exactly twice, once with each sign."""
    seen: dict[str, list[int]] = {}
    for a, s in w:
        seen.setdefault(a, []).append(s)
    for a, signs in seen.items():
        if len(signs) != 2:
            raise MalformedWord(f"letter {a} occurs {len(signs)} times")
        if signs[0] == signs[1]:
            raise NonOrientableWord(f"letter {a} occurs twice with the same sign")


def canonical_tail_start(w) -> int:
    r"""
    Index where the maximal suffix of blocks ``u v u^-1 v^-1`` begins, each
    block using letters found nowhere else in the word.

    EXAMPLES::

        >>> canonical_tail_start(parse_word("a b a^-1 b^-1"))
        0
        >>> canonical_tail_start(parse_word("a b c a^-1 b^-1 c^-1"))
        6
    """
    w = tuple(w)
    end = len(w)
    while end >= 4:
        u, v, ui, vi = w[end - 4:end]
        if (u[0] != v[0] and ui == (u[0], -u[1]) and vi == (v[0], -v[1])):
            others = {a for a, _ in w[:end - 4]}
            if u[0] not in others and v[0] not in others:
                end -= 4
                continue
        break
    return end


@dataclass(frozen=True)
class InterleavedPair:
    """``w = Q a R b S a^-1 T b^-1 U`` with the positions of a, b, a^-1, b^-1."""

    a: Letter
    b: Letter
    i: int
    j: int
    ia: int
    ib: int
    Q: Word
    R: Word
    S: Word
    T: Word
    U: Word


def find_interleaved_pair(w, skip_tail: bool = True) -> InterleavedPair | None:
    r"""
    First interleaved pair outside the canonical commutator tail.

    Scan order: ``a`` is the earliest letter that has an interleaved
    partner; among its partners ``b`` is the one whose inverse occurs first
    (the tightest interleaving). With ``skip_tail`` the canonical
    commutators at the end are left alone, so None means the word is
    already in canonical position.

    EXAMPLES::

        >>> p = find_interleaved_pair(parse_word("a b c a^-1 b^-1 c^-1"))
        >>> format_letter(p.a), format_letter(p.b), p.S, p.U
        ('a', 'b', (('c', 1),), (('c', -1),))
        >>> find_interleaved_pair(parse_word("x1 y1 x1^-1 y1^-1")) is None
        True
    """
    w = tuple(w)
    check_surface_word(w)
    stop = canonical_tail_start(w) if skip_tail else len(w)
    head = w[:stop]
    where = {x: k for k, x in enumerate(head)}
    for i, a in enumerate(head):
        ia = where.get((a[0], -a[1]))
        if ia is None or ia < i:
            continue
        best = None
        for j in range(i + 1, ia):
            b = head[j]
            ib = where.get((b[0], -b[1]))
            if ib is not None and ib > ia and (best is None or ib < best[1]):
                best = (j, ib)
        if best is None:
            continue
        j, ib = best
        return InterleavedPair(
            a, head[j], i, j, ia, ib, head[:i], head[i + 1:j], head[j + 1:ia], head[ia + 1:ib], head[ib + 1:]
        )
    return None


@dataclass(frozen=True)
class Substitution:
    r"""
    New letters expressed as words over old letters. Letters not listed map
    to themselves.
    """

    images: dict[str, Word] = field(default_factory=dict)

    def image(self, name: str) -> Word:
        return self.images.get(name, ((name, 1),))

    def apply(self, w) -> Word:
        out: list[Letter] = []
        for a, s in w:
            img = self.image(a)
            out.extend(img if s == 1 else inv(img))
        return free_reduce(out)

    def vector(self, name: str, letters) -> tuple[int, ...]:
        return abelianize(self.image(name), letters)

    def matrix(self, names, letters) -> list[list[int]]:
        """Columns are the abelianized images of ``names``."""
        cols = [self.vector(x, letters) for x in names]
        return [[cols[c][r] for c in range(len(names))] for r in range(len(letters))]

    def to_json(self) -> dict:
        return {k: word_to_json(v) for k, v in self.images.items()}


def _fresh(w, stem: str) -> str:
    used = {a for a, _ in w}
    k = 1
    while f"{stem}{k}" in used:
        k += 1
    return f"{stem}{k}"


def normalize_step(w, fresh: tuple[str, str] | None = None) -> tuple[Word, Substitution]:
    r"""
    One normalization step: ``QaRbSa^-1Tb^-1U`` becomes ``QTSRU x y x^-1 y^-1``
    with ``x = QTb^-1U`` and ``y = U^-1R^-1a^-1Tb^-1U``. The new commutator is
    placed just before any canonical commutators already at the end.

    EXAMPLES::

        >>> w2, sub = normalize_step(parse_word("a b a^-1 b^-1"), ("x", "y"))
        >>> format_word(w2), format_word(sub.image("x")), format_word(sub.image("y"))
        ('x y x^-1 y^-1', 'b^-1', 'a^-1 b^-1')
    """
    w = tuple(w)
    check_surface_word(w)
    stop = canonical_tail_start(w)
    p = find_interleaved_pair(w)
    if p is None:
        if stop != 0 or len(w) < 4:
            raise NoPair("no interleaved pair in word")
        # already canonical: the last handle is the pair
        p = _pair_at(w, len(w) - 4)
        stop = len(w)
    tail = w[stop:]
    if fresh is None:
        fresh = (_fresh(w, "x"), _fresh(w, "y"))
    xn, yn = fresh
    X = free_reduce(p.Q + p.T + inv((p.b,)) + p.U)
    Y = free_reduce(inv(p.U) + inv(p.R) + inv((p.a,)) + p.T + inv((p.b,)) + p.U)
    rest = p.Q + p.T + p.S + p.R + p.U
    handle = ((xn, 1), (yn, 1), (xn, -1), (yn, -1))
    return rest + handle + tail, Substitution({xn: X, yn: Y})


def _pair_at(w, i) -> InterleavedPair:
    return InterleavedPair(w[i], w[i + 1], i, i + 1, i + 2, i + 3, w[:i], (), (), (), w[i + 4:])


def handle_count(w) -> int:
    """Genus of the one-face surface bounded by ``w`` (Euler count)."""
    from .cellmap import Map

    return Map.from_word(w).genus()


def normalize_full(w) -> tuple[Word, Substitution]:
    r"""
    Normalize a genus-``g`` boundary word to ``[x_1,y_1]...[x_g,y_g]``.

    Exactly ``g`` steps are applied, even to a word already in that form;
    each works on the letters not yet turned into new handles and puts its
    commutator in front of the handles made so far, so the handle made last
    is ``[x_1, y_1]``. Every handle so made has intersection ``-1``, which
    keeps the sign of the form the same for all polygons. The
    returned substitution expresses every ``x_i, y_i`` over the original
    letters.

    EXAMPLES::

        >>> w = parse_word("a0 a8^-1 a2 a0^-1 a4 a2^-1 a6 a4^-1 a8 a6^-1")
        >>> canon, f = normalize_full(w)
        >>> L = ["a0", "a2", "a4", "a6", "a8"]
        >>> [f.vector(x, L) for x in ("x1", "y1", "x2", "y2")]
        [(0, 0, 0, -1, 1), (0, 0, -1, 0, 1), (0, -1, 0, 0, 1), (-1, -1, 1, 0, 1)]
        >>> f = normalize_full(parse_word("a b a^-1 b^-1"))[1]
        >>> f.vector("x1", ["a", "b"]), f.vector("y1", ["a", "b"])
        ((0, -1), (-1, -1))
    """
    w = cyclic_reduce(tuple(w))
    if w:
        check_surface_word(w)
    subs: list[tuple[Word, Word]] = []
    rest = w
    while rest:
        p = find_interleaved_pair(rest, skip_tail=False)
        if p is None:
            raise NoPair("word is not an orientable surface word in reduced form")
        X = free_reduce(p.Q + p.T + inv((p.b,)) + p.U)
        Y = free_reduce(inv(p.U) + inv(p.R) + inv((p.a,)) + p.T + inv((p.b,)) + p.U)
        # rest keeps only original letters, so images are already final
        rest = cyclic_reduce(p.Q + p.T + p.S + p.R + p.U)
        subs.insert(0, (X, Y))
    images: dict[str, Word] = {}
    canon: list[Letter] = []
    for k, (X, Y) in enumerate(subs, 1):
        images[f"x{k}"], images[f"y{k}"] = X, Y
        canon += [(f"x{k}", 1), (f"y{k}", 1), (f"x{k}", -1), (f"y{k}", -1)]
    return tuple(canon), Substitution(images)


def canonical_word(g: int) -> Word:
    """``[x_1,y_1]...[x_g,y_g]``."""
    out: list[Letter] = []
    for k in range(1, g + 1):
        out += [(f"x{k}", 1), (f"y{k}", 1), (f"x{k}", -1), (f"y{k}", -1)]
    return tuple(out)
