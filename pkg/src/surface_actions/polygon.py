r"""
Side-paired polygons realizing Type 1 actions as rotations.

For a Type 1 set with cone points ordered so that the third one has full
order ``n``, the polygon has ``2n`` sides (``n`` sides when ``n_1 = 2``),
plus ``4 g0`` sides of commutator blocks for each of the ``n`` rotation
blocks. Rotating the polygon by ``2 pi c_3^{-1} / n`` respects the side
pairing and induces the action on the glued surface.

Sides are indexed ``0..k-1`` counter-clockwise; vertex ``p`` is where side
``p`` starts. A side ``a_{2m+1}`` carries the inverse of the letter on side
``a_{2z}``, ``z = m + qj (mod n)``; letters are named after their positive
side, ``a0, a2, ...``.

EXAMPLES::

    >>> from surface_actions.dataset import DataSet
    >>> P = build_polygon(DataSet.parse("(5,0;(1,5),(2,5),(2,5))"))
    >>> P.word_text()
    'a0 a8^-1 a2 a0^-1 a4 a2^-1 a6 a4^-1 a8 a6^-1'
    >>> P.shift, quotient_genus(P)
    (6, 2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .dataset import DataSet, _genus_fraction, classify
from .errors import DomainError, InvalidPolygon, NotRealizedByPolygon, NotType1
from .words import Letter, Word, format_word, natural_key, parse_word, word_to_json


class NonOrientablePairing(InvalidPolygon):
    kind = "NonOrientablePairing"


class NotAnAction(DomainError):
    kind = "NotAnAction"


@dataclass(frozen=True)
class SidePairedPolygon:
    """Boundary word, side pairing and the rotation shift (in sides)."""

    word: Word
    shift: int = 0
    data: DataSet | None = None
    a_positions: tuple[int, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.word)

    @property
    def letters(self) -> list[str]:
        return sorted({a for a, _ in self.word}, key=natural_key)

    @property
    def pairing(self) -> list[tuple[int, int]]:
        first: dict[str, int] = {}
        out = []
        for p, (a, _) in enumerate(self.word):
            if a in first:
                out.append((first[a], p))
            else:
                first[a] = p
        return out

    def partner(self) -> list[int]:
        out = [0] * self.k
        for p, q in self.pairing:
            out[p], out[q] = q, p
        return out

    def word_text(self) -> str:
        return format_word(self.word)

    def to_json(self) -> dict:
        return {"word": word_to_json(self.word), "pairing": [list(p) for p in self.pairing], "shift": self.shift}

    @classmethod
    def from_json(cls, obj) -> "SidePairedPolygon":
        return cls(parse_word(obj["word"]), int(obj.get("shift", 0)))


def ordered_for_polygon(D: DataSet) -> DataSet:
    r"""
    Cone order used by the construction: the third point has full order and
    an order-2 point, if any, comes first. A set already in that shape is
    returned unchanged.

    EXAMPLES::

        >>> ordered_for_polygon(DataSet.parse("(6,0;(1,3),(1,6),(1,2))"))
        DataSet(6,0;(1,2),(1,3),(1,6))
    """
    cls = classify(D)
    if cls.kind != "Type1":
        raise NotType1(f"{D} is not a Type 1 data set")
    cone = list(D.cone)
    n = D.n
    if cone[2][1] != n:
        k = max(i for i in range(3) if cone[i][1] == n)
        third = cone.pop(k)
        cone.append(third)
    if cone[1][1] == 2 and cone[0][1] != 2:
        cone[0], cone[1] = cone[1], cone[0]
    return DataSet(n, D.g0, tuple(cone))


def _q_block(r: int, g0: int) -> list[Letter]:
    out: list[Letter] = []
    for s in range(1, g0 + 1):
        x, y = f"x{r}_{s}", f"y{r}_{s}"
        out += [(x, 1), (y, 1), (x, -1), (y, -1)]
    return out


def build_polygon(D: DataSet) -> SidePairedPolygon:
    r"""
    The polygon whose rotation realizes the Type 1 set ``D``.

    The cone order of ``D`` is kept when its third point has full order;
    otherwise it is adjusted by :func:`ordered_for_polygon`.

    EXAMPLES::

        >>> P = build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
        >>> P.word_text(), P.shift
        ('a0 a1 a2 a0^-1 a1^-1 a2^-1', 1)
    """
    D = ordered_for_polygon(D)
    n, g0 = D.n, D.g0
    (c1, n1), (c2, n2), (c3, _) = D.cone
    c3i = pow(c3, -1, n) if n > 1 else 0
    q = (n // n2) * c3i % n
    j = n2 - c2
    a: dict[int, Letter] = {}
    if n1 != 2:
        for m in range(n):
            z = (m + q * j) % n
            a[2 * z] = (f"a{2 * z}", 1)
            a[2 * m + 1] = (f"a{2 * z}", -1)
        word: list[Letter] = [a[0]]
        apos = [0]
        for r in range(1, n + 1):
            word += _q_block(r, g0)
            apos.append(len(word))
            word.append(a[2 * r - 1])
            if r < n:
                apos.append(len(word))
                word.append(a[2 * r])
        block = 2 + 4 * g0
    else:
        for m in range(n):
            z = (m + q * j) % n
            p = (m + 1) % n
            lo = min(p, z)
            a[lo] = (f"a{lo}", 1)
            a[max(p, z)] = (f"a{lo}", -1)
            if p == z:
                raise NotRealizedByPolygon("side paired with itself")
        word = [a[0]]
        apos = [0]
        for r in range(1, n + 1):
            word += _q_block(r, g0)
            if r < n:
                apos.append(len(word))
                word.append(a[r])
        block = 1 + 4 * g0
    shift = (c3i * block) % len(word) if n > 1 else 0
    P = SidePairedPolygon(tuple(word), shift, D, tuple(apos), {"q": q, "j": j})
    _check_pairing(P)
    return P


def _check_pairing(P: SidePairedPolygon) -> None:
    seen: dict[str, list[int]] = {}
    for a, s in P.word:
        seen.setdefault(a, []).append(s)
    for a, signs in seen.items():
        if len(signs) != 2:
            raise InvalidPolygon(f"letter {a} appears {len(signs)} times")
        if signs[0] == signs[1]:
            raise NonOrientablePairing(f"letter {a} is paired with matching orientation")


# ------------------------------------------------------------ vertices
class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def vertex_classes(P: SidePairedPolygon) -> list[list[int]]:
    r"""
    Polygon vertices grouped by identification, each class sorted.

    EXAMPLES::

        >>> P = build_polygon(DataSet.parse("(5,0;(1,5),(3,5),(1,5))"))
        >>> vertex_classes(P)
        [[0, 2, 4, 6, 8], [1, 3, 5, 7, 9]]
    """
    _check_pairing(P)
    k = P.k
    uf = _UnionFind(k)
    where: dict[str, dict[int, int]] = {}
    for p, (a, s) in enumerate(P.word):
        where.setdefault(a, {})[s] = p
    for a, pos in where.items():
        p, q = pos[1], pos[-1]
        # side p runs tail->head from vertex p; side q runs head->tail from vertex q
        uf.union(p, (q + 1) % k)
        uf.union((p + 1) % k, q)
    classes: dict[int, list[int]] = {}
    for v in range(k):
        classes.setdefault(uf.find(v), []).append(v)
    return sorted(classes.values())


def quotient_genus(P: SidePairedPolygon) -> int:
    """Genus of the glued surface from ``V - E + F``."""
    V = len(vertex_classes(P))
    E = P.k // 2
    chi = V - E + 1
    return (2 - chi) // 2


def corner_cycles(P: SidePairedPolygon) -> list[list[int]]:
    """Corners around each glued vertex; corner ``p`` is followed by ``partner(p) + 1``."""
    part = P.partner()
    k = P.k
    seen = [False] * k
    out = []
    for s in range(k):
        if seen[s]:
            continue
        cyc = []
        p = s
        while not seen[p]:
            seen[p] = True
            cyc.append(p)
            p = (part[p] + 1) % k
        out.append(cyc)
    return out


@dataclass(frozen=True)
class VertexOrbit:
    vertices: tuple[int, ...]
    orbit_size: int
    valence: int
    residue: int | None  # c_i^{-1} mod n_i when the stabilizer is nontrivial


def vertex_orbits(P: SidePairedPolygon, shift: int | None = None) -> list[VertexOrbit]:
    r"""
    Vertex classes with the size of their orbit under the rotation and the
    local rotation residue of the stabilizer generator.
    """
    shift = P.shift if shift is None else shift
    k = P.k
    n = k // gcd(k, shift) if shift % k else 1
    cycles = corner_cycles(P)
    owner = {p: i for i, c in enumerate(cycles) for p in c}
    out = []
    for i, cyc in enumerate(cycles):
        o = 1
        while o < n and owner[(cyc[0] + o * shift) % k] != i:
            o += 1
        ni = n // o
        res = None
        if ni > 1:
            pos = {p: t for t, p in enumerate(cyc)}
            jp = (pos[(cyc[0] + o * shift) % k] - pos[cyc[0]]) % len(cyc)
            # corner cycles run clockwise around the vertex
            res = (-jp * ni // len(cyc)) % ni if (jp * ni) % len(cyc) == 0 else None
        out.append(VertexOrbit(tuple(sorted(cyc)), o, len(cyc), res))
    return out


# ---------------------------------------------------------- rotation
def _check_symmetry(P: SidePairedPolygon, shift: int) -> dict[str, Letter]:
    k = P.k
    img: dict[str, Letter] = {}
    for p, (a, s) in enumerate(P.word):
        b, t = P.word[(p + shift) % k]
        sign = s * t
        if a in img and img[a] != (b, sign):
            raise NotAnAction(f"rotation by {shift} sides does not respect the pairing")
        img[a] = (b, sign)
    return img


def rotation_action(P: SidePairedPolygon, D: DataSet | None = None, shift: int | None = None) -> dict[str, Letter]:
    r"""
    Signed permutation of letters induced by the rotation.

    EXAMPLES::

        >>> P = build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
        >>> rotation_action(P)
        {'a0': ('a1', 1), 'a1': ('a2', 1), 'a2': ('a0', -1)}
    """
    shift = P.shift if shift is None else shift
    img = _check_symmetry(P, shift)
    return {a: img[a] for a in P.letters}


def letter_permutation_order(img: dict[str, Letter]) -> int:
    cur = {a: (a, 1) for a in img}
    for k in range(1, 4 * len(img) + 3):
        cur = {a: (img[b][0], s * img[b][1]) for a, (b, s) in cur.items()}
        if all(cur[a] == (a, 1) for a in cur):
            return k
    raise NotAnAction("letter permutation has no finite order")


def realized_data_set(P: SidePairedPolygon, shift: int | None = None) -> DataSet:
    r"""
    The data set of the rotation acting on the glued surface, read off from
    orbit sizes and local rotations at the center, the vertex classes and
    edge midpoints.

    EXAMPLES::

        >>> P = build_polygon(DataSet.parse("(6,0;(1,2),(2,3),(5,6))"))
        >>> realized_data_set(P).canonical()
        DataSet(6,0;(1,2),(2,3),(5,6))
        >>> realized_data_set(P, shift=0)
        DataSet(1,1;)
    """
    shift = P.shift if shift is None else shift
    k = P.k
    shift %= k
    _check_symmetry(P, shift)
    g = quotient_genus(P)
    n = k // gcd(k, shift) if shift else 1
    if n == 1:
        return DataSet(1, g, ())
    cone = []
    # center: the whole group fixes it; the rotation turns by shift/k
    cone.append((pow(shift * n // k, -1, n), n))
    seen_orbit = set()
    for vo in vertex_orbits(P, shift):
        ni = n // vo.orbit_size
        if ni == 1:
            continue
        key = min((p + t * shift) % k for p in vo.vertices for t in range(n))
        if key in seen_orbit:
            continue
        seen_orbit.add(key)
        if vo.residue is None:
            raise NotAnAction("stabilizer does not act freely on corners")
        cone.append((pow(vo.residue, -1, ni), ni))
    # edge midpoints flipped by a power of the rotation
    part = P.partner()
    flipped = set()
    for p in range(k):
        for t in range(1, n):
            if (p + t * shift) % k == part[p]:
                pair = frozenset((p, part[p]))
                orbit = frozenset(frozenset(((x + u * shift) % k) for x in pair) for u in range(n))
                if orbit not in flipped:
                    flipped.add(orbit)
                    cone.append((1, 2))
                break
    total = quotient_orbifold_genus(n, g, cone)
    return DataSet(n, total, tuple(cone))


def quotient_orbifold_genus(n: int, g: int, cone) -> int:
    """Solve Riemann-Hurwitz for the quotient genus."""
    # 2 - 2g = n (2 - 2 g0) - sum (n - n/n_i)
    s = sum(n - n // m for _, m in cone)
    num = 2 - 2 * g + s
    if num % (2 * n):
        raise NotAnAction("Riemann-Hurwitz has no integral quotient genus")
    g0 = 1 - num // (2 * n)
    if _genus_fraction(n, g0, cone) != g:
        raise NotAnAction("inconsistent quotient genus")
    return g0
