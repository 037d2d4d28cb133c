r"""
Symplectic representations of finite order mapping classes.

Matrices act on column vectors; column ``i`` is the image of the ``i``-th
basis element. The default ("interleaved") basis order is
``(l_1, m_1, ..., l_g, m_g)`` and :func:`J` has 2x2 blocks. The "split"
order is ``(l_1, ..., l_g, m_1, ..., m_g)``.

Bases come from handle normalization of the polygon boundary word, where
``l_i = x_i`` and ``m_i = y_i``. Their intersection matrix is ``-J``, so
every output preserves ``J`` exactly.

EXAMPLES::

    >>> from surface_actions.dataset import DataSet
    >>> M = rep_type1(DataSet.parse("(5,0;(1,5),(2,5),(2,5))"))
    >>> describe_images(M)
    ['l1 -> -m1+l2', 'm1 -> -l2+m2', 'l2 -> -m1', 'm2 -> l1-2m1+l2-m2']
    >>> is_symplectic(M), matrix_order(M)
    (True, 5)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from sympy import QQ

from .cellmap import Map
from .dataset import DataSet, classify, compatibility_order
from .errors import DegreeMismatch, DomainError, NoLift, NotCompatible, NotSymplectic, NotType1
from .fatgraph import (
    _as_vertex_orbit,
    _equivariant,
    automorphism_from_rotation,
    glue_equivariant,
    special_orbits,
)
from .intlinalg import block_diag, dm, identity, mat_order, matmul, solve, to_rows, transpose
from .polygon import SidePairedPolygon, build_polygon, rotation_action, vertex_classes
from .words import Substitution, abelianize, format_word, normalize_full

IntRows = list[list[int]]


class NotFixedPointCompat(NotCompatible):
    kind = "NotFixedPointCompat"


class IntegralSolveFailed(NoLift):
    kind = "IntegralSolveFailed"


# ------------------------------------------------------------- basics
def J(g: int) -> IntRows:
    """Standard form in the interleaved order."""
    out = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        out[2 * i][2 * i + 1] = 1
        out[2 * i + 1][2 * i] = -1
    return out


def is_symplectic(M: IntRows) -> bool:
    if not M:
        return True
    n = len(M)
    if n % 2 or any(len(r) != n for r in M):
        return False
    Jg = J(n // 2)
    return matmul(matmul(transpose(M), Jg), M) == Jg


def matrix_order(M: IntRows, limit: int = 10000) -> int:
    """Multiplicative order (0 if not reached within ``limit``)."""
    if not M:
        return 1
    return mat_order(M, limit)


def _split_perm(g: int) -> list[int]:
    # position in split order -> position in interleaved order
    return [2 * i for i in range(g)] + [2 * i + 1 for i in range(g)]


def interleaved_to_split(M: IntRows) -> IntRows:
    r"""
    Rewrite a matrix from ``(l_1, m_1, ...)`` to ``(l_1, ..., m_1, ...)`` order.

    EXAMPLES::

        >>> interleaved_to_split(J(2))
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    """
    g = len(M) // 2
    p = _split_perm(g)
    return [[M[p[i]][p[j]] for j in range(2 * g)] for i in range(2 * g)]


def split_to_interleaved(M: IntRows) -> IntRows:
    g = len(M) // 2
    p = _split_perm(g)
    out = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(2 * g):
        for j in range(2 * g):
            out[p[i]][p[j]] = M[i][j]
    return out


def convert_basis(M: IntRows, basis: str) -> IntRows:
    if basis == "interleaved":
        return [list(r) for r in M]
    if basis == "split":
        return interleaved_to_split(M)
    raise ValueError(f"unknown basis convention {basis!r}")


def basis_names(g: int, start: int = 1) -> list[str]:
    out = []
    for i in range(start, start + g):
        out += [f"l{i}", f"m{i}"]
    return out


def describe_images(M: IntRows, names: list[str] | None = None) -> list[str]:
    """Images of the basis elements in the ``l1 -> -m1+l2`` style."""
    names = names or basis_names(len(M) // 2)
    out = []
    for j, nm in enumerate(names):
        terms = []
        for i, other in enumerate(names):
            c = M[i][j]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{mag}{other}")
        text = "".join(terms) or "0"
        out.append(f"{nm} -> {text[1:] if text.startswith('+') else text}")
    return out


def solve_in_lattice(P: IntRows, B: IntRows) -> IntRows:
    """Integer ``X`` with ``P X = B`` for ``P`` of full column rank."""
    Pq = dm(P, QQ)
    if Pq.rank() != Pq.shape[1]:
        raise IntegralSolveFailed("basis vectors are dependent")
    Pt = Pq.transpose()
    try:
        X = to_rows((Pt * Pq).inv() * (Pt * dm(B, QQ)))
    except NoLift:
        raise IntegralSolveFailed("image is not an integral combination of the basis") from None
    if matmul(P, X) != [list(map(int, r)) for r in B]:
        raise IntegralSolveFailed("image is not in the span of the basis")
    return X


# ------------------------------------------------------- cycle lattice
@dataclass(frozen=True)
class CycleLattice:
    """Chain data of a polygon complex with a normalized homology basis."""

    letters: tuple[str, ...]
    vertex_classes: tuple[tuple[int, ...], ...]
    boundary: tuple[tuple[int, ...], ...]  # rows: vertex classes, columns: letters
    basis_names: tuple[str, ...]
    basis: tuple[tuple[int, ...], ...]  # one vector over letters per basis element
    substitution: Substitution

    @property
    def genus(self) -> int:
        return len(self.basis) // 2

    def columns(self) -> IntRows:
        return transpose([list(v) for v in self.basis])

    def coords(self, v) -> tuple[int, ...]:
        """Coordinates of a cycle over letters in the normalized basis."""
        X = solve_in_lattice(self.columns(), [[x] for x in v])
        return tuple(r[0] for r in X)

    def f_values(self) -> dict[str, str]:
        return {nm: format_word(self.substitution.image(nm)) for nm in self.basis_names}


def cycle_lattice(P: SidePairedPolygon) -> CycleLattice:
    r"""
    The cycle lattice of the glued polygon with its normalized basis.

    EXAMPLES::

        >>> from surface_actions.words import parse_word
        >>> L = cycle_lattice(SidePairedPolygon(parse_word("x1 y1 x1^-1 y1^-1")))
        >>> L.basis
        ((0, -1), (-1, -1))
        >>> cycle_lattice(SidePairedPolygon(parse_word("a0 a1 a2 a0^-1 a1^-1 a2^-1"))).basis
        ((0, -1, -1), (-1, -1, 0))
    """
    letters = tuple(P.letters)
    li = {a: k for k, a in enumerate(letters)}
    classes = vertex_classes(P)
    owner = {p: c for c, cl in enumerate(classes) for p in cl}
    k = P.k
    d = [[0] * len(letters) for _ in classes]
    for p, (a, s) in enumerate(P.word):
        if s == 1:
            d[owner[(p + 1) % k]][li[a]] += 1
            d[owner[p]][li[a]] -= 1
    _, sub = normalize_full(P.word)
    g = len(sub.images) // 2
    names = tuple(basis_names(g)) if g else ()
    vecs = []
    for i in range(1, g + 1):
        for nm in (f"x{i}", f"y{i}"):
            vecs.append(abelianize(sub.image(nm), letters))
    for v in vecs:
        if any(sum(r[j] * v[j] for j in range(len(v))) for r in d):
            raise IntegralSolveFailed("normalized basis element is not a cycle")
    return CycleLattice(letters, tuple(tuple(c) for c in classes), tuple(map(tuple, d)), names, tuple(vecs), sub)


def letter_action(P: SidePairedPolygon, shift: int | None = None) -> IntRows:
    """Signed permutation matrix of the rotation on letter space."""
    img = rotation_action(P, shift=shift)
    letters = P.letters
    li = {a: k for k, a in enumerate(letters)}
    T = [[0] * len(letters) for _ in letters]
    for a, (b, s) in img.items():
        T[li[b]][li[a]] = s
    return T


def polygon_rep(P: SidePairedPolygon, shift: int | None = None) -> IntRows:
    """Matrix of the polygon rotation in the normalized basis."""
    L = cycle_lattice(P)
    if not L.basis:
        return []
    T = letter_action(P, shift)
    B = L.columns()
    return solve_in_lattice(B, matmul(T, B))


def rep_type1(D: DataSet, P: SidePairedPolygon | None = None) -> IntRows:
    r"""
    The matrix of a Type 1 action, built from its polygon.

    EXAMPLES::

        >>> M = rep_type1(DataSet.parse("(5,0;(4,5),(3,5),(3,5))"))
        >>> describe_images(M, ["l3", "m3", "l4", "m4"])
        ['l3 -> m3-2l4+m4', 'm3 -> -l4', 'l4 -> l3-l4', 'm4 -> l3+m3-l4']
    """
    if classify(D).kind != "Type1":
        raise NotType1(f"{D} is not a Type 1 data set")
    P = build_polygon(D) if P is None else P
    M = polygon_rep(P)
    if not is_symplectic(M):
        raise NotSymplectic("polygon rotation does not preserve the form")
    return M


def rep_direct_sum(D1: DataSet, D2: DataSet, rs: tuple[int, int] | None = None) -> IntRows:
    r"""
    Block-diagonal matrix of a pair glued across fixed points.

    EXAMPLES::

        >>> D1 = DataSet.parse("(5,0;(1,5),(2,5),(2,5))")
        >>> D2 = DataSet.parse("(5,0;(4,5),(3,5),(3,5))")
        >>> M = rep_direct_sum(D1, D2, (3, 3))
        >>> len(M), is_symplectic(M), matrix_order(M)
        (8, True, 5)
    """
    if D1.n != D2.n:
        raise DegreeMismatch("degrees differ")
    if rs is None:
        pairs = fixed_point_pairs(D1, D2)
        if not pairs:
            raise NotFixedPointCompat("no compatible pair of fixed points")
        rs = pairs[0]
    m = compatibility_order(D1, D2, rs)
    if m != D1.n:
        raise NotFixedPointCompat("the glued points are not fixed points")
    return block_diag(rep_type1(D1), rep_type1(D2))


def fixed_point_pairs(D1: DataSet, D2: DataSet) -> list[tuple[int, int]]:
    out = []
    for r, (c1, m1) in enumerate(D1.cone, 1):
        for s, (c2, m2) in enumerate(D2.cone, 1):
            if m1 == m2 == D1.n and (c1 + c2) % m1 == 0:
                out.append((r, s))
    return out


# ---------------------------------------------------- compatible pairs
@dataclass
class GluedHomology:
    """The glued map, its automorphism, and the basis used for the matrix."""

    map: Map
    f: list[int]
    labels: list[str]
    basis: list[tuple[int, ...]]
    names: list[str]
    blocks: tuple[int, int, int]  # genus of the first polygon, connectors, second polygon


def _orbit_for_cone(F, D: DataSet, index: int):
    """The orbit of the polygon automorphism realizing cone ``index`` (1-based) of ``D``."""
    c = D.cone[index - 1]
    rank = sum(1 for p in D.cone[: index - 1] if p == c)
    cands = [o for o in special_orbits(F) if o.cone == c]
    if rank >= len(cands):
        raise NotCompatible(f"no orbit realizes cone point {index}")
    return cands[rank]


def _edge_vector(n_edges: int, darts) -> list[int]:
    v = [0] * n_edges
    for d in darts:
        v[d >> 1] += 1 if d % 2 == 0 else -1
    return v


def _close_on_circles(M: Map, v: list[int], circles) -> tuple[int, ...]:
    """Add arc flows so ``v`` becomes a cycle; the arc ending at each base point gets zero."""
    vo = M.vertex_of()
    div = M.boundary1(tuple(v))
    out = list(v)
    for arcs in circles:
        run = 0
        for a in arcs:
            run += div[vo[2 * a]]
            out[a] += run
    if not M.is_cycle(tuple(out)):
        raise IntegralSolveFailed("lifted chain is not a cycle")
    return tuple(out)


def _bfs_path(M: Map, sources: set[int], targets: set[int], allowed) -> list[int]:
    """Shortest dart path from a source vertex to a target vertex through allowed edges."""
    vo = M.vertex_of()
    cyc = M.vertices()
    prev = {v: None for v in sources}
    q = deque(sorted(sources))
    while q:
        v = q.popleft()
        if v in targets:
            path = []
            while prev[v] is not None:
                d = prev[v]
                path.append(d)
                v = vo[d]
            return list(reversed(path))
        for d in cyc[v]:
            if not allowed(d >> 1):
                continue
            w = vo[d ^ 1]
            if w not in prev:
                prev[w] = d
                q.append(w)
    raise NotCompatible("glued surface has no connecting path")


def _symplectic_completion(H, fixed: list[tuple[int, ...]], ms: list[tuple[int, ...]], lams: list[tuple[int, ...]]):
    """
    Turn crossing loops into partners of the circle classes ``ms``: pair
    them with ``-1``, then make them orthogonal to ``fixed`` (a basis of
    pairs with form ``-1``) and to each other.
    """
    k = len(ms)
    if not k:
        return []
    K = [[H.omega(lam, m) for m in ms] for lam in lams]
    # l_i = sum_j X_ij lam_j with omega(l_i, m_k) = -delta_ik, so X = -K^-1
    X = to_rows(-dm(K, QQ).inv())
    ls = []
    for i in range(k):
        v = [0] * len(lams[0])
        for j in range(k):
            for t, x in enumerate(lams[j]):
                v[t] += X[i][j] * x
        ls.append(v)

    def add(v, c, w):
        return [a + c * b for a, b in zip(v, w)]

    for i in range(k):
        v = ls[i]
        for p in range(0, len(fixed), 2):
            x, y = fixed[p], fixed[p + 1]
            # omega(x, y) = -1: this makes v orthogonal to both
            a, b = H.omega(tuple(v), y), -H.omega(tuple(v), x)
            v = add(add(v, a, x), b, y)
        ls[i] = v
    for j in range(k):
        for i in range(j):
            c = H.omega(tuple(ls[j]), tuple(ls[i]))
            # omega(m_i, l_i) = 1, so adding -c m_i kills omega(l_j, l_i)
            ls[j] = add(ls[j], -c, ms[i])
    return [tuple(v) for v in ls]


def glued_homology(D1: DataSet, D2: DataSet, rs: tuple[int, int]) -> GluedHomology:
    r"""
    Glue the polygon maps of a compatible pair of Type 1 sets across the
    orbits of cone points ``rs`` and build the basis: lifts of both
    normalized polygon bases, then connector pairs ``(l_j, m_j)`` with
    ``m_j`` the sum of the first ``j`` glued circles.
    """
    for D in (D1, D2):
        if classify(D).kind != "Type1":
            raise NotType1(f"{D} is not a Type 1 data set")
    m = compatibility_order(D1, D2, rs)
    n = D1.n
    P1, P2 = build_polygon(D1), build_polygon(D2)
    F1 = automorphism_from_rotation(P1)
    F2 = automorphism_from_rotation(P2).relabel({a: "b" + a for a in P2.letters})
    O1 = _orbit_for_cone(F1, P1.data, _polygon_index(D1, P1.data, rs[0]))
    O2 = _orbit_for_cone(F2, P2.data, _polygon_index(D2, P2.data, rs[1]))
    if O1.cone[1] != m or O2.cone[1] != m:
        raise NotCompatible("orbit orders do not match")
    E1, r1, em1 = _as_vertex_orbit(_equivariant(F1), O1, n, "s")
    E2, r2, em2 = _as_vertex_orbit(_equivariant(F2), O2, n, "t")
    E, info = glue_equivariant(E1, r1, E2, r2, n)
    M = E.M
    H = M.homology()
    ne = len(M.edges)
    off_e = info["edges1"]
    circles = info["circles"]

    def lift(L, emap, shift):
        out = []
        for vec in L.basis:
            v = [0] * ne
            for k, c in enumerate(vec):
                for e in emap[k]:
                    v[e + shift] += c
            out.append(_close_on_circles(M, v, circles))
        return out

    L1, L2 = cycle_lattice(P1), cycle_lattice(P2)
    B1 = lift(L1, em1, 0)
    B2 = lift(L2, em2, off_e)
    circ = [tuple(_edge_vector(ne, [2 * a for a in arcs])) for arcs in circles]
    A = len(circ)
    ms = []
    acc = [0] * ne
    for t in range(A - 1):
        acc = [x + y for x, y in zip(acc, circ[t])]
        ms.append(tuple(acc))
    # crossing loops: circle t to circle t+1 on the first side, back on the second
    vo = M.vertex_of()
    pts = [{vo[2 * a] for a in arcs} for arcs in circles]
    side2 = lambda e: e >= off_e  # noqa: E731  (second polygon and arcs)
    lams = []
    for t in range(A - 1):
        go = _bfs_path(M, pts[t], pts[t + 1], lambda e: e < off_e)
        end = vo[go[-1] ^ 1] if go else next(iter(pts[t] & pts[t + 1]))
        start = vo[go[0]] if go else end
        back = _bfs_path(M, {end}, {start}, side2)
        lams.append(tuple(_edge_vector(ne, go + back)))
    ls = _symplectic_completion(H, B1 + B2, ms, lams)
    basis = list(B1)
    names = basis_names(L1.genus)
    for j in range(A - 1):
        basis += [ls[j], ms[j]]
    names += basis_names(A - 1, L1.genus + 1)
    basis += B2
    names += basis_names(L2.genus, L1.genus + A)
    g = len(basis) // 2
    gram = H.gram(basis)
    if gram != [[-x for x in r] for r in J(g)]:
        raise IntegralSolveFailed("glued basis is not symplectic")
    return GluedHomology(M, E.f, E.labels, basis, names, (L1.genus, A - 1, L2.genus))


def _polygon_index(D: DataSet, Dp: DataSet, index: int) -> int:
    """Position of cone ``index`` of ``D`` in the polygon's cone order ``Dp``."""
    c = D.cone[index - 1]
    rank = sum(1 for p in D.cone[: index - 1] if p == c)
    seen = 0
    for k, p in enumerate(Dp.cone, 1):
        if p == c:
            if seen == rank:
                return k
            seen += 1
    raise NotCompatible(f"cone point {index} not found")


def glued_matrix(G: GluedHomology) -> IntRows:
    M = G.map
    H = M.homology()
    f = G.f
    P = transpose([list(H.coords(v)) for v in G.basis])
    imgs = []
    for v in G.basis:
        w = [0] * len(v)
        for e, c in enumerate(v):
            if c:
                d = f[2 * e]
                w[d >> 1] += c if d % 2 == 0 else -c
        imgs.append(list(H.coords(tuple(w))))
    return solve(P, transpose(imgs))


def rep_comp_pair(D1: DataSet, D2: DataSet, rs: tuple[int, int]) -> IntRows:
    r"""
    The matrix of the action built from an ``(r, s)``-compatible pair of
    Type 1 sets, in the basis first polygon, connectors, second polygon.

    EXAMPLES::

        >>> D1 = DataSet.parse("(6,0;(1,2),(1,3),(1,6))")
        >>> D2 = DataSet.parse("(6,0;(1,2),(2,3),(5,6))")
        >>> M = rep_comp_pair(D1, D2, (2, 2))
        >>> len(M), is_symplectic(M), matrix_order(M)
        (6, True, 6)
        >>> describe_images(M)[3]
        'm2 -> -m2'
    """
    G = glued_homology(D1, D2, rs)
    Mx = glued_matrix(G)
    if not is_symplectic(Mx):
        raise NotSymplectic("glued action does not preserve the form")
    return Mx


def matrix_json(M: IntRows, basis: str = "interleaved", order: int | None = None) -> dict:
    return {
        "matrix": convert_basis(M, basis),
        "g": len(M) // 2,
        "order": matrix_order(M) if order is None else order,
        "basis": basis,
    }


__all__ = [
    "CycleLattice",
    "DomainError",
    "GluedHomology",
    "IntegralSolveFailed",
    "J",
    "NotFixedPointCompat",
    "basis_names",
    "convert_basis",
    "cycle_lattice",
    "describe_images",
    "fixed_point_pairs",
    "glued_homology",
    "glued_matrix",
    "identity",
    "interleaved_to_split",
    "is_symplectic",
    "letter_action",
    "matrix_json",
    "matrix_order",
    "polygon_rep",
    "rep_comp_pair",
    "rep_direct_sum",
    "rep_type1",
    "solve_in_lattice",
    "split_to_interleaved",
]
