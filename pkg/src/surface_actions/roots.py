r"""
Roots of Dehn twists: root-realizing data sets, their splitting into a
compatible pair, and the symplectic matrices of the roots.

A root of a twist about a nonseparating curve comes from an action with
two fixed points ``P, Q`` whose rotation angles add up to ``2 pi / n``:
remove discs around them and attach a handle with a ``1/n`` twist. In
residues the angle of a cone point ``(c, n)`` is ``c^-1 / n`` turns, so the
condition reads ``c + c' = c c' (mod n)``.

EXAMPLES::

    >>> D = DataSet.parse("(5,0;(1,5),(2,5),(3,5),(4,5))")
    >>> is_root_realizing(D), root_indices(D)
    (True, (3, 4))
    >>> [str(x) for x in split_root(D)]
    ['(5,0;(1,5),(2,5),(2,5))', '(5,0;(3,5),(3,5),(4,5))']
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cellmap import Map
from .dataset import DataSet, classify, compose_pair, decompose
from .errors import DomainError, NotRootRealizing, NotType1, UnsupportedCase, _make
from .fatgraph import _as_vertex_orbit, _equivariant, automorphism_from_rotation, special_orbits
from .intlinalg import IntRows, identity, matmul, solve, transpose
from .polygon import build_polygon
from .symplectic import J, cycle_lattice, rep_comp_pair, rep_type1

TooFewConePoints = _make("TooFewConePoints", "A root-realizing set with three cone points does not split.")
NoEdgePath = _make("NoEdgePath", "The two fixed points are not joined by an edge path.")
NotRootPair = _make("NotRootPair", "The fixed-point angles of a pair do not add up to 2 pi / n.")


def _inverse(c: int, n: int) -> int:
    return pow(c, -1, n) if n > 1 else 0


def _is_root_pair(D: DataSet, i: int, j: int) -> bool:
    n = D.n
    (ci, mi), (cj, mj) = D.cone[i - 1], D.cone[j - 1]
    return mi == n and mj == n and (ci + cj - ci * cj) % n == 0


def root_indices(D: DataSet) -> tuple[int, int] | None:
    """
    The distinguished cone pair ``(i, j)``, 1-based, or ``None``. When
    several pairs qualify the last one in lexicographic order is used, so
    a set written as ``(..., (c_{l-1}, n), (c_l, n))`` gets ``(l-1, l)``.
    """
    ell = len(D.cone)
    for j in range(ell, 0, -1):
        for i in range(j - 1, 0, -1):
            if _is_root_pair(D, i, j):
                return (i, j)
    return None


def is_root_realizing(D: DataSet) -> bool:
    r"""
    Whether ``D`` has two full-order cone points with ``c + c' = c c' (mod n)``.

    EXAMPLES::

        >>> is_root_realizing(DataSet.parse("(5,0;(3,5),(3,5),(4,5))"))
        True
        >>> is_root_realizing(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
        False
    """
    return root_indices(D) is not None


def _checked_indices(D: DataSet, indices) -> tuple[int, int]:
    if indices is None:
        indices = root_indices(D)
        if indices is None:
            raise NotRootRealizing(f"{D} has no root-realizing cone pair")
        return indices
    i, j = indices
    if not (1 <= i <= len(D.cone) and 1 <= j <= len(D.cone)) or i == j or not _is_root_pair(D, i, j):
        raise NotRootRealizing(f"cone points {i}, {j} of {D} are not a root-realizing pair")
    return (i, j)


def split_root(D: DataSet, indices: tuple[int, int] | None = None) -> tuple[DataSet, DataSet]:
    r"""
    Split a root-realizing set with at least four cone points into
    ``D1 = (n, g0; others, (c c', n))`` and the three-point set
    ``D2 = (n, 0; (-c c', n), (c, n), (c', n))``. They glue back to ``D``
    across cone ``l - 1`` of ``D1`` and cone ``1`` of ``D2``.

    EXAMPLES::

        >>> D = DataSet.parse("(5,0;(1,5),(2,5),(3,5),(4,5))")
        >>> D1, D2 = split_root(D)
        >>> compose_pair(D1, D2, (3, 1)) == D
        True
        >>> split_root(DataSet.parse("(5,0;(3,5),(3,5),(4,5))"))
        Traceback (most recent call last):
        ...
        surface_actions.errors.TooFewConePoints: (5,0;(3,5),(3,5),(4,5)) has only 3 cone points
    """
    i, j = _checked_indices(D, indices)
    if len(D.cone) < 4:
        raise TooFewConePoints(f"{D} has only {len(D.cone)} cone points")
    n = D.n
    ci, cj = D.cone[i - 1][0], D.cone[j - 1][0]
    others = [p for k, p in enumerate(D.cone, 1) if k not in (i, j)]
    D1 = DataSet(n, D.g0, tuple(others) + (((ci * cj) % n, n),))
    D2 = DataSet(n, 0, (((-ci * cj) % n, n), (ci, n), (cj, n)))
    return D1, D2


def split_indices(D: DataSet) -> tuple[int, int]:
    """The cone indices gluing the two halves of :func:`split_root`."""
    return (len(D.cone) - 1, 1)


# ---------------------------------------------------------------- nonseparating


@dataclass(frozen=True)
class RootBlocks:
    """The blocks of ``[[E, B], [C, I]]``; ``path`` is the edge path between the fixed points."""

    E: IntRows
    B: IntRows
    C: IntRows
    I: IntRows
    path: tuple[str, ...]

    @property
    def matrix(self) -> IntRows:
        top = [list(e) + list(b) for e, b in zip(self.E, self.B)]
        bottom = [list(c) + list(i) for c, i in zip(self.C, self.I)]
        return top + bottom

    def to_json(self) -> dict:
        return {"E": self.E, "B": self.B, "C": self.C, "I": self.I, "matrix": self.matrix, "path": list(self.path)}


def closure_block(E: IntRows, B: IntRows) -> IntRows:
    r"""
    The block ``C`` making ``[[E, B], [C, I]]`` preserve the form
    ``Omega + J`` where ``Omega`` is the form ``E`` preserves. Lists of
    handle bases have form ``-J`` here, which cancels in ``J B^t Omega E``.

    EXAMPLES::

        >>> closure_block([[1, 0], [0, 1]], [[1, 0], [0, 0]])
        [[0, 0], [0, -1]]
    """
    g = len(E) // 2
    Om = [[-x for x in r] for r in J(g)]
    Jh = [[-x for x in r] for r in J(1)]
    return matmul(matmul(matmul(Jh, transpose(B)), Om), E)


def _shortest_path(M: Map, src: int, dst: int) -> list[int]:
    """Breadth-first dart path, trying darts in increasing order."""
    vo = M.vertex_of()
    cyc = M.vertices()
    prev = {src: None}
    q = deque([src])
    while q:
        v = q.popleft()
        if v == dst:
            break
        for d in sorted(cyc[v]):
            w = vo[d ^ 1]
            if w not in prev:
                prev[w] = d
                q.append(w)
    if dst not in prev:
        raise NoEdgePath("fixed points lie in different components")
    path = []
    v = dst
    while prev[v] is not None:
        path.append(prev[v])
        v = vo[prev[v]]
    return list(reversed(path))


def root_blocks(D: DataSet, indices: tuple[int, int] | None = None) -> RootBlocks:
    r"""
    Blocks of the root of a twist about a nonseparating curve built from a
    Type 1 root-realizing set. When the third cone point has full order
    the polygon is built from ``(c', c, third)`` so that the third point is
    the centre. ``E`` is the action on the polygon basis,
    the new handle is ``(l, m)`` with ``l`` running from the fixed point of
    cone ``j`` to that of cone ``i`` along an edge path ``alpha`` and back through the handle; ``l`` picks up
    the class of ``F(alpha) alpha^-1`` and ``m`` is fixed.

    EXAMPLES::

        >>> R = root_blocks(DataSet.parse("(5,0;(3,5),(3,5),(4,5))"))
        >>> transpose(R.B), R.C, R.path
        ([[0, 0, -1, 1], [0, 0, 0, 0]], [[0, 0, 0, 0], [-1, -1, -1, -1]], ('a0',))
    """
    if classify(D).kind != "Type1":
        raise NotType1(f"{D} is not a Type 1 data set")
    i, j = _checked_indices(D, indices)
    cone_i, cone_j = D.cone[i - 1], D.cone[j - 1]
    rest = [p for k, p in enumerate(D.cone, 1) if k not in (i, j)]
    Dp = D
    if len(rest) == 1 and rest[0][1] == D.n:
        # the third point goes to the centre, so both fixed points are vertex classes
        Dp = DataSet(D.n, D.g0, (cone_j, cone_i, rest[0]))
    P = build_polygon(Dp)
    F = automorphism_from_rotation(P)
    orbits = special_orbits(F)
    used = []
    for idx, c in ((i, cone_i), (j, cone_j)):
        o = next((o for o in orbits if o.cone == c and o not in used), None)
        if o is None:
            raise NotRootRealizing(f"no fixed point realizes cone point {idx}")
        used.append(o)
    Eq = _equivariant(F)
    reps = []
    for o in sorted(used, key=lambda o: o.kind == "face"):
        if o.kind == "face":
            Eq, rep, _ = _as_vertex_orbit(Eq, o, D.n, "s")
        else:
            rep = o.rep
        reps.append((o, rep))
    rep_of = {id(o): r for o, r in reps}
    M = Eq.M
    vo = M.vertex_of()
    # alpha runs from the point of cone j to the point of cone i
    src, dst = vo[rep_of[id(used[1])]], vo[rep_of[id(used[0])]]
    alpha = _shortest_path(M, src, dst)
    gamma = [Eq.f[d] for d in alpha]
    ne = len(M.edges)
    w = [0] * ne
    for d in gamma:
        w[d >> 1] += 1 if d % 2 == 0 else -1
    for d in alpha:
        w[d >> 1] -= 1 if d % 2 == 0 else -1
    L = cycle_lattice(P)
    H = M.homology()
    basis = [tuple(list(v) + [0] * (ne - len(v))) for v in L.basis]
    Pm = transpose([list(H.coords(v)) for v in basis])
    b = [r[0] for r in solve(Pm, transpose([list(H.coords(tuple(w)))]))]
    E = rep_type1(Dp, P)
    B = [[x, 0] for x in b]
    C = closure_block(E, B)
    names = tuple(Eq.labels[d] for d in alpha)
    return RootBlocks(E, B, C, identity(2), names)


def rep_root_nonsep(D: DataSet, indices: tuple[int, int] | None = None) -> IntRows:
    """The ``(2g+2)``-square matrix of the root; see :func:`root_blocks`."""
    return root_blocks(D, indices).matrix


# ---------------------------------------------------------------- separating


def fixed_point_turns(D: DataSet, index: int) -> tuple[int, int]:
    """Rotation angle at a fixed cone point as a residue ``(k, n)``, meaning ``k/n`` turns."""
    c, m = D.cone[index - 1]
    if m != D.n:
        raise NotRootRealizing(f"cone point {index} of {D} is not a fixed point")
    return (_inverse(c, m), m)


def is_root_pair(D1: DataSet, i1: int | None, D2: DataSet, i2: int | None) -> bool:
    r"""
    Whether the fixed points ``i1`` of ``D1`` and ``i2`` of ``D2`` have angles
    adding up to ``1/n`` turns, ``n = lcm(n1, n2)``. An index of ``None``
    stands for a regular point of a trivial action (angle zero).

    EXAMPLES::

        >>> D = DataSet.parse("(5,0;(1,5),(2,5),(2,5))")
        >>> is_root_pair(D, 1, DataSet(1, 1, ()), None)
        True
        >>> is_root_pair(D, 2, DataSet(1, 1, ()), None)
        False
    """
    from math import lcm

    n = lcm(D1.n, D2.n)
    total = 0
    for D, i in ((D1, i1), (D2, i2)):
        if i is None:
            if D.n != 1:
                return False
            continue
        if not (1 <= i <= len(D.cone)) or D.cone[i - 1][1] != D.n:
            return False
        k, m = fixed_point_turns(D, i)
        total += k * (n // m)
    return total % n == 1 % n


def _fixed_index(D: DataSet) -> int | None:
    return next((k for k, (_, m) in enumerate(D.cone, 1) if m == D.n), None)


def representation(D: DataSet) -> IntRows:
    r"""
    The symplectic matrix of ``D`` when it is trivial, Type 1, or one
    compatible pair of Type 1 sets.

    EXAMPLES::

        >>> representation(DataSet(1, 2, ()))
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    """
    if D.n == 1:
        return identity(2 * D.genus)
    if classify(D).kind == "Type1":
        return rep_type1(D)
    T = decompose(D)
    if T.kind == "pair" and all(c.kind == "leaf" for c in T.children):
        D1, D2 = (c.data for c in T.children)
        if classify(D1).kind == "Type1" and classify(D2).kind == "Type1":
            return rep_comp_pair(D1, D2, T.rs)
    raise UnsupportedCase(f"{D} is not a single compatible pair of Type 1 sets")


def rep_root_sep(D1: DataSet, D2: DataSet, i1: int | None = None, i2: int | None = None) -> IntRows:
    r"""
    Block-diagonal matrix of a root of a twist about a separating curve.
    Missing indices default to the first fixed cone point.

    EXAMPLES::

        >>> D = DataSet.parse("(5,0;(1,5),(2,5),(2,5))")
        >>> M = rep_root_sep(D, DataSet(1, 1, ()))
        >>> len(M), M[4:]
        (6, [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    """
    i1 = _fixed_index(D1) if i1 is None and D1.n > 1 else i1
    i2 = _fixed_index(D2) if i2 is None and D2.n > 1 else i2
    if not is_root_pair(D1, i1, D2, i2):
        raise NotRootPair("fixed-point angles do not add up to 1/n turns")
    A, B = representation(D1), representation(D2)
    from .intlinalg import block_diag

    return block_diag(A, B)


__all__ = [
    "DomainError",
    "NoEdgePath",
    "NotRootPair",
    "RootBlocks",
    "TooFewConePoints",
    "closure_block",
    "compose_pair",
    "fixed_point_turns",
    "is_root_pair",
    "is_root_realizing",
    "rep_root_nonsep",
    "rep_root_sep",
    "representation",
    "root_blocks",
    "root_indices",
    "split_indices",
    "split_root",
]
