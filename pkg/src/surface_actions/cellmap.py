r"""
Oriented combinatorial maps and their first homology.

A map is a set of darts ``0..2E-1`` (dart ``2k`` runs along edge ``k``, dart
``2k+1`` against it), the reversal ``d -> d ^ 1`` and a rotation ``sigma0``
whose cycles list the darts leaving each vertex. Faces are the cycles of
``phi = sigma0 o sigma1``; a face cycle reads its boundary counter-clockwise.

Homology uses a tree-cotree split: a spanning tree of the graph, a spanning
tree of the dual on the remaining edges, and ``2g`` leftover edges whose
fundamental cycles form a basis. Intersection numbers come from the corner
order at the single vertex left after contracting the tree and deleting
the cotree.

EXAMPLES::

    >>> from surface_actions.words import parse_word
    >>> M = Map.from_word(parse_word("a b a^-1 b^-1"))
    >>> M.genus()
    1
    >>> H = M.homology()
    >>> H.omega(M.edge_vector("a"), M.edge_vector("b"))
    1
"""

from __future__ import annotations

from collections import deque

from .errors import InvalidFatGraph, MalformedWord

Vec = tuple[int, ...]


def perm_cycles(perm: list[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


class Map:
    """An oriented map; see the module docstring for conventions."""

    def __init__(self, edges: list[str], sigma0: list[int]):
        self.edges = list(edges)
        self.sigma0 = list(sigma0)
        if len(self.sigma0) != 2 * len(self.edges) or sorted(self.sigma0) != list(range(len(self.sigma0))):
            raise InvalidFatGraph("rotation must be a permutation of the darts")
        self.index = {e: k for k, e in enumerate(self.edges)}
        self.phi = [self.sigma0[d ^ 1] for d in range(len(self.sigma0))]
        self._vert = None
        self._face = None

    # ---- construction
    @classmethod
    def from_word(cls, w, edges=None) -> "Map":
        """One-face map of a surface word; ``sigma0(x)`` is the dart after ``x^-1``."""
        from .words import natural_key

        w = tuple(w)
        if edges is None:
            edges = sorted({a for a, _ in w}, key=natural_key)
        idx = {e: k for k, e in enumerate(edges)}
        darts = [2 * idx[a] + (0 if s == 1 else 1) for a, s in w]
        if sorted(darts) != list(range(2 * len(edges))):
            raise MalformedWord("each letter must appear once with each sign")
        nxt = {darts[p]: darts[(p + 1) % len(darts)] for p in range(len(darts))}
        sigma0 = [nxt[d ^ 1] for d in range(2 * len(edges))]
        return cls(edges, sigma0)

    @classmethod
    def from_cycles(cls, edges, cycles) -> "Map":
        """Rotation given as lists of dart ids."""
        sigma0 = [None] * (2 * len(edges))
        for cyc in cycles:
            for p, d in enumerate(cyc):
                sigma0[d] = cyc[(p + 1) % len(cyc)]
        if any(x is None for x in sigma0):
            raise InvalidFatGraph("rotation misses some darts")
        return cls(edges, sigma0)

    def dart(self, name: str, sign: int = 1) -> int:
        return 2 * self.index[name] + (0 if sign == 1 else 1)

    def dart_name(self, d: int) -> tuple[str, int]:
        return (self.edges[d >> 1], 1 if d % 2 == 0 else -1)

    # ---- cells
    def vertices(self) -> list[list[int]]:
        if self._vert is None:
            self._vert = perm_cycles(self.sigma0)
        return self._vert

    def faces(self) -> list[list[int]]:
        if self._face is None:
            self._face = perm_cycles(self.phi)
        return self._face

    def vertex_of(self) -> list[int]:
        out = [0] * len(self.sigma0)
        for v, cyc in enumerate(self.vertices()):
            for d in cyc:
                out[d] = v
        return out

    def face_of(self) -> list[int]:
        out = [0] * len(self.sigma0)
        for f, cyc in enumerate(self.faces()):
            for d in cyc:
                out[d] = f
        return out

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - len(self.edges) + len(self.faces())

    def is_connected(self) -> bool:
        n = len(self.sigma0)
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (d ^ 1, self.sigma0[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def genus(self) -> int:
        if not self.is_connected():
            raise InvalidFatGraph("map is disconnected")
        chi = self.euler_characteristic()
        if chi % 2:
            raise InvalidFatGraph("odd Euler characteristic")
        return (2 - chi) // 2

    # ---- chains
    def edge_vector(self, name: str) -> Vec:
        v = [0] * len(self.edges)
        v[self.index[name]] = 1
        return tuple(v)

    def word_vector(self, w) -> Vec:
        v = [0] * len(self.edges)
        for a, s in w:
            v[self.index[a]] += s
        return tuple(v)

    def dart_path_vector(self, darts) -> Vec:
        v = [0] * len(self.edges)
        for d in darts:
            v[d >> 1] += 1 if d % 2 == 0 else -1
        return tuple(v)

    def boundary1(self, v: Vec) -> list[int]:
        vo = self.vertex_of()
        out = [0] * len(self.vertices())
        for k, c in enumerate(v):
            if c:
                out[vo[2 * k + 1]] += c
                out[vo[2 * k]] -= c
        return out

    def is_cycle(self, v: Vec) -> bool:
        return not any(self.boundary1(v))

    def face_boundary(self, f: int) -> Vec:
        return self.dart_path_vector(self.faces()[f])

    def homology(self) -> "Homology":
        return Homology(self)


class Homology:
    r"""
    First homology of a closed connected map, with coordinates read off a
    tree-cotree decomposition.
    """

    def __init__(self, M: Map):
        self.map = M
        vo, fo = M.vertex_of(), M.face_of()
        nv, nf = len(M.vertices()), len(M.faces())
        # spanning tree by BFS from the vertex of dart 0
        in_tree = [False] * len(M.edges)
        seen_v = [False] * nv
        seen_v[vo[0]] = True
        q = deque([vo[0]])
        cycles = M.vertices()
        while q:
            v = q.popleft()
            for d in cycles[v]:
                w = vo[d ^ 1]
                if not seen_v[w]:
                    seen_v[w] = True
                    in_tree[d >> 1] = True
                    q.append(w)
        # dual spanning tree on non-tree edges
        parent = [None] * nf  # (edge, face) towards the root
        seen_f = [False] * nf
        in_cotree = [False] * len(M.edges)
        order = []
        seen_f[fo[0]] = True
        q = deque([fo[0]])
        fcyc = M.faces()
        while q:
            f = q.popleft()
            order.append(f)
            for d in fcyc[f]:
                if in_tree[d >> 1] or in_cotree[d >> 1]:
                    continue
                h = fo[d ^ 1]
                if not seen_f[h]:
                    seen_f[h] = True
                    in_cotree[d >> 1] = True
                    parent[h] = d >> 1
                    q.append(h)
        self.in_tree = in_tree
        self.in_cotree = in_cotree
        self.leftover = [k for k in range(len(M.edges)) if not in_tree[k] and not in_cotree[k]]
        self.rank = len(self.leftover)
        self._order = order
        self._parent = parent
        self._face_vecs = [M.face_boundary(f) for f in range(nf)]
        self._omega = self._leftover_form()

    def coords(self, v: Vec) -> Vec:
        """Coordinates of a cycle in the fundamental-cycle basis of the leftover edges."""
        M = self.map
        if not M.is_cycle(v):
            raise MalformedWord("chain is not a cycle")
        z = list(v)
        # root first: clearing a face only touches its own and its children's cotree edges
        for f in self._order:
            e = self._parent[f]
            if e is None or z[e] == 0:
                continue
            b = self._face_vecs[f]
            c = z[e] // b[e] if b[e] in (1, -1) else None
            if c is None:
                raise MalformedWord("cotree edge appears twice in its face")
            for k, x in enumerate(b):
                if x:
                    z[k] -= c * x
        if any(z[k] for k in range(len(z)) if self.in_cotree[k]):
            raise MalformedWord("cycle did not reduce off the cotree")
        return tuple(z[k] for k in self.leftover)

    def fundamental_cycle(self, k: int) -> Vec:
        """Cycle of leftover edge ``k`` closed through the tree."""
        M = self.map
        vo = M.vertex_of()
        # tree paths from the root
        root = vo[0]
        par = {root: None}
        q = deque([root])
        while q:
            v = q.popleft()
            for d in M.vertices()[v]:
                if self.in_tree[d >> 1]:
                    w = vo[d ^ 1]
                    if w not in par:
                        par[w] = d
                        q.append(w)

        def path(v):
            out = []
            while par[v] is not None:
                out.append(par[v])
                v = vo[par[v]]
            return list(reversed(out))

        d = 2 * k
        darts = path(vo[d]) + [d] + [x ^ 1 for x in reversed(path(vo[d ^ 1]))]
        return M.dart_path_vector(darts)

    def _leftover_form(self) -> list[list[int]]:
        """Intersection numbers of the leftover loops after contraction."""
        M = self.map
        keep = [k for k in self.leftover]
        if not keep:
            return []
        alive = set()
        for k in range(len(M.edges)):
            if not self.in_cotree[k]:
                alive |= {2 * k, 2 * k + 1}
        # face word of the map with cotree edges deleted
        rot = {}
        for cyc in M.vertices():
            live = [d for d in cyc if d in alive]
            for p, d in enumerate(live):
                rot[d] = live[(p + 1) % len(live)]
        start = 2 * keep[0]
        word = []
        d = start
        while True:
            word.append(d)
            d = rot[d ^ 1]
            if d == start:
                break
        word = [d for d in word if not self.in_tree[d >> 1]]
        if len(word) != 2 * len(keep):
            raise InvalidFatGraph("tree-cotree split did not leave one face")
        nxt = {word[p]: word[(p + 1) % len(word)] for p in range(len(word))}
        # single-vertex rotation from the one-face word
        rot1 = {x: nxt[x ^ 1] for x in word}
        cyc = [word[0]]
        while rot1[cyc[-1]] != cyc[0]:
            cyc.append(rot1[cyc[-1]])
        pos = {x: p for p, x in enumerate(cyc)}
        n = len(cyc)
        loc = {k: i for i, k in enumerate(keep)}
        W = [[0] * len(keep) for _ in keep]
        for x in keep:
            for y in keep:
                if x == y:
                    continue
                p0 = pos[2 * x]
                span = (pos[2 * x + 1] - p0) % n

                def inside(d):
                    return 0 < (pos[d] - p0) % n < span

                yo, yi = inside(2 * y), inside(2 * y + 1)
                if yo != yi:
                    W[loc[x]][loc[y]] = 1 if yi else -1
        return W

    def omega(self, u: Vec, v: Vec) -> int:
        """Algebraic intersection number of two cycles."""
        a, b = self.coords(u), self.coords(v)
        W = self._omega
        return sum(a[i] * W[i][j] * b[j] for i in range(len(a)) for j in range(len(b)) if a[i] and b[j])

    def gram(self, vecs) -> list[list[int]]:
        cs = [self.coords(v) for v in vecs]
        W = self._omega
        n = len(W)
        return [[sum(a[i] * W[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]) for b in cs] for a in cs]
