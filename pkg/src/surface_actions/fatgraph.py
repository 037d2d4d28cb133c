r"""
Fat graphs, their automorphisms and the gluing of compatible pairs.

A fat graph is stored as an oriented map (see :mod:`surface_actions.cellmap`)
together with a label for every directed edge. Directed edges are the
primitive objects: ``sigma1`` reverses a directed edge and the cycles of
``sigma0`` are the cyclic orders at the vertices. Boundary components are
the orbits of ``sigma1 sigma0^-1``.

Labels default to ``e`` and ``e^-1`` for an edge ``e``.

EXAMPLES::

    >>> G = FatGraph.from_cycles(["e1", "e2", "e3"],
    ...                          [["e1", "e2", "e3"], ["e1^-1", "e3^-1", "e2^-1"]])
    >>> len(boundary_components(G)), graph_genus(G)
    (3, 0)
    >>> G2 = FatGraph.from_cycles(["e1", "e2", "e3"],
    ...                           [["e1", "e2", "e3"], ["e1^-1", "e2^-1", "e3^-1"]])
    >>> len(boundary_components(G2)), graph_genus(G2)
    (1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cellmap import Map, perm_cycles
from .dataset import DataSet
from .errors import DomainError, InvalidFatGraph, NotAutomorphism, NotCompatible, UnsupportedCase
from .polygon import NotAnAction, SidePairedPolygon, _check_pairing, _check_symmetry


class Disconnected(InvalidFatGraph):
    kind = "Disconnected"


class NotIrreducible(DomainError):
    kind = "NotIrreducible"


def dart_label(name: str, sign: int) -> str:
    return name if sign == 1 else name + "^-1"


def split_label(label: str) -> tuple[str, int]:
    if label.endswith("^-1"):
        return label[:-3], -1
    return label, 1


# ------------------------------------------------------------------ graphs
class FatGraph:
    """A fat graph: an oriented map with named directed edges."""

    def __init__(self, M: Map, labels: list[str] | None = None, check: bool = True):
        self.map = M
        if labels is None:
            labels = [dart_label(*M.dart_name(d)) for d in range(len(M.sigma0))]
        if len(set(labels)) != len(labels) or len(labels) != len(M.sigma0):
            raise InvalidFatGraph("directed edge labels must be distinct")
        self.labels = list(labels)
        self.ids = {x: d for d, x in enumerate(self.labels)}
        if check:
            short = [c for c in M.vertices() if len(c) < 3]
            if short:
                raise InvalidFatGraph(
                    "vertex of valency below three",
                    which=[self.labels[d] for d in short[0]],
                )

    @classmethod
    def from_cycles(cls, edges, cycles, check: bool = True) -> "FatGraph":
        """Build from edge names and vertex cycles written with labels."""
        probe = Map(edges, list(range(2 * len(edges))))
        lab = {dart_label(*probe.dart_name(d)): d for d in range(2 * len(edges))}
        try:
            ids = [[lab[x] for x in c] for c in cycles]
        except KeyError as exc:
            raise InvalidFatGraph(f"unknown directed edge {exc.args[0]}") from None
        if sorted(d for c in ids for d in c) != list(range(2 * len(edges))):
            raise InvalidFatGraph("vertex cycles must partition the directed edges")
        return cls(Map.from_cycles(edges, ids), check=check)

    # ---- structure
    @property
    def darts(self) -> list[str]:
        return list(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.map.edges)

    def dart(self, label: str) -> int:
        return self.ids[label]

    def sigma0(self, label: str) -> str:
        return self.labels[self.map.sigma0[self.ids[label]]]

    def sigma1(self, label: str) -> str:
        return self.labels[self.ids[label] ^ 1]

    def vertices(self) -> list[list[str]]:
        return [[self.labels[d] for d in c] for c in self.map.vertices()]

    def is_connected(self) -> bool:
        return self.map.is_connected()

    def relabel(self, names: dict[str, str]) -> "FatGraph":
        """Rename edges; ``names`` maps old edge names to new ones."""
        lab = []
        for x in self.labels:
            a, s = split_label(x)
            lab.append(dart_label(names.get(a, a), s))
        return FatGraph(self.map, lab, check=False)

    # ---- serialization
    def to_json(self) -> dict:
        return {
            "edges": list(self.labels),
            "sigma1": [[self.labels[2 * k], self.labels[2 * k + 1]] for k in range(self.n_edges)],
            "sigma0": self.vertices(),
        }

    @classmethod
    def from_json(cls, obj) -> "FatGraph":
        pairs = obj["sigma1"]
        labels = [x for p in pairs for x in p]
        if sorted(labels) != sorted(obj.get("edges", labels)):
            raise InvalidFatGraph("sigma1 must pair up all directed edges")
        ids = {x: d for d, x in enumerate(labels)}
        if len(ids) != len(labels):
            raise InvalidFatGraph("sigma1 has a fixed point or repeats an edge")
        try:
            cyc = [[ids[x] for x in c] for c in obj["sigma0"]]
        except KeyError as exc:
            raise InvalidFatGraph(f"unknown directed edge {exc.args[0]}") from None
        if sorted(d for c in cyc for d in c) != list(range(len(labels))):
            raise InvalidFatGraph("sigma0 must be a permutation of the directed edges")
        names = [split_label(p[0])[0] for p in pairs]
        if len(set(names)) != len(names):
            names = [f"E{k}" for k in range(len(pairs))]
        return cls(Map.from_cycles(names, cyc), labels)

    def __repr__(self):
        return f"FatGraph({self.vertices()})"


def boundary_components(G: FatGraph) -> list[list[str]]:
    r"""
    Orbits of ``sigma1 sigma0^-1``, each listed along that permutation.

    EXAMPLES::

        >>> from surface_actions.words import parse_word
        >>> G = FatGraph(Map.from_word(parse_word("a b a^-1 b^-1")))
        >>> boundary_components(G)
        [['a', 'b^-1', 'a^-1', 'b']]
    """
    M = G.map
    inv0 = [0] * len(M.sigma0)
    for d, e in enumerate(M.sigma0):
        inv0[e] = d
    perm = [inv0[d] ^ 1 for d in range(len(M.sigma0))]
    return [[G.labels[d] for d in c] for c in perm_cycles(perm)]


def boundary_words(G: FatGraph) -> list[list[str]]:
    """Boundary components read the other way (``sigma0 sigma1``), as polygon words."""
    return [[G.labels[d] for d in c] for c in G.map.faces()]


def graph_genus(G: FatGraph) -> int:
    """Genus of the surface thickening ``G``, from ``|V| - |E| + b = 2 - 2g``."""
    if not G.is_connected():
        raise Disconnected("fat graph is disconnected")
    M = G.map
    chi = len(M.vertices()) - len(M.edges)
    b = len(boundary_components(G))
    return (2 - chi - b) // 2


def from_polygon(P: SidePairedPolygon, check: bool = True) -> FatGraph:
    r"""
    The fat graph of a side-paired polygon: one edge per side pair, and
    ``sigma0(x)`` is the side following ``sigma1(x)`` on the boundary.

    EXAMPLES::

        >>> from surface_actions.words import parse_word
        >>> P = SidePairedPolygon(parse_word("a b c d e a^-1 b^-1 c^-1 d^-1 e^-1"))
        >>> from_polygon(P).vertices()
        [['a', 'b^-1', 'c', 'd^-1', 'e'], ['a^-1', 'b', 'c^-1', 'd', 'e^-1']]
    """
    _check_pairing(P)
    return FatGraph(Map.from_word(P.word, P.letters), check=check)


# ------------------------------------------------------------ automorphisms
class FatGraphMap:
    """A bijection of the directed edges of a fat graph."""

    def __init__(self, G: FatGraph, perm: list[int], check: bool = True):
        self.graph = G
        self.perm = list(perm)
        if sorted(self.perm) != list(range(len(G.labels))):
            raise NotAutomorphism("map is not a bijection of the directed edges")
        if check and not self.is_automorphism():
            raise NotAutomorphism("map does not commute with sigma0 and sigma1")

    @classmethod
    def from_labels(cls, G: FatGraph, images: dict[str, str], check: bool = True) -> "FatGraphMap":
        return cls(G, [G.dart(images[x]) for x in G.labels], check)

    @classmethod
    def identity(cls, G: FatGraph) -> "FatGraphMap":
        return cls(G, list(range(len(G.labels))))

    def __call__(self, label: str) -> str:
        G = self.graph
        return G.labels[self.perm[G.dart(label)]]

    def is_automorphism(self) -> bool:
        s0 = self.graph.map.sigma0
        f = self.perm
        return all(f[d ^ 1] == f[d] ^ 1 and f[s0[d]] == s0[f[d]] for d in range(len(f)))

    def power(self, t: int) -> list[int]:
        out = list(range(len(self.perm)))
        for _ in range(t % self.order()):
            out = [self.perm[d] for d in out]
        return out

    def order(self) -> int:
        return lcm(*[len(c) for c in perm_cycles(self.perm)]) if self.perm else 1

    def vertex_permutation(self) -> list[int]:
        vo = self.graph.map.vertex_of()
        return [vo[self.perm[c[0]]] for c in self.graph.map.vertices()]

    def relabel(self, names: dict[str, str]) -> "FatGraphMap":
        """The same map on the graph with edges renamed."""
        return FatGraphMap(self.graph.relabel(names), self.perm, check=False)

    def to_json(self) -> dict:
        return {"map": {x: self(x) for x in self.graph.labels}}

    @classmethod
    def from_json(cls, G: FatGraph, obj) -> "FatGraphMap":
        return cls.from_labels(G, obj["map"])


def automorphism_from_rotation(P: SidePairedPolygon, rotation: int | None = None, G: FatGraph | None = None) -> FatGraphMap:
    r"""
    The fat-graph automorphism induced by rotating the polygon ``rotation``
    sides counter-clockwise (default: the polygon's own shift).

    EXAMPLES::

        >>> from surface_actions.polygon import build_polygon
        >>> P = build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
        >>> F = automorphism_from_rotation(P)
        >>> F.order(), F("a0"), F("a2")
        (6, 'a1', 'a0^-1')
    """
    shift = P.shift if rotation is None else rotation
    _check_symmetry(P, shift % P.k if P.k else 0)
    G = from_polygon(P) if G is None else G
    k = P.k
    perm = [0] * len(G.labels)
    for p, (a, s) in enumerate(P.word):
        b, t = P.word[(p + shift) % k]
        perm[G.dart(dart_label(a, s))] = G.dart(dart_label(b, t))
    F = FatGraphMap(G, perm, check=False)
    if not F.is_automorphism():
        raise NotAnAction("rotation does not commute with the fat-graph structure")
    return F


def is_irreducible(F: FatGraphMap, n: int | None = None) -> bool:
    """``|E| = n`` with one vertex orbit, or ``|E| = 2n`` with two."""
    n = F.order() if n is None else n
    E = len(F.graph.labels)
    vp = F.vertex_permutation()
    orbits = len(perm_cycles(vp))
    return (E == n and orbits == 1) or (E == 2 * n and orbits == 2)


# --------------------------------------------------------- quotient data
@dataclass(frozen=True)
class Orbit:
    """An orbit of cells with nontrivial stabilizer, and the cone point it gives."""

    kind: str  # "vertex", "face" or "edge"
    cells: tuple[int, ...]
    rep: int  # a dart in the first cell
    size: int
    cone: tuple[int, int]


def _cell_orbits(cells, owner, perm, n, kind, sign):
    out = []
    seen = set()
    for i, cyc in enumerate(cells):
        if i in seen:
            continue
        orb = [i]
        d = cyc[0]
        x = perm[d]
        while owner[x] != i:
            orb.append(owner[x])
            x = perm[x]
        seen.update(orb)
        o = len(orb)
        m = n // o
        if m == 1:
            continue
        pos = {y: t for t, y in enumerate(cyc)}
        j = pos[x]
        L = len(cyc)
        if (j * m) % L:
            raise NotAutomorphism("stabilizer does not turn the cell by a multiple of 1/m")
        res = (sign * j * m // L) % m
        if gcd(res, m) != 1:
            raise NotAutomorphism("stabilizer does not act freely around the cell")
        out.append(Orbit(kind, tuple(orb), d, o, (pow(res, -1, m), m)))
    return out


def special_orbits(F: FatGraphMap) -> list[Orbit]:
    r"""
    Orbits of edges, vertices and boundary components (capped by discs)
    with nontrivial stabilizers, in that order.
    """
    M = F.graph.map
    n = F.order()
    f = F.perm
    out = []
    # edges whose midpoint is flipped
    seen = set()
    for e in range(len(M.edges)):
        if e in seen:
            continue
        orb = set()
        d = 2 * e
        x = d
        flip = False
        for _ in range(n):
            orb.add(x >> 1)
            if x == d ^ 1:
                flip = True
            x = f[x]
        seen |= orb
        if flip:
            out.append(Orbit("edge", tuple(sorted(orb)), d, len(orb), (1, 2)))
    out += _cell_orbits(M.vertices(), M.vertex_of(), f, n, "vertex", -1)
    out += _cell_orbits(M.faces(), M.face_of(), f, n, "face", 1)
    return out


def quotient_data(F: FatGraphMap) -> DataSet:
    r"""
    Data set of ``F`` acting on the closed surface obtained by capping the
    boundary components of its graph with discs.

    EXAMPLES::

        >>> from surface_actions.polygon import build_polygon
        >>> P = build_polygon(DataSet.parse("(5,0;(4,5),(3,5),(3,5))"))
        >>> quotient_data(automorphism_from_rotation(P))
        DataSet(5,0;(4,5),(3,5),(3,5))
    """
    M = F.graph.map
    n = F.order()
    if n == 1:
        return DataSet(1, M.genus(), ())
    f = F.perm
    vo, fo = M.vertex_of(), M.face_of()
    nv = len(perm_cycles([vo[f[c[0]]] for c in M.vertices()]))
    nf = len(perm_cycles([fo[f[c[0]]] for c in M.faces()]))
    ne = len(perm_cycles(_edge_perm(f, len(M.edges))))
    orbits = special_orbits(F)
    # a flipped edge folds onto half of itself; its midpoint is a new vertex
    nv += sum(1 for o in orbits if o.kind == "edge")
    chi0 = nv - ne + nf
    if chi0 % 2:
        raise NotAutomorphism("quotient has odd Euler characteristic")
    cone = tuple(o.cone for o in orbits)
    return DataSet(n, (2 - chi0) // 2, cone)


def _edge_perm(f, n_edges):
    return [f[2 * e] >> 1 for e in range(n_edges)]


def dataset_from_automorphism(F: FatGraphMap) -> DataSet:
    r"""
    The Type 1 data set of an irreducible automorphism.

    EXAMPLES::

        >>> from surface_actions.polygon import build_polygon
        >>> P = build_polygon(DataSet.parse("(6,0;(1,2),(2,3),(5,6))"))
        >>> dataset_from_automorphism(automorphism_from_rotation(P))
        DataSet(6,0;(1,2),(2,3),(5,6))
    """
    if not is_irreducible(F):
        raise NotIrreducible("automorphism is not irreducible")
    return quotient_data(F)


# --------------------------------------------------------------- gluing
@dataclass
class _Equivariant:
    """A map with an automorphism and labels, used while gluing."""

    M: Map
    f: list[int]
    labels: list[str]


def _subdivide_edges(E: _Equivariant, edges: set[int]) -> tuple[_Equivariant, dict[int, int]]:
    """Insert a midpoint on each listed edge; returns the new map and one dart per midpoint."""
    M = E.M
    names, labels = [], []
    new_of = {}  # old dart -> new dart leaving the same endpoint
    for k, a in enumerate(M.edges):
        la, lb = E.labels[2 * k], E.labels[2 * k + 1]
        if k in edges:
            base = len(names)
            names += [a + ".1", a + ".2"]
            labels += [la + ".1", la + ".1^-1", la + ".2", la + ".2^-1"]
            new_of[2 * k] = 2 * base
            new_of[2 * k + 1] = 2 * (base + 1) + 1
        else:
            new_of[2 * k] = 2 * len(names)
            new_of[2 * k + 1] = 2 * len(names) + 1
            names.append(a)
            labels += [la, lb]
    sigma0 = [None] * (2 * len(names))
    for d, e in enumerate(M.sigma0):
        sigma0[new_of[d]] = new_of[e]
    mids = {}
    for k in edges:
        x = new_of[2 * k] ^ 1  # leaves the midpoint towards the tail
        y = new_of[2 * k + 1] ^ 1  # leaves the midpoint towards the head
        sigma0[x], sigma0[y] = y, x
        mids[k] = y
    f = [None] * len(sigma0)
    for d in range(len(M.sigma0)):
        f[new_of[d]] = new_of[E.f[d]]
    for k in edges:
        # half edges: head half of k goes to the half of F(k) holding F(head)
        h = mids[k]  # dart on the head half, leaving the midpoint
        t = new_of[2 * k] ^ 1  # dart on the tail half, leaving the midpoint
        fk = E.f[2 * k]
        k2 = fk >> 1
        if fk % 2 == 0:
            f[h], f[t] = mids[k2], new_of[2 * k2] ^ 1
        else:
            f[h], f[t] = new_of[2 * k2] ^ 1, mids[k2]
        f[h ^ 1], f[t ^ 1] = f[h] ^ 1, f[t] ^ 1
    M2 = Map(names, sigma0)
    emap = {}
    for k in range(len(M.edges)):
        a, b = new_of[2 * k] >> 1, new_of[2 * k + 1] >> 1
        emap[k] = [a] if a == b else [a, b]
    return _Equivariant(M2, f, labels), {k: mids[k] for k in edges}, emap


def _fresh_prefix(labels, prefix: str) -> str:
    used = {split_label(x)[0] for x in labels}
    while any(u.startswith(prefix) for u in used):
        prefix += "'"
    return prefix


def _cone_faces(E: _Equivariant, orbit_darts: list[int], prefix: str = "s") -> tuple[_Equivariant, list[int]]:
    """
    Add a center vertex to each face of an orbit, joined by spokes to the
    start of the listed darts; returns the new map and the spoke darts
    leaving the centers.
    """
    M = E.M
    fo = M.face_of()
    ne = len(M.edges)
    spokes = sorted(orbit_darts)
    sid = {d: ne + i for i, d in enumerate(spokes)}
    prefix = _fresh_prefix(E.labels, prefix)
    names = list(M.edges) + [f"{prefix}{i + 1}" for i in range(len(spokes))]
    labels = list(E.labels)
    for i in range(len(spokes)):
        labels += [f"{prefix}{i + 1}", f"{prefix}{i + 1}^-1"]
    sigma0 = list(M.sigma0) + [None] * (2 * len(spokes))
    inv0 = {e: d for d, e in enumerate(M.sigma0)}
    for d in spokes:
        z = 2 * sid[d]  # leaves the center
        prev = inv0[d]  # sigma0 predecessor of d at its start vertex
        sigma0[prev] = z ^ 1
        sigma0[z ^ 1] = d
    # center rotation: sigma0(spoke at later corner) = spoke at earlier corner
    by_face: dict[int, list[int]] = {}
    for d in spokes:
        by_face.setdefault(fo[d], []).append(d)
    for fc, ds in by_face.items():
        cyc = M.faces()[fc]
        pos = {x: t for t, x in enumerate(cyc)}
        ds.sort(key=lambda x: pos[x])
        for i, d in enumerate(ds):
            sigma0[2 * sid[ds[(i + 1) % len(ds)]]] = 2 * sid[d]
    f = list(E.f) + [None] * (2 * len(spokes))
    for d in spokes:
        f[2 * sid[d]] = 2 * sid[E.f[d]]
        f[2 * sid[d] + 1] = 2 * sid[E.f[d]] + 1
    return _Equivariant(Map(names, sigma0), f, labels), [2 * sid[d] for d in spokes]


def _as_vertex_orbit(E: _Equivariant, orbit: Orbit, n: int, prefix: str = "s") -> tuple[_Equivariant, int, dict]:
    """
    Make an orbit of cone points a vertex orbit. Returns the new map, a
    dart at a cone vertex, and the new edges making up each old edge.
    """
    same = {k: [k] for k in range(len(E.M.edges))}
    if orbit.kind == "vertex":
        return E, orbit.rep, same
    if orbit.kind == "edge":
        E2, mids, emap = _subdivide_edges(E, set(orbit.cells))
        return E2, mids[orbit.rep >> 1], emap
    # face: spokes at the orbit of the representative corner
    ds = set()
    x = orbit.rep
    for _ in range(n):
        ds.add(x)
        x = E.f[x]
    E2, sp = _cone_faces(E, sorted(ds), prefix)
    return E2, sp[0], same


def glue_equivariant(
    E1: _Equivariant,
    rep1: int,
    E2: _Equivariant,
    rep2: int,
    n: int,
    arc_names: dict[str, str] | None = None,
) -> tuple[_Equivariant, dict]:
    r"""
    Remove invariant discs around the vertex orbits of ``rep1`` and ``rep2``
    and glue the boundary circles, running opposite ways.

    Corners of the first side sit at angles ``i / v1`` from ``rep1``, those
    of the second at ``-i / v2`` from ``rep2`` (shifted off the first ones
    when the valencies differ), and both are carried around the orbit by
    the automorphisms. Coinciding corners give 4-valent vertices.
    """
    M1, M2 = E1.M, E2.M
    vo1, vo2 = M1.vertex_of(), M2.vertex_of()
    v1 = len(M1.vertices()[vo1[rep1]])
    v2 = len(M2.vertices()[vo2[rep2]])
    delta = Fraction(0) if v1 == v2 else Fraction(1, 2 * lcm(v1, v2))
    # points on each glued circle, keyed by angle
    circles: list[dict[Fraction, list]] = []
    owner1: dict[int, int] = {}
    owner2: dict[int, int] = {}
    x1, x2 = rep1, rep2
    for _ in range(n):
        if vo1[x1] in owner1:
            if vo2[x2] != owner2.get(vo1[x1]):
                raise NotCompatible("orbits are not matched consistently")
        else:
            if vo2[x2] in owner2.values():
                raise NotCompatible("orbits are not matched consistently")
            c = len(circles)
            owner1[vo1[x1]] = c
            owner2[vo1[x1]] = vo2[x2]
            pts: dict[Fraction, list] = {}
            y = x1
            for i in range(v1):
                pts.setdefault(Fraction(i, v1), [None, None])[0] = y
                y = M1.sigma0[y]
            y = x2
            for i in range(v2):
                a = (delta - Fraction(i, v2)) % 1
                pts.setdefault(a, [None, None])[1] = y
                y = M2.sigma0[y]
            circles.append(pts)
        x1, x2 = E1.f[x1], E2.f[x2]
    D1 = [d for v in owner1 for d in M1.vertices()[v]]
    D2 = [d for v in owner2.values() for d in M2.vertices()[v]]
    if len(set(owner2.values())) != len(owner1):
        raise NotCompatible("orbits have different sizes")
    e1n, e2n = len(M1.edges), len(M2.edges)
    off2 = 2 * e1n
    base = e1n + e2n
    labels = list(E1.labels) + list(E2.labels)
    lab_of = lambda d: labels[d]  # noqa: E731
    # arcs: one per point, running to the next point counter-clockwise
    arc_of: dict[tuple[int, Fraction], int] = {}
    point_of: dict[int, tuple[int, Fraction]] = {}
    names_given = arc_names or {}
    for ci, pts in enumerate(circles):
        for j, a in enumerate(sorted(pts)):
            x, y = pts[a]
            k = base + len(arc_of)
            arc_of[(ci, a)] = k
            key = lab_of(x) if x is not None else lab_of(off2 + y)
            nm = names_given.get(key, f"g{ci + 1}_{j + 1}")
            labels += [nm, nm + "^-1"]
            if x is not None:
                point_of[x] = (ci, a)
            if y is not None:
                point_of[off2 + y] = (ci, a)
    total = len(labels)
    sigma0 = [None] * total
    inD1, inD2 = set(D1), set(D2)
    for d in range(2 * e1n):
        if d not in inD1:
            sigma0[d] = M1.sigma0[d]
    for d in range(2 * e2n):
        if d not in inD2:
            sigma0[off2 + d] = off2 + M2.sigma0[d]
    for ci, pts in enumerate(circles):
        order = sorted(pts)
        for j, a in enumerate(order):
            x, y = pts[a]
            nxt = 2 * arc_of[(ci, a)]
            prv = 2 * arc_of[(ci, order[j - 1])] + 1
            if x is not None and y is not None:
                ring = [x, nxt, off2 + y, prv]
            elif x is not None:
                ring = [x, nxt, prv]
            else:
                ring = [off2 + y, prv, nxt]
            for p in range(len(ring)):
                sigma0[ring[p]] = ring[(p + 1) % len(ring)]
    f = [None] * total
    for d in range(2 * e1n):
        f[d] = E1.f[d]
    for d in range(2 * e2n):
        f[off2 + d] = off2 + E2.f[d]
    for d, (ci, a) in point_of.items():
        img = point_of[f[d]]
        k, k2 = arc_of[(ci, a)], arc_of[img]
        if f[2 * k] is not None and f[2 * k] != 2 * k2:
            raise NotCompatible("local rotations are not opposite")
        f[2 * k], f[2 * k + 1] = 2 * k2, 2 * k2 + 1
    if None in sigma0 or None in f or sorted(f) != list(range(total)):
        raise NotCompatible("orbits cannot be glued equivariantly")
    names = [split_label(labels[2 * k])[0] for k in range(total // 2)]
    if len(set(names)) != len(names):
        raise InvalidFatGraph("glued edge names collide")
    out = _Equivariant(Map(names, sigma0), f, labels)
    if any(f[sigma0[d]] != sigma0[f[d]] for d in range(total)):
        raise NotCompatible("local rotations are not opposite")
    circ = [[arc_of[(ci, a)] for a in sorted(pts)] for ci, pts in enumerate(circles)]
    info = {"offset": off2, "edges1": e1n, "edges2": e2n, "circles": circ}
    return out, info


def compatible_orbit_pairs(F1: FatGraphMap, F2: FatGraphMap) -> list[tuple[int, int]]:
    """Indices into :func:`special_orbits` of cone-point orbits that can be glued."""
    n = F1.order()
    if F2.order() != n:
        return []
    O1, O2 = special_orbits(F1), special_orbits(F2)
    out = []
    for i, a in enumerate(O1):
        for j, b in enumerate(O2):
            (c1, m1), (c2, m2) = a.cone, b.cone
            if m1 == m2 and (c1 + c2) % m1 == 0:
                out.append((i, j))
    return out


def _equivariant(F: FatGraphMap) -> _Equivariant:
    return _Equivariant(F.graph.map, list(F.perm), list(F.graph.labels))


def glue_compatible(
    F1: FatGraphMap,
    F2: FatGraphMap,
    compat: tuple[int, int] | None = None,
    base: tuple[str, str] | None = None,
    arc_names: dict[str, str] | None = None,
) -> tuple[FatGraph, FatGraphMap]:
    r"""
    Glue two automorphisms along a compatible pair of cone-point orbits.

    ``compat`` indexes :func:`special_orbits` of each map (default: the
    first pair of :func:`compatible_orbit_pairs`). The glued circles are
    matched by ``base = (x1, x2)``, a directed edge at a glued vertex of
    each graph, extended equivariantly. ``arc_names`` names the connector
    arc that follows a given directed edge of the first graph; other arcs
    are called ``g{i}_{j}`` (vertex ``i`` of the orbit, corner ``j``).

    EXAMPLES::

        >>> from surface_actions.polygon import build_polygon
        >>> F1 = automorphism_from_rotation(build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))")))
        >>> P2 = build_polygon(DataSet.parse("(6,0;(1,2),(2,3),(5,6))"))
        >>> F2 = automorphism_from_rotation(P2).relabel({"a0": "b0", "a1": "b1", "a2": "b2"})
        >>> G, F = glue_compatible(F1, F2, (1, 1))
        >>> quotient_data(F), graph_genus(G)
        (DataSet(6,0;(1,2),(1,2),(1,6),(5,6)), 3)
    """
    n = F1.order()
    if F2.order() != n:
        raise NotCompatible("automorphisms have different orders")
    pairs = compatible_orbit_pairs(F1, F2)
    if compat is None:
        if not pairs:
            raise NotCompatible("no compatible pair of orbits")
        compat = pairs[0]
    if tuple(compat) not in pairs:
        raise NotCompatible(f"orbits {compat} are not compatible")
    O1, O2 = special_orbits(F1)[compat[0]], special_orbits(F2)[compat[1]]
    E1, r1, _ = _as_vertex_orbit(_equivariant(F1), O1, n, "s")
    E2, r2, _ = _as_vertex_orbit(_equivariant(F2), O2, n, "t")
    if base is not None:
        lab1 = {x: d for d, x in enumerate(E1.labels)}
        lab2 = {x: d for d, x in enumerate(E2.labels)}
        try:
            r1, r2 = lab1[base[0]], lab2[base[1]]
        except KeyError as exc:
            raise NotCompatible(f"unknown base edge {exc.args[0]}") from None
    E, _ = glue_equivariant(E1, r1, E2, r2, n, arc_names)
    G = FatGraph(E.M, E.labels)
    return G, FatGraphMap(G, E.f)
