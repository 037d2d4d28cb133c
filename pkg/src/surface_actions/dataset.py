r"""
Data sets of cyclic actions on closed orientable surfaces.

A data set ``(n, g0, r; (c_1, n_1), ..., (c_l, n_l))`` records the branch data
of a `C_n`-action: the genus of the quotient orbifold, the free rotation class
(only when there are no cone points), and one ``(c_i, n_i)`` pair per cone
point, where ``2*pi*c_i^{-1}/n_i`` is the local rotation angle above it.

This module validates data sets, computes genus by Riemann-Hurwitz, classifies
actions, implements the four compatibility constructions, searches for
decomposition trees, evaluates reduction-system sizes and enumerates all data
sets of a given degree and genus.

EXAMPLES::

    >>> D = DataSet.parse("(5,0;(1,5),(3,5),(1,5))")
    >>> D.genus
    2
    >>> classify(D).kind
    'Type1'
    >>> compose_self(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"), (3, 4))
    DataSet(6,1;(1,2),(1,2))
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    BudgetExhausted,
    ConditionViolated,
    DegreeMismatch,
    IrreducibleType2,
    NegativeGenus,
    NonIntegralGenus,
    NotCompatible,
    NotRealizable,
    NotType1,
    NotType2,
    PreconditionFailed,
    UnsupportedCase,
)

Cone = tuple[int, int]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def units(m: int) -> list[int]:
    """Residues ``1 <= c < m`` coprime to ``m``."""
    return [c for c in range(1, m) if gcd(c, m) == 1]


def check_conditions(n: int, g0: int, r: int, cone) -> list[str]:
    r"""
    Return the list of violated conditions among ``"i"``, ``"ii"``, ``"iii"``,
    ``"iv"`` (in that order), plus ``"NonIntegralGenus"`` / ``"NegativeGenus"``.

    An empty list means the tuple is a valid data set.

    EXAMPLES::

        >>> check_conditions(4, 0, 0, [(1, 2), (1, 4), (3, 4)])
        ['iv']
        >>> check_conditions(4, 0, 0, [(1, 2), (1, 4)])
        ['iv', 'NonIntegralGenus']
        >>> check_conditions(5, 0, 0, [(1, 5), (3, 5), (1, 5)])
        []
    """
    bad = []
    if n < 1 or g0 < 0:
        return ["i"]
    cone = [(int(c), int(m)) for c, m in cone]
    ell = len(cone)
    if n == 1:
        # The trivial group has a single residue class; read (i) as r = 0.
        if ell > 0 or r % 1 != 0:
            bad.append("i")
    elif ell == 0:
        if r % n == 0 or gcd(r, n) != 1:
            bad.append("i")
    elif r % n != 0:
        bad.append("i")
    if any(m < 1 or n % m != 0 for _, m in cone):
        bad.append("ii")
    if any(m < 2 or gcd(c, m) != 1 for c, m in cone):
        bad.append("iii")
    if "ii" not in bad:
        total = sum((n // m) * c for c, m in cone)
        if total % n != 0:
            bad.append("iv")
    g = _genus_fraction(n, g0, cone)
    if g.denominator != 1:
        bad.append("NonIntegralGenus")
    elif g < 0:
        bad.append("NegativeGenus")
    return bad


def _genus_fraction(n: int, g0: int, cone) -> Fraction:
    chi = Fraction(n * (2 - 2 * g0))
    for _, m in cone:
        if m > 0:
            chi += Fraction(n, m) - n
    return (2 - chi) / 2


@dataclass(frozen=True)
class DataSet:
    r"""
    A validated data set. Cone points keep the order they were given in;
    equality and hashing use the canonical order (sorted by ``(n_i, c_i)``).

    Use :func:`validate` or :meth:`parse` to build one; the constructor
    validates too and raises a :class:`~surface_actions.errors.DomainError`.
    """

    n: int
    g0: int
    cone: tuple[Cone, ...] = ()
    r: int = 0
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cone = tuple((int(c) % int(m) if int(m) > 0 else int(c), int(m)) for c, m in self.cone)
        object.__setattr__(self, "cone", cone)
        object.__setattr__(self, "r", int(self.r) % self.n if self.n >= 1 else int(self.r))
        bad = check_conditions(self.n, self.g0, self.r, cone)
        if bad:
            which = bad[0]
            if which == "NonIntegralGenus":
                raise NonIntegralGenus(f"{self._text()} has fractional genus", which=None)
            if which == "NegativeGenus":
                raise NegativeGenus(f"{self._text()} has negative genus", which=None)
            raise ConditionViolated(
                f"{self._text()} violates condition(s) {', '.join(bad)}", which=which
            )
        object.__setattr__(
            self, "_key", (self.n, self.g0, self.r, tuple(sorted(cone, key=lambda p: (p[1], p[0]))))
        )

    def __eq__(self, other):
        return isinstance(other, DataSet) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.n, self.g0, self.r, tuple((m, c) for c, m in self.canonical().cone))

    # ---- basic invariants
    @property
    def ell(self) -> int:
        return len(self.cone)

    @property
    def genus(self) -> int:
        return int(_genus_fraction(self.n, self.g0, self.cone))

    def canonical(self) -> "DataSet":
        """The same data set with cone points sorted by ``(n_i, c_i)``."""
        return DataSet(self.n, self.g0, tuple(sorted(self.cone, key=lambda p: (p[1], p[0]))), self.r)

    def is_identical(self, other: "DataSet") -> bool:
        """Equality including cone order."""
        return (self.n, self.g0, self.r, self.cone) == (other.n, other.g0, other.r, other.cone)

    def with_cones(self, cone, g0=None) -> "DataSet":
        return DataSet(self.n, self.g0 if g0 is None else g0, tuple(cone), 0)

    def is_realizable(self) -> bool:
        r"""
        Whether some `C_n`-action has this data. The arithmetic conditions
        omit one requirement: for a spherical quotient the cone orders must
        generate `C_n`, i.e. ``lcm(n_i) = n``.

        EXAMPLES::

            >>> DataSet(4, 0, ((1, 2),) * 4).is_realizable()
            False
        """
        if self.g0 > 0 or self.ell == 0:
            return True
        l = 1
        for _, m in self.cone:
            l = _lcm(l, m)
        return l == self.n

    # ---- text and JSON
    def _text(self) -> str:
        head = f"{self.n},{self.g0}" + (f",{self.r}" if self.r else "")
        return "(" + head + ";" + ",".join(f"({c},{m})" for c, m in self.cone) + ")"

    def __str__(self):
        return self._text()

    def __repr__(self):
        return f"DataSet{self._text()}"

    def to_json(self) -> dict:
        return {"n": self.n, "g0": self.g0, "r": self.r, "cone": [[c, m] for c, m in self.cone]}

    @classmethod
    def from_json(cls, obj) -> "DataSet":
        return cls(int(obj["n"]), int(obj.get("g0", 0)), tuple((int(c), int(m)) for c, m in obj.get("cone", [])), int(obj.get("r", 0)))

    @classmethod
    def parse(cls, text: str) -> "DataSet":
        r"""
        Parse the printed notation ``(n,g0[,r];(c,m),...)``.

        EXAMPLES::

            >>> DataSet.parse("(2,1,1;)")
            DataSet(2,1,1;)
        """
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"\((\d+),(\d+)(?:,(\d+))?;(.*)\)", text)
        if not m:
            raise ValueError(f"cannot parse data set {text!r}")
        n, g0, r, rest = int(m[1]), int(m[2]), int(m[3] or 0), m[4]
        cone = tuple((int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", rest))
        return cls(n, g0, cone, r)


def validate(n: int, g0: int, r: int, cone) -> DataSet:
    """Validate a raw tuple; raises the first violated condition's error."""
    return DataSet(int(n), int(g0), tuple(tuple(p) for p in cone), int(r))


def validation_report(n: int, g0: int, r: int, cone) -> dict:
    """JSON-ready report: ``valid``, ``genus`` or the violated conditions."""
    bad = check_conditions(n, g0, r, cone)
    if bad:
        return {"valid": False, "violations": bad}
    D = validate(n, g0, r, cone)
    out = {"valid": True, "genus": D.genus}
    notes = classify(D).notes
    if notes:
        out["notes"] = list(notes)
    if not D.is_realizable():
        out["realizable"] = False
    return out


def genus(D: DataSet) -> int:
    return D.genus


# ---------------------------------------------------------------- classify
@dataclass(frozen=True)
class ActionClass:
    kind: str  # "Rotational", "Type1" or "Type2"
    irreducible: bool
    notes: tuple[str, ...] = ()


def _rotational_pattern(D: DataSet) -> tuple[bool, tuple[str, ...]]:
    n = D.n
    if D.ell == 0 or D.ell % 2:
        return False, ()
    if any(m != n for _, m in D.cone):
        return False, ()
    k = D.ell // 2
    counts = {}
    for c, _ in D.cone:
        counts[c] = counts.get(c, 0) + 1
    cs = sorted(counts)
    if n == 2:
        # every cone is (1,2); the pattern needs k >= 2 when n = 2
        if k == 1:
            return False, ("n=2 with a single pair (1,2),(1,2) is not matched by the literal rotational pattern",)
        return True, ()
    s = cs[0]
    paired = (s * 2 == n and counts[s] == 2 * k) or (
        len(cs) == 2 and cs[1] == n - s and counts[s] == k and counts[n - s] == k
    )
    if not paired:
        return False, ()
    if k != 1:
        return False, ()
    return True, ()


def classify(D: DataSet) -> ActionClass:
    r"""
    Rotational, Type 1 (three cone points, one of full order) or Type 2.

    EXAMPLES::

        >>> classify(DataSet.parse("(3,1;(1,3),(2,3))")).kind
        'Rotational'
        >>> classify(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))")).kind
        'Type2'
    """
    if D.r != 0 or (D.n == 1 and D.ell == 0):
        return ActionClass("Rotational", False)
    rot, notes = _rotational_pattern(D)
    if rot:
        return ActionClass("Rotational", False, notes)
    irreducible = D.ell == 3 and D.g0 == 0
    if D.ell == 3 and any(m == D.n for _, m in D.cone):
        return ActionClass("Type1", irreducible, notes)
    return ActionClass("Type2", irreducible, notes)


def is_type1(D: DataSet) -> bool:
    return classify(D).kind == "Type1"


# ------------------------------------------------------------ compositions
def _check_index(D: DataSet, i: int) -> None:
    if not 1 <= i <= D.ell:
        raise PreconditionFailed(f"cone index {i} out of range for {D}")


def self_compatible_indices(D: DataSet) -> list[tuple[int, int]]:
    r"""
    All 1-based ``(r, s)``, ``r < s``, with ``n_r = n_s`` and ``c_r + c_s = 0``.

    EXAMPLES::

        >>> self_compatible_indices(DataSet.parse("(5,0;(1,5),(2,5),(3,5),(4,5))"))
        [(1, 4), (2, 3)]
    """
    if D.ell < 4:
        raise PreconditionFailed("self compatibility needs at least four cone points")
    out = []
    for r, s in itertools.combinations(range(D.ell), 2):
        (cr, mr), (cs, ms) = D.cone[r], D.cone[s]
        if mr == ms and (cr + cs) % mr == 0:
            out.append((r + 1, s + 1))
    return out


def compose_self(D: DataSet, rs: tuple[int, int]) -> DataSet:
    """Glue the orbits over cone points ``r`` and ``s``; ``g0`` grows by one."""
    r, s = rs
    _check_index(D, r)
    _check_index(D, s)
    (cr, mr), (cs, ms) = D.cone[r - 1], D.cone[s - 1]
    if r == s or mr != ms or (cr + cs) % mr != 0:
        raise NotCompatible(f"cone points {r},{s} of {D} are not self compatible")
    rest = [p for i, p in enumerate(D.cone, 1) if i not in (r, s)]
    return DataSet(D.n, D.g0 + 1, tuple(rest))


def compose_trivial_self(D: DataSet, gp: int) -> DataSet:
    """Attach ``gp`` handles along free orbits: ``(n, g0+gp; same cones)``."""
    if gp < 1:
        raise PreconditionFailed("the number of trivial handles must be positive")
    return DataSet(D.n, D.g0 + gp, D.cone, D.r)


def strip_trivial_handles(D: DataSet) -> tuple[DataSet, int]:
    r"""
    Inverse of :func:`compose_trivial_self` on Type 1 sets.

    EXAMPLES::

        >>> strip_trivial_handles(DataSet.parse("(6,1;(1,2),(1,3),(1,6))"))
        (DataSet(6,0;(1,2),(1,3),(1,6)), 1)
    """
    if not is_type1(D):
        raise NotType1(f"{D} is not a Type 1 data set")
    return DataSet(D.n, 0, D.cone), D.g0


def compatibility_order(D1: DataSet, D2: DataSet, rs) -> int:
    """The common order ``m`` of the glued cone points (checks compatibility)."""
    if D1.n != D2.n:
        raise DegreeMismatch(f"degrees {D1.n} and {D2.n} differ")
    r, s = rs
    _check_index(D1, r)
    _check_index(D2, s)
    (c1, m1), (c2, m2) = D1.cone[r - 1], D2.cone[s - 1]
    if m1 != m2 or (c1 + c2) % m1 != 0:
        raise NotCompatible(f"({c1},{m1}) and ({c2},{m2}) are not compatible")
    return m1


def compose_pair(D1: DataSet, D2: DataSet, rs: tuple[int, int]) -> DataSet:
    r"""
    The Type 2 set built from an ``(r, s)``-compatible pair.

    EXAMPLES::

        >>> compose_pair(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"),
        ...              DataSet.parse("(6,0;(1,2),(2,3),(5,6))"), (3, 3))
        DataSet(6,0;(1,2),(1,3),(1,2),(2,3))
    """
    compatibility_order(D1, D2, rs)
    r, s = rs
    cone = [p for i, p in enumerate(D1.cone, 1) if i != r] + [p for i, p in enumerate(D2.cone, 1) if i != s]
    return DataSet(D1.n, D1.g0 + D2.g0, tuple(cone))


def compose_trivial_pair(D1: DataSet, D2: DataSet) -> DataSet:
    """Glue along full free orbits; genus is ``g1 + g2 + n - 1``."""
    if D1.n != D2.n:
        raise DegreeMismatch(f"degrees {D1.n} and {D2.n} differ")
    return DataSet(D1.n, D1.g0 + D2.g0, D1.cone + D2.cone)


def pair_size(D1: DataSet, D2: DataSet, D: DataSet) -> int:
    """``A(D1, D2) = 1 + g(D) - g(D1) - g(D2)``: the number of glued circles."""
    return 1 + D.genus - D1.genus - D2.genus


# ----------------------------------------------------------- decomposition
@dataclass(frozen=True)
class Decomposition:
    r"""
    A node of a compatibility tree.

    ``kind`` is one of ``"leaf"``, ``"self"``, ``"trivial_self"``, ``"pair"``,
    ``"trivial_pair"``; ``children`` holds sub-trees, ``rs`` the 1-based
    cone indices (relative to the children's evaluated cone order) and
    ``handles`` the number of trivial handles.
    """

    kind: str
    children: tuple["Decomposition", ...] = ()
    data: DataSet | None = None
    rs: tuple[int, int] | None = None
    handles: int = 0

    def evaluate(self) -> DataSet:
        if self.kind == "leaf":
            return self.data
        vals = [c.evaluate() for c in self.children]
        if self.kind == "self":
            return compose_self(vals[0], self.rs)
        if self.kind == "trivial_self":
            return compose_trivial_self(vals[0], self.handles)
        if self.kind == "pair":
            return compose_pair(vals[0], vals[1], self.rs)
        if self.kind == "trivial_pair":
            return compose_trivial_pair(vals[0], vals[1])
        raise ValueError(self.kind)

    def leaves(self) -> list[DataSet]:
        if self.kind == "leaf":
            return [self.data]
        return [d for c in self.children for d in c.leaves()]

    def nodes(self) -> list["Decomposition"]:
        return [self] + [n for c in self.children for n in c.nodes()]

    def to_json(self) -> dict:
        out = {"node": self.kind}
        if self.kind == "leaf":
            out["data"] = self.data.to_json()
            return out
        if self.rs is not None:
            out["rs"] = list(self.rs)
        if self.kind == "trivial_self":
            out["handles"] = self.handles
        out["value"] = self.evaluate().to_json()
        out["children"] = [c.to_json() for c in self.children]
        return out

    @classmethod
    def from_json(cls, obj) -> "Decomposition":
        kind = obj["node"]
        if kind == "leaf":
            return cls("leaf", data=DataSet.from_json(obj["data"]))
        kids = tuple(cls.from_json(c) for c in obj["children"])
        rs = tuple(obj["rs"]) if "rs" in obj else None
        return cls(kind, kids, rs=rs, handles=int(obj.get("handles", 0)))


def _leaf_tree(D: DataSet) -> Decomposition:
    base, gp = strip_trivial_handles(D)
    leaf = Decomposition("leaf", data=base.canonical())
    return Decomposition("trivial_self", (leaf,), handles=gp) if gp else leaf


def _index_of(cone, item) -> int:
    return cone.index(item) + 1


def _multiset_minus(cone, part):
    rest = list(cone)
    for p in part:
        rest.remove(p)
    return rest


def three_action_tree(E: DataSet) -> Decomposition:
    r"""
    Tree for ``<E, 1>`` where ``E`` is an irreducible Type 2 set.

    Two pair gluings chain three irreducible Type 1 sets, then a
    self gluing closes the last two full-order cone points. Among the valid
    choices the one whose third constituent has equal rotation data at its
    two full-order points is preferred, then the smallest residue.
    """
    n = E.n
    for k3 in range(3):
        c3, n3 = E.cone[k3]
        o = [E.cone[i] for i in range(3) if i != k3]
        (c1, n1), (c2, n2) = o
        if (n // n3) % 2 or (n // n1) % 2 == 0 or (n // n2) % 2 == 0:
            continue
        found = []
        for x in units(n3):
            xp = (-x) % n3
            y = (-(n // n1) * c1 - (n // n3) * x) % n
            yp = (-(n // n2) * c2 - (n // n3) * xp) % n
            if gcd(y, n) != 1 or gcd(yp, n) != 1:
                continue
            found.append((0 if y == yp else 1, x, xp, y, yp))
        if not found:
            continue
        _, x, xp, y, yp = min(found)
        L1 = DataSet(n, 0, ((c1, n1), (x, n3), (y, n))).canonical()
        L2 = DataSet(n, 0, ((c2, n2), (xp, n3), (yp, n))).canonical()
        L3 = DataSet(n, 0, ((c3, n3), ((-yp) % n, n), ((-y) % n, n))).canonical()
        # L3 glued to L1 on order-n points, then L2 on order-n3 points
        r = _index_of(L3.cone, ((-y) % n, n))
        if L3.cone.count(((-y) % n, n)) == 2:
            r = 3
        t1 = Decomposition("pair", (Decomposition("leaf", data=L3), Decomposition("leaf", data=L1)),
                           rs=(r, _index_of(L1.cone, (y, n))))
        V1 = t1.evaluate()
        t2 = Decomposition("pair", (t1, Decomposition("leaf", data=L2)),
                           rs=(_index_of(V1.cone, (x, n3)), _index_of(L2.cone, (xp, n3))))
        V2 = t2.evaluate()
        i = _index_of(V2.cone, ((-yp) % n, n))
        j = _index_of(V2.cone, (yp, n))
        t3 = Decomposition("self", (t2,), rs=(min(i, j), max(i, j)))
        if t3.evaluate() == compose_trivial_self(E, 1):
            return t3
    raise UnsupportedCase(f"no three-action construction found for <{E},1>")


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.memo: dict[tuple, Decomposition | None] = {}

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExhausted(f"decomposition search exceeded {self.budget} steps")

    def run(self, D: DataSet, depth: int) -> Decomposition | None:
        key = (D._key, depth)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        out = self._expand(D, depth)
        self.memo[key] = out
        return out

    def _expand(self, D: DataSet, depth: int) -> Decomposition | None:
        cls = classify(D)
        if cls.kind == "Type1":
            return _leaf_tree(D)
        if cls.kind == "Rotational" or depth == 0 or not D.is_realizable():
            return None
        n = D.n
        cone = list(D.cone)
        # (r,s)-pair splits: peel a Type 1 constituent using two cone points
        for S in _sub_multisets(cone, 2):
            for m in divisors(n)[1:]:
                for c in units(m):
                    P_cone = tuple(S) + ((c, m),)
                    if all(q != n for _, q in P_cone):
                        continue
                    R_cone = tuple(_multiset_minus(cone, S)) + (((m - c) % m, m),)
                    for gP in range(D.g0 + 1):
                        P = _try(n, gP, P_cone)
                        R = _try(n, D.g0 - gP, R_cone)
                        if P is None or R is None or not is_type1(P):
                            continue
                        if R.genus >= D.genus:
                            continue
                        sub = self.run(R.canonical(), depth - 1)
                        if sub is None:
                            continue
                        Pc, Rc = P.canonical(), sub.evaluate()
                        left = _leaf_tree(Pc)
                        rs = (_index_of(Pc.cone, (c, m)), _index_of(Rc.cone, ((m - c) % m, m)))
                        return Decomposition("pair", (left, sub), rs=rs)
        # trivial pairs: a Type 1 constituent carrying three of the cone points
        for S in _sub_multisets(cone, 3):
            rest = _multiset_minus(cone, S)
            if not rest:
                continue
            for gP in range(D.g0 + 1):
                P = _try(n, gP, tuple(S))
                R = _try(n, D.g0 - gP, tuple(rest))
                if P is None or R is None or not is_type1(P):
                    continue
                sub = self.run(R.canonical(), depth - 1)
                if sub is not None:
                    return Decomposition("trivial_pair", (_leaf_tree(P.canonical()), sub))
        # <E,1> with E irreducible Type 2
        if D.g0 == 1 and D.ell == 3:
            E = DataSet(n, 0, D.cone)
            if classify(E).kind == "Type2" and E.is_realizable():
                try:
                    return three_action_tree(E)
                except UnsupportedCase:
                    pass
        if D.g0 >= 1:
            # self splits: reopen a handle into two compatible cone points
            for m in divisors(n)[1:]:
                for c in units(m):
                    if c > m - c:
                        continue
                    Dp = _try(n, D.g0 - 1, tuple(cone) + ((c, m), (m - c, m)))
                    if Dp is None:
                        continue
                    sub = self.run(Dp.canonical(), depth - 1)
                    if sub is None:
                        continue
                    V = sub.evaluate()
                    i = _index_of(V.cone, (c, m))
                    j = 1 + next(k for k, p in enumerate(V.cone) if p == (m - c, m) and k != i - 1)
                    return Decomposition("self", (sub,), rs=(min(i, j), max(i, j)))
            # trivial self splits
            for gp in range(1, D.g0 + 1):
                Dp = _try(n, D.g0 - gp, tuple(cone))
                if Dp is None:
                    continue
                sub = self.run(Dp.canonical(), depth - 1)
                if sub is not None:
                    return Decomposition("trivial_self", (sub,), handles=gp)
        return None


def _try(n, g0, cone) -> DataSet | None:
    if check_conditions(n, g0, 0, cone):
        return None
    return DataSet(n, g0, cone)


def _sub_multisets(cone, k):
    seen = set()
    for idx in itertools.combinations(range(len(cone)), k):
        part = tuple(cone[i] for i in idx)
        if part not in seen:
            seen.add(part)
            yield part


def decompose(D: DataSet, budget: int = 200000, max_depth: int = 64) -> Decomposition:
    r"""
    A compatibility tree whose leaves are irreducible Type 1 sets.

    Iterative deepening over candidate Type 1 constituents of the same
    degree; pair splits are tried before self splits, in a fixed order.

    EXAMPLES::

        >>> t = decompose(DataSet.parse("(6,0;(1,2),(1,2),(1,3),(2,3))"))
        >>> t.kind, [str(x) for x in t.leaves()]
        ('pair', ['(6,0;(1,2),(1,3),(1,6))', '(6,0;(1,2),(2,3),(5,6))'])
    """
    D = D.canonical()
    cls = classify(D)
    if cls.kind == "Type1":
        return _leaf_tree(D)
    if cls.kind == "Rotational":
        raise NotType2(f"{D} is rotational")
    if cls.notes:
        # degree 2 has no Type 1 sets; the lone-pair pattern is a rotation in disguise
        raise NotType2(f"{D}: {cls.notes[0]}")
    if not D.is_realizable():
        raise NotRealizable(f"the cone orders of {D} do not generate C_{D.n}")
    if cls.irreducible:
        raise IrreducibleType2(f"{D} is irreducible; decompose <D,1> instead")
    search = _Search(budget)
    for depth in range(1, max_depth + 1):
        tree = search.run(D, depth)
        if tree is not None:
            return tree
    raise BudgetExhausted(f"no tree found up to depth {max_depth}")


# ------------------------------------------------------- reduction systems
def reduction_system_size(D1: DataSet, D2: DataSet | None = None, rs=None) -> int:
    r"""
    Size of a maximal reduction system.

    With one argument ``D1`` must be Type 1. With two Type 1 arguments the
    pair is glued along ``rs`` (or along full orbits when ``rs`` is None).

    EXAMPLES::

        >>> reduction_system_size(DataSet.parse("(6,1;(1,2),(1,3),(1,6))"))
        12
        >>> reduction_system_size(DataSet.parse("(3,2;(1,3),(1,3),(1,3))"))
        15
    """
    if D2 is None:
        if not is_type1(D1):
            raise UnsupportedCase("closed formula only for Type 1 actions or compatible pairs")
        return _type1_size(D1.n, D1.g0)
    for X in (D1, D2):
        if not is_type1(X):
            raise UnsupportedCase("closed formula only for pairs of Type 1 actions")
    D = compose_pair(D1, D2, rs) if rs is not None else compose_trivial_pair(D1, D2)
    k = D.genus - D1.genus - D2.genus + 1
    return pair_reduction_size(D1.n, D1.g0, D2.g0, k)


def _type1_size(n: int, g0: int) -> int:
    if g0 > 1:
        return n * (3 * g0 - 1)
    if g0 == 1:
        return 2 * n
    return 0


def pair_reduction_size(n: int, a: int, b: int, k: int) -> int:
    """The six-branch formula for a compatible pair with quotient genera a, b."""
    if a > 1 and b > 1:
        return n * (3 * a + 3 * b - 2) + k
    if a > 1 and b == 1:
        return n * (3 * a - 1) + k + 2 * n
    if b > 1 and a == 1:
        return n * (3 * b - 1) + k + 2 * n
    if b > 1 and a == 0:
        return n * (3 * b - 1) + k
    if a > 1 and b == 0:
        return n * (3 * a - 1) + k
    return k


# -------------------------------------------------------------- enumerate
def enumerate_datasets(n: int, g: int) -> list[DataSet]:
    r"""
    All valid data sets of degree ``n`` and genus ``g`` in canonical order.

    EXAMPLES::

        >>> [str(D) for D in enumerate_datasets(1, 3)]
        ['(1,3;)']
        >>> DataSet.parse("(5,0;(1,5),(3,5),(1,5))") in enumerate_datasets(5, 2)
        True
    """
    if n < 1 or g < 0:
        raise PreconditionFailed("need n >= 1 and g >= 0")
    out: list[DataSet] = []
    if n == 1:
        return [DataSet(1, g, ())]
    orders = divisors(n)[1:]
    g0 = 0
    while n * (2 * g0 - 2) <= 2 * g - 2:
        budget = n * (2 - 2 * g0) - 2 + 2 * g  # sum of (n - n/n_i)
        if budget == 0:
            for r in units(n):
                out.append(DataSet(n, g0, (), r))
        for ms in _order_multisets(n, orders, budget):
            groups = []
            for m in sorted(set(ms)):
                k = ms.count(m)
                groups.append([tuple((c, m) for c in cs) for cs in itertools.combinations_with_replacement(units(m), k)])
            for parts in itertools.product(*groups):
                key = tuple(sorted((p for part in parts for p in part), key=lambda p: (p[1], p[0])))
                if sum((n // m) * c for c, m in key) % n == 0:
                    out.append(DataSet(n, g0, key))
        g0 += 1
    out.sort(key=DataSet.sort_key)
    return out


def _order_multisets(n, orders, budget):
    """Non-decreasing order tuples with sum of (n - n/m) equal to budget."""
    if budget <= 0:
        return

    def rec(start, left, acc):
        if left == 0:
            if acc:
                yield tuple(acc)
            return
        for i in range(start, len(orders)):
            w = n - n // orders[i]
            if w <= left:
                acc.append(orders[i])
                yield from rec(i, left - w, acc)
                acc.pop()

    yield from rec(0, budget, [])
