"""Exact integer matrix helpers on top of sympy's DomainMatrix."""

from __future__ import annotations

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import NoLift

IntRows = list[list[int]]


def dm(rows: IntRows, domain=ZZ) -> DomainMatrix:
    rows = [list(map(int, r)) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix([[domain(x) for x in r] for r in rows], (n, m), domain)


def to_rows(M: DomainMatrix) -> IntRows:
    out = []
    for r in M.to_Matrix().tolist():
        row = []
        for x in r:
            if getattr(x, "q", 1) != 1:
                raise NoLift("non-integral entry")
            row.append(int(x))
        out.append(row)
    return out


def identity(n: int) -> IntRows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntRows, B: IntRows) -> IntRows:
    if not A or not B:
        return []
    return to_rows(dm(A) * dm(B))


def transpose(A: IntRows) -> IntRows:
    return [list(r) for r in zip(*A)] if A else []


def solve(P: IntRows, B: IntRows) -> IntRows:
    """The integer ``X`` with ``P X = B`` for square invertible ``P``."""
    Pq = dm(P, QQ)
    if Pq.shape[0] != Pq.shape[1] or Pq.rank() != Pq.shape[0]:
        raise NoLift("basis matrix is singular")
    X = Pq.inv() * dm(B, QQ)
    return to_rows(X)


def det(A: IntRows) -> int:
    if not A:
        return 1
    return int(dm(A).det())


def mat_order(M: IntRows, limit: int = 10000) -> int:
    """Multiplicative order of ``M`` (0 if above ``limit``)."""
    n = len(M)
    I = dm(identity(n))
    A = dm(M)
    P = A
    for k in range(1, limit + 1):
        if P == I:
            return k
        P = P * A
    return 0


def block_diag(*blocks: IntRows) -> IntRows:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    o = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[o + i][o + j] = x
        o += len(b)
    return out
