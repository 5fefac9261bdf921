"""Exact dense linear algebra over Q and F_p.

Matrices are lists of rows of raw field values.  Over Q every row is first
scaled to integers and the reduction runs fraction-free: a row update is
``pivot * row - row[c] * pivot_row`` followed by division by the row
content, which keeps entries small without ever forming a Fraction.  Over
F_p plain modular Gauss-Jordan is used.  Pivoting is deterministic: the
first row (in order) with a nonzero entry in the current column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .exact_arith import Field, Raw

Matrix = list  # list[list[Raw]]


@dataclass(frozen=True)
class Echelon:
    """Reduced row echelon form.

    ``rows[i]`` has its pivot in column ``pivots[i]``.  Over Q the rows are
    primitive integer vectors (pivot entry positive, not necessarily 1);
    over F_p pivots are normalized to 1.
    """

    field: Field
    ncols: int
    rows: tuple
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _int_row(row) -> list[int]:
    den = 1
    for x in row:
        if x != 0:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(F: Field, A: Matrix, ncols: int | None = None) -> Echelon:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if F.is_rational:
        return _echelon_q(F, A, ncols)
    return _echelon_p(F, A, ncols)


def _echelon_q(F: Field, A: Matrix, ncols: int) -> Echelon:
    rows = [_primitive(_int_row(r)) for r in A if any(x != 0 for x in r)]
    pivots: list[int] = []
    done: list[list[int]] = []
    for c in range(ncols):
        k = next((i for i, r in enumerate(rows) if r[c] != 0), None)
        if k is None:
            continue
        piv = rows.pop(k)
        if piv[c] < 0:
            piv = [-x for x in piv]
        p = piv[c]
        new_rows = []
        for r in rows:
            if r[c]:
                t = r[c]
                r = _primitive([p * x - t * y for x, y in zip(r, piv)])
            if any(r):
                new_rows.append(r)
        rows = new_rows
        for i, r in enumerate(done):
            if r[c]:
                t = r[c]
                r = _primitive([p * x - t * y for x, y in zip(r, piv)])
                if r[pivots[i]] < 0:
                    r = [-x for x in r]
                done[i] = r
        done.append(piv)
        pivots.append(c)
        if not rows:
            break
    return Echelon(F, ncols, tuple(tuple(r) for r in done), tuple(pivots))


def _echelon_p(F: Field, A: Matrix, ncols: int) -> Echelon:
    p = F.characteristic
    rows = [list(r) for r in A if any(x != 0 for x in r)]
    pivots: list[int] = []
    done: list[list[int]] = []
    for c in range(ncols):
        k = next((i for i, r in enumerate(rows) if r[c] != 0), None)
        if k is None:
            continue
        piv = rows.pop(k)
        inv = pow(piv[c], -1, p)
        piv = [x * inv % p for x in piv]
        new_rows = []
        for r in rows:
            t = r[c]
            if t:
                r = [(x - t * y) % p for x, y in zip(r, piv)]
                if any(r):
                    new_rows.append(r)
            else:
                new_rows.append(r)
        rows = new_rows
        for i, r in enumerate(done):
            t = r[c]
            if t:
                done[i] = [(x - t * y) % p for x, y in zip(r, piv)]
        done.append(piv)
        pivots.append(c)
        if not rows:
            break
    return Echelon(F, ncols, tuple(tuple(r) for r in done), tuple(pivots))


def rank(F: Field, A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return echelon(F, A).rank


def rank_mod_p(A: Matrix, p: int) -> int:
    """Rank of an integer matrix modulo p (entries need not be reduced)."""
    rows = [[x % p for x in r] for r in A]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        k = next((i for i, r in enumerate(rows) if r[c]), None)
        if k is None:
            continue
        piv = rows.pop(k)
        inv = pow(piv[c], -1, p)
        nxt = []
        for r in rows:
            t = r[c]
            if t:
                t = t * inv % p
                r = [(x - t * y) % p for x, y in zip(r, piv)]
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        rows = nxt
        rk += 1
        if not rows:
            break
    return rk


def nullspace(F: Field, A: Matrix, ncols: int | None = None) -> list[list[Raw]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    E = echelon(F, A, ncols)
    pivset = set(E.pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(E.rows, E.pivots):
            if row[free] != 0:
                if F.is_rational:
                    v[pc] = Fraction(-row[free], row[pc])
                else:
                    v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def mat_vec(F: Field, A: Matrix, v: list) -> list:
    return [F.reduce(sum(a * x for a, x in zip(row, v) if a != 0 and x != 0)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def det(F: Field, A: Matrix) -> Raw:
    """Determinant of a square matrix (Bareiss over Q, elimination over F_p)."""
    n = len(A)
    if n == 0:
        return F.one
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if not F.is_rational:
        return _det_p(A, F.characteristic)
    scale = Fraction(1)
    M = []
    for r in A:
        den = 1
        for x in r:
            if x != 0:
                den = lcm(den, x.denominator)
        scale /= den
        M.append([int(x * den) for x in r])
    return scale * _bareiss(M)


def _bareiss(M: list[list[int]]) -> int:
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def _det_p(A: Matrix, p: int) -> int:
    M = [[x % p for x in r] for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        k = next((i for i in range(c, n) if M[i][c]), None)
        if k is None:
            return 0
        if k != c:
            M[c], M[k] = M[k], M[c]
            d = -d
        pc = M[c][c]
        d = d * pc % p
        inv = pow(pc, -1, p)
        for i in range(c + 1, n):
            t = M[i][c]
            if t:
                t = t * inv % p
                M[i] = [(x - t * y) % p for x, y in zip(M[i], M[c])]
    return d % p
