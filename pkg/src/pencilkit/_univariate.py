"""Dense univariate polynomials over a :class:`Field`.

Coefficients are raw field values stored low degree first; the zero
polynomial is the empty list.  Only what the bivariate gcd and the binary
forms of the spectrum module need lives here.
"""

from __future__ import annotations

from .exact_arith import Field, Raw

UPoly = list  # list[Raw], low -> high, no trailing zeros


def trim(a: UPoly) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: UPoly) -> int:
    """Degree, with -1 for the zero polynomial (internal use only)."""
    return len(a) - 1


def add(F: Field, a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F: Field, a: UPoly, b: UPoly) -> UPoly:
    return add(F, a, [F.neg(c) for c in b])


def scale(F: Field, a: UPoly, c: Raw) -> UPoly:
    if c == 0:
        return []
    return trim([F.mul(x, c) for x in a])


def mul(F: Field, a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim([F.reduce(c) for c in out])


def divmod_(F: Field, a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv_lc = F.inv(b[-1])
    q = [F.zero] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = F.mul(r[k + db], inv_lc)
        q[k] = c
        if c != 0:
            for j, y in enumerate(b):
                r[k + j] = F.sub(r[k + j], F.mul(c, y))
    return trim(q), trim(r[:db])


def monic(F: Field, a: UPoly) -> UPoly:
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: Field, a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (empty list if both are zero)."""
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def exact_div(F: Field, a: UPoly, b: UPoly) -> UPoly:
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def derivative(F: Field, a: UPoly) -> UPoly:
    return trim([F.reduce(F.coerce(i) * c) for i, c in enumerate(a)][1:])


def evaluate(F: Field, a: UPoly, x: Raw) -> Raw:
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def interpolate(F: Field, xs: list, ys: list) -> UPoly:
    """Newton divided differences through the points (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    poly: UPoly = []
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [F.zero] + poly
        tail = scale(F, poly, F.neg(xs[i]))
        poly = add(F, add(F, shifted, tail), [coef[i]] if coef[i] != 0 else [])
    return trim(poly)


def squarefree_part(F: Field, a: UPoly) -> UPoly:
    """Product of the distinct irreducible factors (characteristic 0 or > deg a)."""
    if deg(a) <= 0:
        return monic(F, a)
    g = gcd(F, a, derivative(F, a))
    return monic(F, exact_div(F, a, g))


def root_multiplicity(F: Field, a: UPoly, x: Raw) -> int:
    """Order of vanishing of a at x (a must be nonzero)."""
    k = 0
    lin = [F.neg(x), F.one]
    while a and evaluate(F, a, x) == 0:
        a = exact_div(F, a, lin)
        k += 1
    return k
