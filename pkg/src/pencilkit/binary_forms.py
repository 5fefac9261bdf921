"""Binary forms S(U, V) stored through their dehomogenization p(u) = S(u, 1).

A form of degree D is the pair (p, D) with deg p <= D; the root (1:0) has
multiplicity D - deg p and a root u = mu of p is the point (mu:1).

Rational roots over Q are found exactly: real roots of the squarefree
integer part q are isolated with a Sturm sequence and refined by exact
bisection until each isolating interval is shorter than 1/|lc(q)|.  A
rational root of q has a denominator dividing lc(q), so the only possible
candidate in such an interval is tested directly; the search is complete.
Over F_p the split part gcd(p, u^p - u) is factored by equal-degree
splitting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm

from . import _univariate as U
from .exact_arith import Field

__all__ = ["BinaryForm", "rational_roots", "nonsplit_classes", "squarefree_classes"]


@dataclass(frozen=True)
class BinaryForm:
    field: Field
    coeffs: tuple  # p(u) low -> high, trimmed
    degree: int  # D, the degree of the form

    @classmethod
    def from_univariate(cls, field: Field, p: list, degree: int) -> "BinaryForm":
        p = U.trim(list(p))
        if len(p) - 1 > degree:
            raise ValueError("univariate part exceeds the form degree")
        return cls(field, tuple(p), degree)

    @classmethod
    def zero(cls, field: Field, degree: int) -> "BinaryForm":
        return cls(field, (), degree)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def infinity_multiplicity(self) -> int:
        """Multiplicity of the root (1:0)."""
        if self.is_zero():
            raise ValueError("the zero form has every point as a root")
        return self.degree - (len(self.coeffs) - 1)

    def evaluate(self, mu, lam):
        F = self.field
        acc = F.zero
        for i, c in enumerate(self.coeffs):
            acc = F.add(acc, F.mul(c, F.reduce(mu**i * lam ** (self.degree - i))))
        return acc

    def monic(self) -> "BinaryForm":
        return BinaryForm(self.field, tuple(U.monic(self.field, list(self.coeffs))), self.degree)

    def gcd(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        g = U.gcd(self.field, list(self.coeffs), list(other.coeffs))
        inf = min(self.infinity_multiplicity, other.infinity_multiplicity)
        return BinaryForm(self.field, tuple(g), len(g) - 1 + inf)

    def root_multiplicity(self, point: tuple) -> int:
        mu, lam = point
        if lam == 0:
            return self.infinity_multiplicity
        u = self.field.div(mu, lam)
        return U.root_multiplicity(self.field, list(self.coeffs), u)

    def coefficient_strings(self) -> list[str]:
        """Coefficients of U^i V^(D-i) for i = 0..D."""
        F = self.field
        out = [F.format(c) for c in self.coeffs]
        out += ["0"] * (self.degree + 1 - len(out))
        return out

    def __str__(self):
        F = self.field
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i] if i < len(self.coeffs) else 0
            if c == 0:
                continue
            mono = "*".join(
                s for s in ((f"U^{i}" if i > 1 else "U" if i == 1 else ""),
                            (f"V^{self.degree - i}" if self.degree - i > 1 else "V" if self.degree - i == 1 else "")) if s
            )
            cs = F.format(c)
            parts.append(cs if not mono else (mono if cs == "1" else f"{cs}*{mono}"))
        return " + ".join(parts) if parts else "0"


# squarefree decomposition of univariate polynomials


def squarefree_classes(F: Field, p: list) -> list[tuple[list, int]]:
    """Yun decomposition p = c * prod s_k^k (characteristic 0 or > deg p)."""
    p = U.monic(F, list(p))
    if len(p) <= 1:
        return []
    dp = U.derivative(F, p)
    a = U.gcd(F, p, dp)
    b = U.exact_div(F, p, a)
    c = U.exact_div(F, dp, a) if a else dp
    out = []
    k = 1
    while len(b) > 1:
        d = U.sub(F, c, U.derivative(F, b))
        s = U.gcd(F, b, d)
        if len(s) > 1:
            out.append((s, k))
        b = U.exact_div(F, b, s)
        c = U.exact_div(F, d, s)
        k += 1
    return out


# rational roots over Q


def _primitive_int(p: list) -> list[int]:
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def _eval_frac(p: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sturm_chain(q: list[int]) -> list[list[Fraction]]:
    F = Field.rationals()
    s0 = [Fraction(c) for c in q]
    s1 = U.derivative(F, s0)
    chain = [s0, s1]
    while len(chain[-1]) > 1:
        r = U.divmod_(F, chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = []
    for s in chain:
        v = _eval_frac(s, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _rational_roots_squarefree(q: list[int]) -> list[Fraction]:
    roots = []
    if q and q[0] == 0:
        roots.append(Fraction(0))
        while q and q[0] == 0:
            q = q[1:]
    if len(q) <= 1:
        return roots
    L = abs(q[-1])
    tol = Fraction(1, L)
    bound = 1 + max(Fraction(abs(c), L) for c in q[:-1])
    chain = _sturm_chain(q)
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = _variations(chain, a) - _variations(chain, b)
        if n == 0:
            continue
        if n == 1 and b - a < tol:
            x = Fraction(floor(b * L), L)
            if x > a and _eval_frac(q, x) == 0:
                roots.append(x)
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(roots)


def _rational_roots_q(p: list) -> list[Fraction]:
    F = Field.rationals()
    sq = U.squarefree_part(F, list(p))
    return _rational_roots_squarefree(_primitive_int(sq))


# roots over F_p


def _powmod(F: Field, base: list, e: int, mod: list) -> list:
    result = [F.one]
    base = U.divmod_(F, base, mod)[1]
    while e:
        if e & 1:
            result = U.divmod_(F, U.mul(F, result, base), mod)[1]
        e >>= 1
        if e:
            base = U.divmod_(F, U.mul(F, base, base), mod)[1]
    return result


def _split_linear(F: Field, L: list, rng: random.Random) -> list[int]:
    """Roots of a monic product of distinct linear factors over F_p (p odd)."""
    p = F.characteristic
    if len(L) <= 1:
        return []
    if len(L) == 2:
        return [F.neg(L[0])]
    if p == 2:
        return [x for x in (0, 1) if U.evaluate(F, L, x) == 0]
    while True:
        a = rng.randrange(p)
        h = _powmod(F, [a, 1], (p - 1) // 2, L)
        g = U.gcd(F, L, U.sub(F, h, [1]))
        if 1 < len(g) < len(L):
            return _split_linear(F, g, rng) + _split_linear(F, U.exact_div(F, L, g), rng)


def _roots_fp(F: Field, p: list, seed: int = 0) -> list[int]:
    sq = U.squarefree_part(F, list(p))
    if len(sq) <= 1:
        return []
    xp = _powmod(F, [0, 1], F.characteristic, sq)
    L = U.gcd(F, sq, U.sub(F, xp, [0, 1]))
    return sorted(_split_linear(F, U.monic(F, L), random.Random(seed)))


def rational_roots(S: BinaryForm, seed: int = 0) -> list[tuple[tuple, int]]:
    """All roots of S defined over its field, as ((mu, lam), multiplicity).

    Points are normalized to (mu:1) or (1:0) and listed with (1:0) first.
    """
    if S.is_zero():
        raise ValueError("the zero form has every point as a root")
    F = S.field
    out = []
    inf = S.infinity_multiplicity
    if inf > 0:
        out.append(((F.one, F.zero), inf))
    p = list(S.coeffs)
    if len(p) > 1:
        roots = _rational_roots_q(p) if F.is_rational else _roots_fp(F, p, seed)
        for r in roots:
            out.append(((F.coerce(r), F.one), U.root_multiplicity(F, p, F.coerce(r))))
    return out


def nonsplit_classes(S: BinaryForm, seed: int = 0) -> list[dict]:
    """Degree and multiplicity of the part of S with no root in the field.

    Each squarefree class s_k (multiplicity k) is stripped of its linear
    factors over the field; a nonzero remainder degree is reported.
    """
    F = S.field
    out = []
    for s, k in squarefree_classes(F, list(S.coeffs)):
        roots = _rational_roots_q(s) if F.is_rational else _roots_fp(F, s, seed)
        rest = len(s) - 1 - len(roots)
        if rest > 0:
            out.append({"degree": rest, "multiplicity": k})
    return out
