"""Reduction of an n-variate polynomial to two variables.

Each variable X_i is replaced by U_i X + V_i Y + W_i with integer parameters
drawn uniformly from [-B, B], B = 10 d n, from a seeded generator.  Generic
parameters preserve the degree and the irreducibility profile; the degree is
checked and the draw repeated (at most five times) when it drops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .errors import DegreeDropPersistent, DegreeTooSmall, ZeroPolynomial
from .exact_arith import QQ, Field
from .polynomials import Poly, parse_terms

__all__ = ["BertiniReduction", "parse_nvariate", "bertini_reduce"]

MAX_ATTEMPTS = 5


@dataclass(frozen=True)
class BertiniReduction:
    poly: Poly
    substitution: tuple  # ((U_i, V_i, W_i), ...)
    seed: int
    bound: int
    attempts: int
    n: int
    degree: int

    def as_dict(self) -> dict:
        return {
            "reduced": str(self.poly),
            "substitution": [
                {"var": f"X{i + 1}", "U": u, "V": v, "W": w} for i, (u, v, w) in enumerate(self.substitution)
            ],
            "seed": self.seed,
            "bound": self.bound,
            "attempts": self.attempts,
            "n": self.n,
            "degree": self.degree,
        }


def parse_nvariate(text: str, n: int, field: Field = QQ) -> dict:
    """Parse a polynomial in X1..Xn into {exponent n-tuple: raw coefficient}."""
    if n < 1:
        raise ValueError("need at least one variable")
    return parse_terms(text, field, {f"X{i + 1}": i for i in range(n)})


def _substitute(terms: Mapping, subs: list[tuple[int, int, int]], field: Field) -> Poly:
    X, Y = Poly.X(field), Poly.Y(field)
    forms = [X * u + Y * v + w for u, v, w in subs]
    cache: dict = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in cache:
            cache[key] = forms[i] ** e
        return cache[key]

    out = Poly.const(0, field)
    for mono, c in terms.items():
        t = Poly.const(c, field)
        for i, e in enumerate(mono):
            if e:
                t = t * power(i, e)
        out = out + t
    return out


def bertini_reduce(terms: Mapping, seed: int = 0, field: Field = QQ) -> BertiniReduction:
    """Random affine substitution into K[X, Y], retried while the degree drops."""
    terms = {tuple(m): field.coerce(c) for m, c in terms.items() if field.coerce(c) != 0}
    if not terms:
        raise ZeroPolynomial("cannot reduce the zero polynomial")
    n = len(next(iter(terms)))
    if n < 3:
        raise ValueError(f"the reduction is meant for n >= 3 variables, got {n}")
    d = max(sum(m) for m in terms)
    if d < 2:
        raise DegreeTooSmall(f"degree {d} < 2; pencils need d >= 2")
    bound = 10 * d * n
    rng = random.Random(seed)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        subs = [tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(n)]
        red = _substitute(terms, subs, field)
        if not red.is_zero() and red.total_degree == d:
            return BertiniReduction(red, tuple(subs), seed, bound, attempt, n, d)
    raise DegreeDropPersistent(f"degree dropped below {d} in {MAX_ATTEMPTS} draws")
