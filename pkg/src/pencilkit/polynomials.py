"""Sparse exact polynomials in X, Y (affine) and X, Y, Z (homogeneous).

Terms are stored as ``{exponent_tuple: raw_coefficient}`` with no zero
coefficients, so the zero polynomial has an empty term map.  Monomials are
ordered graded-lexicographically with X > Y > Z: higher total degree first,
ties broken by the exponent of X, then of Y.  That order is used for
printing, for leading terms, and for the normalization of gcds.

Text grammar accepted by :func:`parse`::

    expr     := sign? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := 'X' | 'Y' | 'Z' | rational | '(' expr ')'
    rational := int ('/' nat)?

Whitespace is ignored and implicit multiplication is rejected (``2X`` is a
syntax error).  The optional leading sign is a convenience on top of the
strict grammar.  Over ``F_p`` a literal ``a/b`` means ``a * b^-1 mod p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import _univariate as U
from .errors import (
    CharacteristicTooSmall,
    CoefficientNotInField,
    DegreeTooSmall,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    NotHomogeneous,
    PolynomialSyntaxError,
    ZeroPolynomial,
)
from .exact_arith import QQ, Field, FieldElement, Raw

__all__ = [
    "ZERO_DEGREE",
    "Poly",
    "HomPoly3",
    "SquarefreeDecomposition",
    "parse",
    "parse_homogeneous",
    "parse_terms",
    "homogenize",
    "dehomogenize",
    "partial_derivative",
    "gcd_bivariate",
    "gcd_with_partials",
    "squarefree_decompose",
    "weighted_degree",
    "z_valuation",
    "graded_lex_key",
    "monomials_of_degree",
    "monomials_up_to_degree",
]


class _ZeroDegree:
    """Degree marker of the zero polynomial.

    It compares below every integer and refuses arithmetic, so it cannot leak
    silently into a dimension formula.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __index__(self):
        raise TypeError("the zero polynomial has no integer degree")

    def __int__(self):
        raise TypeError("the zero polynomial has no integer degree")

    def __hash__(self):
        return hash("ZERO_DEGREE")


ZERO_DEGREE = _ZeroDegree()


def graded_lex_key(mono: tuple) -> tuple:
    return (sum(mono),) + tuple(mono)


def monomials_of_degree(n: int, nvars: int = 2) -> list[tuple]:
    """All exponent tuples of exact total degree n, graded-lex descending."""
    if n < 0:
        return []
    if nvars == 1:
        return [(n,)]
    out = []
    for first in range(n, -1, -1):
        for rest in monomials_of_degree(n - first, nvars - 1):
            out.append((first,) + rest)
    return out


def monomials_up_to_degree(n: int, nvars: int = 2) -> list[tuple]:
    """All exponent tuples of total degree <= n, graded-lex descending."""
    out = []
    for k in range(n, -1, -1):
        out.extend(monomials_of_degree(k, nvars))
    return out


# dict-level kernels shared by every polynomial class


def _dadd(F: Field, a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        v = F.reduce(c if sign > 0 else -c) if v is None else F.reduce(v + c if sign > 0 else v - c)
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def _dmul(F: Field, a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in ((m, F.reduce(c)) for m, c in out.items()) if c != 0}


def _dscale(F: Field, a: dict, c: Raw) -> dict:
    if c == 0:
        return {}
    return {m: v for m, v in ((m, F.mul(v, c)) for m, v in a.items()) if v != 0}


def _dpow(F: Field, a: dict, n: int, nvars: int) -> dict:
    result = {(0,) * nvars: F.one}
    base = a
    while n:
        if n & 1:
            result = _dmul(F, result, base)
        n >>= 1
        if n:
            base = _dmul(F, base, base)
    return result


def _ddiff(F: Field, a: dict, var: int) -> dict:
    out = {}
    for m, c in a.items():
        e = m[var]
        if e == 0:
            continue
        v = F.reduce(c * e)
        if v != 0:
            mm = list(m)
            mm[var] -= 1
            out[tuple(mm)] = v
    return out


def _dleading(a: dict) -> tuple:
    return max(a, key=graded_lex_key)


def _ddivmod_exact(F: Field, a: dict, b: dict) -> dict:
    """Exact quotient a / b, raising NotDivisible when b does not divide a."""
    if not b:
        raise DivisionByZero("division by the zero polynomial")
    lb = _dleading(b)
    inv = F.inv(b[lb])
    r = dict(a)
    q: dict = {}
    while r:
        lr = _dleading(r)
        shift = tuple(x - y for x, y in zip(lr, lb))
        if any(s < 0 for s in shift):
            raise NotDivisible("polynomial is not a multiple of the divisor")
        c = F.mul(r[lr], inv)
        q[shift] = c
        r = _dadd(F, r, {tuple(x + s for x, s in zip(m, shift)): F.mul(v, c) for m, v in b.items()}, -1)
    return q


class _SparsePoly:
    nvars = 0
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != self.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent {m} for {self.nvars} variables")
            v = field.coerce(c)
            if v != 0:
                clean[m] = v
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, field: Field, terms: dict, **kw):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _like(self, terms: dict):
        return type(self)._raw(self.field, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and sum(next(iter(self.terms))) == 0)

    @property
    def total_degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(m) for m in self.terms)

    def coeff(self, *mono) -> FieldElement:
        if len(mono) == 1 and isinstance(mono[0], tuple):
            mono = mono[0]
        return FieldElement(self.field, self.terms.get(tuple(mono), self.field.zero))

    def raw_coeff(self, mono: tuple) -> Raw:
        return self.terms.get(mono, self.field.zero)

    def support(self) -> list[tuple]:
        return sorted(self.terms, key=graded_lex_key, reverse=True)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return _dleading(self.terms)

    def leading_coefficient(self) -> FieldElement:
        return FieldElement(self.field, self.terms[self.leading_monomial()])

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.terms[self.leading_monomial()]))

    def scale(self, c) -> "_SparsePoly":
        return self._like(_dscale(self.field, self.terms, self.field.coerce(c)))

    def __add__(self, other):
        if not isinstance(other, _SparsePoly):
            other = self._constant(other)
        self._check(other)
        return self._like(_dadd(self.field, self.terms, other.terms))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if not isinstance(other, _SparsePoly):
            other = self._constant(other)
        self._check(other)
        return self._like(_dadd(self.field, self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return self._like({m: self.field.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _SparsePoly):
            return self.scale(other)
        self._check(other)
        return self._like(_dmul(self.field, self.terms, other.terms))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return self._like(_dpow(self.field, self.terms, n, self.nvars))

    def __eq__(self, other):
        if isinstance(other, _SparsePoly):
            return type(other) is type(self) and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            try:
                return self.terms == self._constant(other).terms
            except (TypeError, ValueError, ArithmeticError):
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.field, frozenset(self.terms.items())))

    def diff(self, var):
        return self._like(_ddiff(self.field, self.terms, _var_index(var)))

    def exact_div(self, other):
        self._check(other)
        return self._like(_ddivmod_exact(self.field, self.terms, other.terms))

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    def evaluate(self, *point) -> FieldElement:
        F = self.field
        vals = [F.coerce(v) for v in point]
        acc = F.zero
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v**e
            acc = F.reduce(acc + t)
        return FieldElement(F, F.reduce(acc))

    def _constant(self, c):
        raise NotImplementedError

    _names = ("X", "Y", "Z")

    def __str__(self):
        return format_terms(self.field, self.terms, self._names)

    def __repr__(self):
        return f"{type(self).__name__}({self.field}, {self})"


def _var_index(var) -> int:
    if isinstance(var, int):
        return var
    try:
        return {"X": 0, "Y": 1, "Z": 2}[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}") from None


def format_terms(F: Field, terms: Mapping, names: tuple) -> str:
    if not terms:
        return "0"
    parts = []
    for m in sorted(terms, key=graded_lex_key, reverse=True):
        c = terms[m]
        neg = F.is_rational and c < 0
        mag = -c if neg else c
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        if not mono:
            body = F.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{F.format(mag)}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class Poly(_SparsePoly):
    """Bivariate polynomial in X, Y over a field."""

    nvars = 2
    __slots__ = ()

    @classmethod
    def X(cls, field: Field = QQ) -> "Poly":
        return cls._raw(field, {(1, 0): field.one})

    @classmethod
    def Y(cls, field: Field = QQ) -> "Poly":
        return cls._raw(field, {(0, 1): field.one})

    @classmethod
    def const(cls, c, field: Field = QQ) -> "Poly":
        v = field.coerce(c)
        return cls._raw(field, {(0, 0): v} if v != 0 else {})

    @classmethod
    def monomial(cls, i: int, j: int, c=1, field: Field = QQ) -> "Poly":
        return cls(field, {(i, j): c})

    def _constant(self, c):
        return Poly.const(c, self.field)

    def degree_in(self, var) -> int:
        k = _var_index(var)
        if not self.terms:
            return ZERO_DEGREE
        return max(m[k] for m in self.terms)

    def homogenize(self, d: int) -> "HomPoly3":
        return homogenize(self, d)

    def weighted_degree(self, a: int, b: int) -> int:
        return weighted_degree(self, a, b)

    def homogeneous_part(self, k: int) -> "Poly":
        return self._like({m: c for m, c in self.terms.items() if sum(m) == k})

    def constant_term(self) -> FieldElement:
        return self.coeff((0, 0))


class HomPoly3(_SparsePoly):
    """Homogeneous polynomial in X, Y, Z with a declared degree."""

    nvars = 3
    __slots__ = ("degree",)

    def __init__(self, field: Field, degree: int, terms: Mapping | None = None):
        super().__init__(field, terms)
        if degree < 0:
            raise ValueError("declared degree must be non-negative")
        for m in self.terms:
            if sum(m) != degree:
                raise NotHomogeneous(f"term {m} has degree {sum(m)}, expected {degree}")
        object.__setattr__(self, "degree", degree)

    @classmethod
    def _raw(cls, field: Field, terms: dict, degree: int | None = None):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "terms", terms)
        if degree is None:
            degree = sum(next(iter(terms))) if terms else 0
        object.__setattr__(obj, "degree", degree)
        return obj

    def _like(self, terms: dict, degree: int | None = None):
        return HomPoly3._raw(self.field, terms, self.degree if degree is None else degree)

    def _check(self, other) -> None:
        super()._check(other)

    def _constant(self, c):
        if self.degree != 0:
            raise NotHomogeneous("cannot add a constant to a form of positive degree")
        v = self.field.coerce(c)
        return HomPoly3._raw(self.field, {(0, 0, 0): v} if v != 0 else {}, 0)

    def __add__(self, other):
        if isinstance(other, HomPoly3) and other.degree != self.degree and other.terms and self.terms:
            raise NotHomogeneous(f"degrees {self.degree} and {other.degree} differ")
        out = super().__add__(other)
        if not self.terms and isinstance(other, HomPoly3):
            return other._like(out.terms)
        return out

    def __sub__(self, other):
        if isinstance(other, HomPoly3) and other.degree != self.degree and other.terms and self.terms:
            raise NotHomogeneous(f"degrees {self.degree} and {other.degree} differ")
        out = super().__sub__(other)
        if not self.terms and isinstance(other, HomPoly3):
            return other._like(out.terms)
        return out

    def __mul__(self, other):
        if isinstance(other, HomPoly3):
            self._check(other)
            return self._like(_dmul(self.field, self.terms, other.terms), self.degree + other.degree)
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return self._like(_dpow(self.field, self.terms, n, 3), self.degree * n)

    def diff(self, var):
        return self._like(_ddiff(self.field, self.terms, _var_index(var)), max(self.degree - 1, 0))

    def exact_div(self, other):
        self._check(other)
        q = _ddivmod_exact(self.field, self.terms, other.terms)
        return self._like(q, self.degree - other.degree)

    def dehomogenize(self) -> Poly:
        return dehomogenize(self)

    def z_valuation(self) -> int:
        return z_valuation(self)

    def divide_by_z(self, k: int = 1) -> "HomPoly3":
        if any(m[2] < k for m in self.terms):
            raise NotDivisible(f"Z^{k} does not divide {self}")
        return self._like({(m[0], m[1], m[2] - k): c for m, c in self.terms.items()}, self.degree - k)

    @classmethod
    def Z(cls, field: Field = QQ) -> "HomPoly3":
        return cls._raw(field, {(0, 0, 1): field.one}, 1)

    @classmethod
    def X(cls, field: Field = QQ) -> "HomPoly3":
        return cls._raw(field, {(1, 0, 0): field.one}, 1)

    @classmethod
    def Y(cls, field: Field = QQ) -> "HomPoly3":
        return cls._raw(field, {(0, 1, 0): field.one}, 1)

    def __repr__(self):
        return f"HomPoly3({self.field}, deg={self.degree}, {self})"


# parsing


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("var", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, field: Field, variables: Mapping[str, int]):
        self.toks = _tokenize(text)
        self.pos = 0
        self.F = field
        self.vars = variables
        self.nvars = len(variables)

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise PolynomialSyntaxError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> dict:
        out = self.expr()
        self.take("end")
        return out

    def expr(self) -> dict:
        F = self.F
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _dscale(F, acc, F.neg(F.one))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = _dadd(F, acc, t, 1 if op == "+" else -1)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = _dmul(self.F, acc, self.factor())
        return acc

    def factor(self) -> dict:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            n = int(self.take("num")[1])
            return _dpow(self.F, base, n, self.nvars)
        return base

    def base(self) -> dict:
        kind, text, at = self.peek()
        zero = (0,) * self.nvars
        if kind == "var":
            self.take()
            if text not in self.vars:
                raise PolynomialSyntaxError(f"unknown variable {text!r}", at)
            m = [0] * self.nvars
            m[self.vars[text]] = 1
            return {tuple(m): self.F.one}
        if kind == "num":
            self.take()
            num = int(text)
            den = 1
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                den = int(den_tok[1])
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", den_tok[2])
            if self.peek()[0] in ("var", "num", "("):
                raise PolynomialSyntaxError("implicit multiplication is not allowed", self.peek()[2])
            try:
                v = self.F.coerce(Fraction(num, den))
            except DivisionByZero:
                raise CoefficientNotInField(f"{num}/{den} has no value in {self.F}") from None
            return {zero: v} if v != 0 else {}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {text or 'end of input'!r}", at)


def parse_terms(text: str, field: Field, variables: Mapping[str, int]) -> dict:
    """Parse ``text`` into a raw term map over the given variable table."""
    return _Parser(text, field, variables).parse()


_XYZ = {"X": 0, "Y": 1, "Z": 2}


def parse(text: str, field: Field = QQ) -> Poly:
    """Parse an affine polynomial in X and Y."""
    terms = parse_terms(text, field, _XYZ)
    if any(m[2] for m in terms):
        raise PolynomialSyntaxError("Z is not allowed in an affine polynomial", text.find("Z"))
    return Poly._raw(field, {(m[0], m[1]): c for m, c in terms.items()})


def parse_homogeneous(text: str, field: Field = QQ, degree: int | None = None) -> HomPoly3:
    """Parse a form in X, Y, Z; the degree is inferred unless given."""
    terms = parse_terms(text, field, _XYZ)
    degs = {sum(m) for m in terms}
    if len(degs) > 1:
        raise NotHomogeneous(f"{text!r} mixes degrees {sorted(degs)}")
    if degree is None:
        degree = degs.pop() if degs else 0
    return HomPoly3(field, degree, terms)


# homogenization


def homogenize(f: Poly, d: int) -> HomPoly3:
    """Z^d f(X/Z, Y/Z)."""
    if f.terms and f.total_degree > d:
        raise DegreeTooSmall(f"cannot homogenize degree {f.total_degree} to {d}")
    return HomPoly3._raw(f.field, {(i, j, d - i - j): c for (i, j), c in f.terms.items()}, d)


def dehomogenize(F: HomPoly3) -> Poly:
    """F(X, Y, 1)."""
    out: dict = {}
    for (i, j, _k), c in F.terms.items():
        out[(i, j)] = out.get((i, j), 0) + c
    return Poly._raw(F.field, {m: c for m, c in ((m, F.field.reduce(c)) for m, c in out.items()) if c != 0})


def partial_derivative(f, var):
    return f.diff(var)


def weighted_degree(f: Poly, a: int, b: int) -> int:
    """max(a*i + b*j) over the support of f."""
    if not f.terms:
        raise ZeroPolynomial("weighted degree of the zero polynomial")
    return max(a * i + b * j for (i, j) in f.terms)


def z_valuation(F: HomPoly3) -> int:
    """Largest k with Z^k dividing F."""
    if not F.terms:
        raise ZeroPolynomial("Z-valuation of the zero polynomial")
    return min(m[2] for m in F.terms)


# gcd in K[X][Y]


def _to_rec(f: Poly) -> dict:
    rec: dict = {}
    for (i, j), c in f.terms.items():
        row = rec.setdefault(j, [])
        if len(row) <= i:
            row.extend([f.field.zero] * (i + 1 - len(row)))
        row[i] = c
    return {j: U.trim(row) for j, row in rec.items()}


def _from_rec(F: Field, rec: dict) -> Poly:
    terms = {}
    for j, row in rec.items():
        for i, c in enumerate(row):
            if c != 0:
                terms[(i, j)] = c
    return Poly._raw(F, terms)


def _rec_content(F: Field, rec: dict) -> list:
    g: list = []
    for row in rec.values():
        g = U.gcd(F, g, row)
        if len(g) == 1:
            break
    return g


def _rec_pp(F: Field, rec: dict) -> dict:
    c = _rec_content(F, rec)
    if len(c) == 1:
        return dict(rec)
    return {j: U.exact_div(F, row, c) for j, row in rec.items()}


def _rec_prem(F: Field, a: dict, b: dict) -> dict:
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new = {j: U.mul(F, lcb, row) for j, row in r.items()}
        for j, row in b.items():
            k = j + dr - db
            new[k] = U.sub(F, new.get(k, []), U.mul(F, lcr, row))
        r = {j: row for j, row in new.items() if row}
    return r


def gcd_bivariate(f: Poly, g: Poly) -> Poly:
    """Normalized gcd of f and g in K[X, Y].

    Primitive polynomial remainder sequence in K[X][Y] with content handled
    separately; the result is made monic with respect to the graded-lex
    leading monomial, so it is unique.
    """
    f._check(g)
    F = f.field
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Poly.const(1, F)
    a, b = _to_rec(f), _to_rec(g)
    cont = U.gcd(F, _rec_content(F, a), _rec_content(F, b))
    a, b = _rec_pp(F, a), _rec_pp(F, b)
    if max(a) < max(b):
        a, b = b, a
    while b:
        if max(b) == 0:
            a = {0: [F.one]}
            break
        r = _rec_prem(F, a, b)
        a, b = b, (_rec_pp(F, r) if r else {})
    prim = _rec_pp(F, a)
    result = _from_rec(F, prim) * _from_rec(F, {0: cont})
    return result.monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    it = iter(polys)
    g = next(it)
    for p in it:
        g = gcd_bivariate(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g


def gcd_with_partials(f: Poly) -> Poly:
    """gcd(f, df/dX, df/dY); its degree is the sum of d_i (e_i - 1)."""
    return gcd_many([f, f.diff("X"), f.diff("Y")])


def _check_characteristic(f: Poly) -> None:
    p = f.field.characteristic
    if p and p <= f.total_degree:
        raise CharacteristicTooSmall(
            f"characteristic {p} must exceed the degree {f.total_degree} for squarefree decomposition"
        )


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = constant * prod(g_k ** k) with each g_k squarefree and monic."""

    constant: FieldElement
    factors: tuple  # tuple[(Poly, int), ...], increasing multiplicity

    def reconstruct(self) -> Poly:
        field = self.constant.field
        out = Poly.const(self.constant.value, field)
        for g, k in self.factors:
            out = out * g**k
        return out

    def multiplicity_profile(self) -> list[tuple[int, int]]:
        """[(deg g_k, k), ...]."""
        return [(g.total_degree, k) for g, k in self.factors]


def squarefree_decompose(f: Poly) -> SquarefreeDecomposition:
    """Squarefree decomposition via the gcd cascade on gcd(f, f_X, f_Y)."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    F = f.field
    if f.is_constant():
        return SquarefreeDecomposition(f.coeff((0, 0)), ())
    _check_characteristic(f)
    g = gcd_with_partials(f)
    w = f.exact_div(g).monic()
    factors = []
    k = 1
    while not w.is_constant():
        y = gcd_bivariate(w, g)
        part = w.exact_div(y).monic()
        if not part.is_constant():
            factors.append((part, k))
        w = y
        g = g.exact_div(y)
        k += 1
    prod = Poly.const(1, F)
    for part, k in factors:
        prod = prod * part**k
    c = f.exact_div(prod)
    if not c.is_constant():
        raise AssertionError("squarefree reconstruction left a non-constant cofactor")
    dec = SquarefreeDecomposition(c.coeff((0, 0)), tuple(factors))
    return dec


def is_squarefree(f: Poly) -> bool:
    return gcd_with_partials(f).is_constant()
