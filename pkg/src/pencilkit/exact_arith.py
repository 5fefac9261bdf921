"""Exact scalars over the rationals and over prime fields.

A :class:`Field` describes the coefficient domain.  Inside polynomials and
matrices scalars are kept as *raw* Python values for speed:

* over ``Q`` a raw value is a :class:`fractions.Fraction` (always reduced,
  denominator positive);
* over ``F_p`` a raw value is an ``int`` in ``[0, p)``.

:class:`FieldElement` wraps a raw value together with its field and is the
public, operator-friendly scalar type.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, NotPrime, UnsupportedPrime

MAX_PRIME = 1 << 62

Raw = Union[int, Fraction]


class FieldKind(enum.Enum):
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    kind: FieldKind
    characteristic: int

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        else:
            p = self.characteristic
            if p >= MAX_PRIME:
                raise UnsupportedPrime(f"prime {p} exceeds 2^62")
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FieldKind.PRIME_FIELD, int(p))

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        """Parse the CLI notation ``q`` or ``fp:<prime>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad prime in field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"unknown field spec {text!r}; use q or fp:<prime>")

    @property
    def is_rational(self) -> bool:
        return self.kind is FieldKind.RATIONALS

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"F_{self.characteristic}"

    def spec(self) -> str:
        return "q" if self.is_rational else f"fp:{self.characteristic}"

    # raw-value arithmetic

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.is_rational else 1

    def coerce(self, x) -> Raw:
        """Map an int, Fraction, ``"a/b"`` string or FieldElement into the field."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, bool):
            x = int(x)
        if self.is_rational:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} into Q")
        p = self.characteristic
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{p}")

    def reduce(self, x: Raw) -> Raw:
        """Normalize the result of raw +, -, * (a no-op over Q)."""
        if self.is_rational:
            return x
        return x % self.characteristic

    def add(self, a: Raw, b: Raw) -> Raw:
        return self.reduce(a + b)

    def sub(self, a: Raw, b: Raw) -> Raw:
        return self.reduce(a - b)

    def mul(self, a: Raw, b: Raw) -> Raw:
        return self.reduce(a * b)

    def neg(self, a: Raw) -> Raw:
        return self.reduce(-a)

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a: Raw, b: Raw) -> Raw:
        if b == 0:
            raise DivisionByZero("division by zero")
        if self.is_rational:
            return a / b
        return a * pow(b, -1, self.characteristic) % self.characteristic

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def format(self, a: Raw) -> str:
        if self.is_rational:
            return str(a)
        return str(int(a))


QQ = Field.rationals()


class FieldElement:
    """Immutable scalar tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if self.field.is_rational:
            return FieldElement(self.field, self.value**n)
        return FieldElement(self.field, pow(self.value, n, self.field.characteristic))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ArithmeticError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    @property
    def numerator(self) -> int:
        return self.value.numerator if self.field.is_rational else self.value

    @property
    def denominator(self) -> int:
        return self.value.denominator if self.field.is_rational else 1

    def __repr__(self):
        return f"FieldElement({self.field}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)
