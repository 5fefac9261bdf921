from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pencilkit.errors import DivisionByZero, FieldMismatch, NotPrime, UnsupportedPrime
from pencilkit.exact_arith import QQ, Field, FieldElement, is_prime

F7 = Field.prime(7)
F1009 = Field.prime(1009)
fractions = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)
residues = st.integers(min_value=0, max_value=1008)


def test_rational_normalization():
    assert QQ.add(Fraction(2, 4), Fraction(1, 4)) == Fraction(3, 4)
    inv = QQ.inv(Fraction(-2, 3))
    assert (inv.numerator, inv.denominator) == (-3, 2)


def test_prime_field_product():
    assert F7.mul(3, 5) == 1
    assert F7.element(3) * 5 == F7.element(1)


def test_coerce_fraction_mod_p():
    assert F7.coerce("1/2") == 4
    with pytest.raises(DivisionByZero):
        F7.coerce(Fraction(1, 7))


def test_field_constructors_validate():
    with pytest.raises(NotPrime):
        Field.prime(1001)
    with pytest.raises(UnsupportedPrime):
        Field.prime(2**62 + 135)
    with pytest.raises(ValueError):
        Field.from_spec("fp:abc")
    with pytest.raises(ValueError):
        Field.from_spec("r")
    assert Field.from_spec("fp:1009") == F1009
    assert Field.from_spec("q").spec() == "q"


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))
    with pytest.raises(DivisionByZero):
        F7.div(3, 0)
    with pytest.raises(ZeroDivisionError):
        F7.element(0).inv()


def test_mixing_fields_is_rejected():
    with pytest.raises(FieldMismatch):
        F7.element(1) + F1009.element(1)


def test_element_is_immutable():
    a = QQ.element(3)
    with pytest.raises(AttributeError):
        a.value = 4


@given(st.integers(min_value=-10, max_value=10**6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(fractions, fractions, fractions)
def test_field_axioms_q(a, b, c):
    A, B, C = (QQ.element(x) for x in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert A * (B + C) == A * B + A * C
    assert A * B == B * A


@given(residues, residues, residues)
def test_field_axioms_fp(a, b, c):
    A, B, C = (F1009.element(x) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * (B - C) == A * B - A * C


@given(residues.filter(bool))
def test_inverse_and_fermat(a):
    x = F1009.element(a)
    assert x * x.inv() == F1009.element(1)
    assert x**1009 == x


@given(fractions.filter(bool))
def test_inverse_q(a):
    x = QQ.element(a)
    assert (x * x.inv()).value == 1
    assert isinstance(x, FieldElement)
