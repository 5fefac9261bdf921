from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilkit.errors import (
    CharacteristicTooSmall,
    CoefficientNotInField,
    NotHomogeneous,
    PolynomialSyntaxError,
)
from pencilkit.exact_arith import QQ, Field
from pencilkit.polynomials import (
    HomPoly3,
    Poly,
    dehomogenize,
    gcd_bivariate,
    gcd_with_partials,
    homogenize,
    is_squarefree,
    parse,
    parse_homogeneous,
    squarefree_decompose,
    weighted_degree,
    z_valuation,
)

from _corpus import to_sympy

F7 = Field.prime(7)
X, Y = Poly.X(), Poly.Y()


def test_parse_examples():
    assert parse("X*Y + 1").terms == {(1, 1): 1, (0, 0): 1}
    assert parse("X*(X+1)*(X+2)*Y + X") == X**3 * Y + 3 * X**2 * Y + 2 * X * Y + X
    assert parse("Y^2 - X^3 - X", F7).terms == {(0, 2): 1, (3, 0): 6, (1, 0): 6}
    assert str(parse("1/2*X - 3", F7)) == "4*X + 4"
    assert parse("-(X - Y)^2") == -(X - Y) ** 2


@pytest.mark.parametrize(
    "text, pos",
    [("2X", 1), ("X^", 2), ("X + * Y", 4), ("(X + Y", 6), ("Z + 1", 0)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_parse_rejects_bad_denominator_mod_p():
    with pytest.raises(CoefficientNotInField):
        parse("1/7*X", F7)


def test_zero_polynomial_degree_marker():
    z = Poly.const(0)
    assert z.is_zero()
    assert z.total_degree != 0 and z.total_degree != -1
    assert z.total_degree < 0


def test_homogenize_examples():
    assert homogenize(X + Y, 2) == parse_homogeneous("X*Z + Y*Z")
    assert homogenize(X * Y, 2) == parse_homogeneous("X*Y")
    assert homogenize(Y - X**2, 2) == parse_homogeneous("Y*Z - X^2")
    with pytest.raises(NotHomogeneous):
        parse_homogeneous("X^2 + Y")


def test_derivatives():
    assert (X**3 * Y).diff("X") == 3 * X**2 * Y
    assert X.diff("Y").is_zero()
    assert (Poly.X(Field.prime(3)) ** 3).diff("X").is_zero()


def test_weighted_degree_and_valuation():
    assert weighted_degree(X**2 * Y, 1, 1) == 3
    assert weighted_degree(X**2 * Y + Y**5, 1, 0) == 2
    assert weighted_degree(X**2 * Y + Y**5, 0, 1) == 5
    assert z_valuation(parse_homogeneous("X*Z + Y*Z")) == 1
    assert z_valuation(parse_homogeneous("X*Y")) == 0
    assert z_valuation(HomPoly3.Z() ** 2) == 2


def test_gcd_examples():
    assert gcd_bivariate((X + Y) ** 2, (X + Y) * X) == X + Y
    assert gcd_bivariate(X**2 + Y, Poly.const(1)).is_constant()
    f = (X**2 + Y) ** 3 * (X + 1)
    assert gcd_with_partials(f) == (X**2 + Y) ** 2


def test_squarefree_examples():
    assert list(squarefree_decompose((X + Y) ** 2).factors) == [(X + Y, 2)]
    assert list(squarefree_decompose(X * Y).factors) == [(X * Y, 1)]
    dec = squarefree_decompose((X**2 + Y) ** 3 * (X + 1))
    assert list(dec.factors) == [(X + 1, 1), (X**2 + Y, 3)]
    assert is_squarefree(X * Y) and not is_squarefree(X**2 * Y)


def test_squarefree_needs_large_characteristic():
    with pytest.raises(CharacteristicTooSmall):
        squarefree_decompose(Poly.X(F7) ** 7 + Poly.Y(F7))


small_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-4, 4), max_size=5
)


def _poly(d):
    return Poly(QQ, d)


@given(small_terms, small_terms, small_terms)
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    A, B, C = _poly(a), _poly(b), _poly(c)
    assert (A + B) * C == A * C + B * C
    assert (A * B) * C == A * (B * C)
    assert A - A == Poly.const(0)


@given(small_terms, small_terms, small_terms)
@settings(max_examples=40, deadline=None)
def test_gcd_matches_sympy(a, b, h):
    f, g, k = _poly(a) * _poly(h), _poly(b) * _poly(h), _poly(h)
    if f.is_zero() or g.is_zero():
        return
    ours = gcd_bivariate(f, g)
    theirs = sympy.gcd(to_sympy(f), to_sympy(g))
    # equal up to a nonzero rational constant
    ratio = sympy.cancel(to_sympy(ours) / theirs)
    assert ratio.is_number and ratio != 0
    if not k.is_constant():
        assert k.divides(ours)


@given(small_terms, st.integers(0, 3))
@settings(max_examples=60)
def test_homogenize_round_trip(a, extra):
    f = _poly(a)
    if f.is_zero():
        return
    F = homogenize(f, f.total_degree + extra)
    assert dehomogenize(F) == f
    assert z_valuation(F) >= extra


@given(small_terms, small_terms)
@settings(max_examples=40, deadline=None)
def test_squarefree_reconstructs(a, b):
    f = _poly(a) ** 2 * _poly(b)
    if f.is_constant():
        return
    dec = squarefree_decompose(f)
    assert dec.reconstruct() == f
    for gk, _k in dec.factors:
        assert is_squarefree(gk)
