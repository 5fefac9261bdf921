from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilkit.errors import DegreeLeakage, FactorsNotCoprime, InconsistentDegrees, NuTooSmall, ZeroPolynomial
from pencilkit.exact_arith import QQ
from pencilkit.polynomials import Poly, homogenize, monomials_up_to_degree, parse, parse_homogeneous
from pencilkit.ruppert import (
    apply_operator,
    basis_E,
    basis_full_pairs,
    build_matrix,
    build_matrix_G,
    build_matrix_R,
    build_matrix_R_hom,
    build_matrix_R_of_one,
    dim_ker_G_formula,
    dim_ker_R_hom_formula,
    is_absolutely_irreducible,
    kernel,
    kernel_dimension,
    squarefree_R_kernel_witnesses,
)

X, Y = Poly.X(), Poly.Y()


@pytest.mark.parametrize("nu, size", [(1, 0), (2, 3), (3, 8), (5, 24)])
def test_basis_E_dimension(nu, size):
    B = basis_E(nu)
    assert len(B) == size == nu * nu - 1
    for G, H in B.elements:
        S = X * G + Y * H
        assert S.is_zero() or S.total_degree <= nu - 1


def test_basis_E_small():
    elems = basis_E(2).elements
    assert set((str(G), str(H)) for G, H in elems) == {("1", "0"), ("0", "1"), ("Y", "-X")}


def test_full_pairs_dimension():
    assert len(basis_full_pairs(4)) == 4 * 5


@pytest.mark.parametrize(
    "f, nu, dim",
    [("X^2 + Y^2 + 1", 2, 1), ("(X+Y)*(X-Y)", 2, 2), ("(X+Y)^2", 2, 3), ("(X+Y)^2", 3, 6), ("(X+1)^2*(X^2+Y+1)", 4, 4)],
)
def test_G_kernel_examples(f, nu, dim):
    assert kernel_dimension(build_matrix_G(parse(f), nu)) == dim


def test_R_kernel_examples():
    M = build_matrix_R(parse("(X+Y)^2"), 2)
    K = kernel(M)
    assert K.dimension == 2
    # the kernel contains (1, 1) and (Y, -X)
    for G, H in [(Poly.const(1), Poly.const(1)), (Y, -X)]:
        assert apply_operator(parse("(X+Y)^2"), G, H).is_zero()
    for G, H in K.basis:
        assert apply_operator(parse("(X+Y)^2"), G, H).is_zero()
    assert kernel_dimension(build_matrix_R(parse("Y^2 - X^3 - X"), 3)) == 0


@pytest.mark.parametrize("d, rank", [(2, 1), (3, 3), (5, 10)])
def test_R_of_one(d, rank):
    assert build_matrix_R_of_one(d).rank() == rank


@pytest.mark.parametrize("F, dim", [("Z^2", 2), ("X*Y", 1), ("Y^2*Z - X^3 - X*Z^2", 0), ("Z^3*(X^2 + Y*Z + Z^2)", 6)])
def test_R_hom_examples(F, dim):
    assert kernel_dimension(build_matrix_R_hom(parse_homogeneous(F))) == dim


def test_formulas():
    assert dim_ker_G_formula(1, 3, 3, [(3, 1)]) == 1
    assert dim_ker_G_formula(2, 4, 4, [(1, 2), (2, 1)]) == 4
    assert dim_ker_G_formula(1, 2, 3, [(1, 2)]) == 6
    assert dim_ker_R_hom_formula(1, [(1, 2)]) == 2
    assert dim_ker_R_hom_formula(2, [(1, 3), (2, 1)]) == 6
    with pytest.raises(InconsistentDegrees):
        dim_ker_G_formula(2, 3, 3, [(3, 1)])
    with pytest.raises(InconsistentDegrees):
        dim_ker_G_formula(1, 3, 2, [(3, 1)])


def test_errors():
    with pytest.raises(ZeroPolynomial):
        build_matrix_G(Poly.const(0), 2)
    with pytest.raises(NuTooSmall):
        build_matrix_R(parse("X^3 + Y"), 2)


def test_top_component_at_nu_equal_d_vanishes():
    # truncating the codomain to degree 2d-3 is only possible because the
    # top component vanishes; a codomain one degree lower leaks
    f = parse("X^2*Y + Y^3 + X + 1")
    build_matrix_R(f, 3)
    with pytest.raises(DegreeLeakage):
        build_matrix("R_nu", f, basis_E(3), monomials_up_to_degree(2))


def test_top_component_above_d_is_proportional_to_nu_minus_d():
    # for nu > d the top pair (YQ, -XQ) maps to (nu - d) f_d Q in top degree
    f = parse("X^2 + X*Y + 3*Y + 1")
    d, nu = 2, 4
    Q = X * Y
    img = apply_operator(f, Y * Q, -X * Q)
    assert img.total_degree == nu + d - 2
    assert img.homogeneous_part(nu + d - 2) == (X**2 + X * Y) * Q * (nu - d)


def test_squarefree_witnesses():
    W = squarefree_R_kernel_witnesses([X, Y, X + Y + 1])
    assert len(W) == 2
    assert squarefree_R_kernel_witnesses([X**2 + Y]) == []
    with pytest.raises(FactorsNotCoprime):
        squarefree_R_kernel_witnesses([X + Y, (X + Y) * 2])


def test_homogeneous_vs_affine_kernel():
    rng = random.Random(3)
    for _ in range(8):
        f = Poly(QQ, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 4) for _ in range(4)})
        if f.total_degree < 2:
            continue
        d = f.total_degree
        assert kernel_dimension(build_matrix_R_hom(homogenize(f, d))) == kernel_dimension(build_matrix_R(f, d))


coef = st.integers(-3, 3)


@given(coef, coef, st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_operator_linearity(u, v, seed):
    rng = random.Random(seed)

    def rand_poly():
        return Poly(QQ, {(rng.randint(0, 2), rng.randint(0, 1)): rng.randint(-3, 3) for _ in range(3)}) + X**3

    f, g = rand_poly(), rand_poly()
    h = f * u + g * v
    if h.total_degree != 3:
        return
    Mf, Mg, Mh = (build_matrix_R(p, 3) for p in (f, g, h))
    for i, row in enumerate(Mh.rows()):
        for j, c in enumerate(row):
            assert c == u * Mf.rows()[i][j] + v * Mg.rows()[i][j]


def test_absolute_irreducibility_test():
    assert is_absolutely_irreducible(parse("Y^2 - X^3 - X"))
    # X^2 + Y^2 is irreducible over Q but splits over Q(i)
    assert not is_absolutely_irreducible(parse("X^2 + Y^2"))
    with pytest.raises(ZeroPolynomial):
        is_absolutely_irreducible(Poly.const(2))
