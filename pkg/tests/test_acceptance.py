"""Acceptance suite: each test carries the criterion it belongs to, and the
terminal summary prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import gcd

import pytest
import sympy

from _corpus import (
    Planted,
    affine_corpus,
    homogeneous_corpus,
    irreducible_corpus,
    planted_affine,
    planted_pencils,
    to_sympy,
)
from pencilkit.errors import CompositeOrNonReduced
from pencilkit.exact_arith import QQ, Field
from pencilkit.newton import (
    LatticePolygon,
    build_matrix_SR,
    dense_polygon,
    find_good_edges,
    in_E_N,
    kerdef_witnesses,
    minkowski_sum,
    newton_polygon,
    select_good_edge,
    superior_envelope,
)
from pencilkit.paper_examples import dense_case, five_monomial_case, product_case, product_pencil
from pencilkit.polynomials import Poly, homogenize, parse
from pencilkit.ruppert import (
    build_matrix_G,
    build_matrix_R,
    build_matrix_R_hom,
    build_matrix_R_of_one,
    dim_ker_G_formula,
    dim_ker_R_formula,
    dim_ker_R_hom_formula,
    kernel_dimension,
)
from pencilkit.spectrum import Pencil, analyze, compute_kappa, spect_polynomial
from pencilkit.binary_forms import rational_roots

F1009 = Field.prime(1009)
CORPUS = affine_corpus()


def pick_count(P: LatticePolygon) -> int:
    """Lattice points by Pick's theorem: N = A + B/2 + 1 (independent of enumeration)."""
    v = list(P.vertices)
    if len(v) < 3:
        (x0, y0), (x1, y1) = v[0], v[-1]
        return gcd(abs(x1 - x0), abs(y1 - y0)) + 1
    twice_area = abs(sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1] for i in range(len(v))))
    boundary = sum(gcd(abs(v[(i + 1) % len(v)][0] - v[i][0]), abs(v[(i + 1) % len(v)][1] - v[i][1])) for i in range(len(v)))
    return (twice_area + boundary + 2) // 2


# criterion 1


@pytest.mark.acceptance("1", "dim ker G_nu(f) equals the closed formula on >= 50 planted f, nu in {d, d+1, d+2}, < 60 s")
def test_c1_dimension_formula_G():
    assert len(CORPUS) >= 50 and max(p.d for p in CORPUS) <= 6
    start = time.perf_counter()
    mismatches = []
    for p in CORPUS:
        f = p.poly
        for nu in (p.d, p.d + 1, p.d + 2):
            got = kernel_dimension(build_matrix_G(f, nu))
            want = dim_ker_G_formula(p.r, p.d, nu, p.pairs)
            if got != want:
                mismatches.append((str(f), nu, got, want))
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert elapsed < 60


@pytest.mark.acceptance("1", "dim ker G_nu(f) equals the closed formula on >= 50 planted f, nu in {d, d+1, d+2}, < 60 s")
def test_c1_nullity_oracle_sympy():
    # an independent rank computation on the small members of the corpus
    small = [p for p in CORPUS if p.d <= 3][:12]
    assert small
    for p in small:
        M = build_matrix_G(p.poly, p.d)
        S = sympy.Matrix([[sympy.Rational(str(QQ.format(c))) for c in row] for row in M.rows()])
        assert M.shape[1] - S.rank() == kernel_dimension(M)


# criterion 2


@pytest.mark.acceptance("2", "dim ker R_d = dim ker G_d - 1 and dim ker R_nu = dim ker G_(nu-1) for nu > d")
def test_c2_kernel_shift_identities():
    bad = []
    for p in CORPUS:
        f = p.poly
        d = p.d
        g = {nu: kernel_dimension(build_matrix_G(f, nu)) for nu in (d, d + 1)}
        r = {nu: kernel_dimension(build_matrix_R(f, nu)) for nu in (d, d + 1, d + 2)}
        if r[d] != g[d] - 1:
            bad.append((str(f), d, r[d], g[d]))
        for nu in (d + 1, d + 2):
            if r[nu] != g[nu - 1]:
                bad.append((str(f), nu, r[nu], g[nu - 1]))
            if r[nu] != dim_ker_R_formula(p.r, d, nu, p.pairs):
                bad.append(("formula", str(f), nu))
    assert bad == []


# criterion 3


@pytest.mark.acceptance("3", "dim ker R(F) equals the homogeneous formula on >= 30 planted F; irreducible inputs give 0")
def test_c3_homogeneous_formula():
    corpus = homogeneous_corpus()
    assert len(corpus) >= 30
    assert sum(1 for h in corpus if any(Fi.terms == {(0, 0, 1): 1} for Fi, _ in h.factors)) >= 10
    bad = []
    for h in corpus:
        got = kernel_dimension(build_matrix_R_hom(h.form))
        want = dim_ker_R_hom_formula(h.r, h.pairs)
        if got != want:
            bad.append((repr(h.form), got, want))
    assert bad == []


@pytest.mark.acceptance("3", "dim ker R(F) equals the homogeneous formula on >= 30 planted F; irreducible inputs give 0")
def test_c3_irreducible_inputs_give_zero():
    for f in irreducible_corpus():
        d = f.total_degree
        assert kernel_dimension(build_matrix_R(f, d)) == 0, str(f)
        assert kernel_dimension(build_matrix_R_hom(homogenize(f, d))) == 0, str(f)
        # sympy agrees on irreducibility over an extension-free check
        assert sympy.Poly(to_sympy(f), sympy.symbols("X Y")).is_irreducible


# criterion 4


@pytest.mark.acceptance("4", "rank R_d(1) = d(d-1)/2 for d = 2..8")
@pytest.mark.parametrize("d", range(2, 9))
def test_c4_rank_of_R_one(d):
    assert build_matrix_R_of_one(d).rank() == d * (d - 1) // 2


# criterion 5


@pytest.mark.acceptance("5", "key equation and pencil bounds on planted pencils over F_1009, d <= 5")
def test_c5_key_equation_and_bounds():
    analyzed = 0
    for f, g in planted_pencils(F1009):
        try:
            P = Pencil(f, g)
            rep = analyze(P, mode="dense")
        except CompositeOrNonReduced:
            continue
        analyzed += 1
        d = P.d
        assert d <= 5
        for sp in rep.spectral_points:
            s = sp.stats
            assert s.m - 1 + s.omega + s.theta == sp.kernel_dim
        assert rep.m + rep.omega + rep.theta <= d * d - 1
        assert rep.omega <= 2 * d - 2
        assert sum(1 for sp in rep.spectral_points if sp.stats.in_gamma) <= 3
        assert sum(1 for sp in rep.spectral_points if sp.stats.nonreduced_affine) <= 4
        if g.is_constant():
            b = rep.bound("affine_members_total")
            assert b.applicable and b.lhs <= d * (d - 1) // 2
        assert rep.all_bounds_hold, [b for b in rep.bounds if not b.holds]
    assert analyzed >= 15


# criterion 6


@pytest.mark.acceptance("6", "golden counts: dense case, five-monomial example, product-pencil example")
@pytest.mark.parametrize("d", range(2, 7))
def test_c6_dense_counts(d):
    c = dense_case(d)["computed"]
    assert (c["N"], c["N_X"], c["N_Y"], c["N_E"], c["dim_E_N"]) == (
        (d + 2) * (d + 1) // 2,
        d + 1,
        d + 1,
        d + 1,
        d * d - 1,
    )
    assert c["N"] == pick_count(dense_polygon(d))


@pytest.mark.acceptance("6", "golden counts: dense case, five-monomial example, product-pencil example")
def test_c6_five_monomial_superior_counts():
    ex = five_monomial_case(analyze_prime=None)
    c = ex["superior"]["computed"]
    assert (c["N"], c["N_X"], c["N_Y"], c["N_E"]) == (15, 4, 4, 3)
    assert c["formula"] == 19 and c["bound"] == 19
    assert ex["dense_bound"] == 24
    assert c["N"] == pick_count(LatticePolygon(tuple(tuple(v) for v in c["vertices"])))


@pytest.mark.acceptance("6", "golden counts: dense case, five-monomial example, product-pencil example")
def test_c6_five_monomial_newton_counts():
    c = five_monomial_case(analyze_prime=None)["newton"]["computed"]
    assert (c["N"], c["N_X"], c["N_Y"], c["N_E"]) == (5, 1, 1, 2)
    assert c["N"] == pick_count(LatticePolygon(tuple(tuple(v) for v in c["vertices"])))


@pytest.mark.acceptance("6", "golden counts: dense case, five-monomial example, product-pencil example")
def test_c6_five_monomial_newton_bound_is_10():
    # stated value 10; 2N - N_X - N_Y - N_E + kappa evaluates to 6 here
    c = five_monomial_case(analyze_prime=None)["newton"]["computed"]
    assert c["bound"] == 10


@pytest.mark.acceptance("6", "golden counts: dense case, five-monomial example, product-pencil example")
@pytest.mark.parametrize("d", [3, 4, 5])
def test_c6_product_pencil(d):
    ex = product_case(d, analyze_prime=None)
    c = ex["computed"]
    assert c["N"] == 2 * d
    assert c["N_X"] == d
    assert c["N_E"] == d
    assert c["kappa"] == d - 1
    assert compute_kappa(product_pencil(d)).kappa == d - 1
    flagged = {x["quantity"]: x for x in ex["discrepancies"]}
    assert flagged["N_Y"] == {"quantity": "N_Y", "computed": 2, "stated": d}


# criterion 7


@pytest.mark.acceptance("7", "Spect roots for (XY, X+Y) and (Y - X^2, 1) over Q; degree <= 3; < 5 s each")
def test_c7_conic_pencil():
    start = time.perf_counter()
    P = Pencil(parse("X*Y"), parse("X + Y"))
    S = spect_polynomial(P, rng_seed=0)
    roots = {pt for pt, _ in rational_roots(S)}
    assert roots == {(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))}
    assert S.degree <= 3
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance("7", "Spect roots for (XY, X+Y) and (Y - X^2, 1) over Q; degree <= 3; < 5 s each")
def test_c7_parabola_pencil():
    start = time.perf_counter()
    P = Pencil(parse("Y - X^2"), parse("1"))
    S = spect_polynomial(P, rng_seed=0)
    mult = dict(rational_roots(S))
    assert mult[(Fraction(0), Fraction(1))] >= 2
    assert S.degree <= 3
    assert time.perf_counter() - start < 5


# criterion 8


def _random_sparse(rng: random.Random, field: Field) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        terms[(rng.randint(0, 5), rng.randint(0, 5))] = rng.choice([c for c in range(-7, 8) if c])
    p = Poly(field, terms)
    return p if not p.is_zero() else Poly.const(1, field)


@pytest.mark.acceptance("8", "Ostrowski: N(fg) = N(f) + N(g) on 200 random sparse products over Q and F_p")
def test_c8_ostrowski():
    rng = random.Random(8)
    cases = 0
    for field in (QQ, Field.prime(101)):
        for _ in range(100):
            f, g = _random_sparse(rng, field), _random_sparse(rng, field)
            lhs = newton_polygon(f * g)
            rhs = minkowski_sum(newton_polygon(f), newton_polygon(g))
            assert lhs.vertices == rhs.vertices, (str(f), str(g))
            # second route: hull of all pairwise vertex sums
            sums = [(a[0] + b[0], a[1] + b[1]) for a in newton_polygon(f).vertices for b in newton_polygon(g).vertices]
            assert LatticePolygon.hull(sums).vertices == lhs.vertices
            cases += 1
    assert cases == 200


@pytest.mark.acceptance("8", "Ostrowski: N(fg) = N(f) + N(g) on 200 random sparse products over Q and F_p")
def test_c8_ostrowski_product_support_oracle():
    # the product support itself comes from sympy here
    rng = random.Random(18)
    X, Y = sympy.symbols("X Y")
    for _ in range(40):
        f, g = _random_sparse(rng, QQ), _random_sparse(rng, QQ)
        prod = sympy.Poly(sympy.expand(to_sympy(f) * to_sympy(g)), X, Y)
        hull = LatticePolygon.hull([m for m, _ in prod.terms()])
        assert hull.vertices == minkowski_sum(newton_polygon(f), newton_polygon(g)).vertices


# criterion 9


def _witness_corpus() -> list[Planted]:
    X, Y = Poly.X(), Poly.Y()
    out = [Planted(((X, 3), (Y**2 + X + 1, 1)))]
    rng = random.Random(9)
    while len(out) < 24:
        p = planted_affine(rng, 6)
        if sum(e for _, e in p.factors) >= 2:
            out.append(p)
    return out


def _vector(G: Poly, H: Poly, monos: list) -> list:
    return [sympy.Rational(str(QQ.format(G.raw_coeff(m)))) for m in monos] + [
        sympy.Rational(str(QQ.format(H.raw_coeff(m)))) for m in monos
    ]


@pytest.mark.acceptance("9", "explicit kernel witnesses lie in ker SR(f), satisfy the containments, have full rank")
def test_c9_witnesses():
    corpus = _witness_corpus()
    assert len(corpus) >= 20
    for p in corpus:
        f = p.poly
        P = superior_envelope(newton_polygon(f))
        edge = select_good_edge(find_good_edges(P))
        W = kerdef_witnesses(list(p.factors), edge.normal if edge else (1, 1))
        assert len(W) == sum(e for _, e in p.factors) - 1
        for w in W:
            assert in_E_N(w.G, w.H, P, edge)
            assert w.checks["in_kernel"]
            assert w.checks.get("i_in_N", True)
            assert w.checks.get("ii_in_Nplus", True)
            assert w.checks.get("iii_weighted", True)
        M = build_matrix_SR(f, P, edge, d=p.d)
        assert kernel_dimension(M) >= len(W)
        monos = sorted({m for w in W for m in list(w.G.terms) + list(w.H.terms)})
        assert sympy.Matrix([_vector(w.G, w.H, monos) for w in W]).rank() == len(W)


@pytest.mark.acceptance("9", "explicit kernel witnesses lie in ker SR(f), satisfy the containments, have full rank")
def test_c9_constant_term_caveat():
    X, Y = Poly.X(), Poly.Y()
    W = kerdef_witnesses([(X, 3), (Y**2 + X + 1, 1)], (1, 1))
    high = [w for w in W if w.k >= 2]
    assert high and all(w.checks["ii_in_Nplus"] for w in high)
    # with f(0,0) = 0 the N(f) containment genuinely fails
    assert any(not w.checks["ii_in_N"] for w in high)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
