"""Ruppert-type linear maps and their kernels.

For a polynomial f the differential operator

    (G, H) |-> f * dG/dY - G * df/dY - f * dH/dX + H * df/dX

(equivalently f^2 (d/dY (G/f) - d/dX (H/f))) is represented as an exact
matrix on several domains:

* ``G_nu``: all pairs of degree <= nu - 1;
* ``R_nu``: the subspace E_nu of pairs with deg(XG + YH) <= nu - 1;
* ``R_homogeneous``: the homogeneous analogue with Z | XG + YH, image
  divided by Z;
* ``SR_sparse``: Newton-polygon constrained pairs (built by
  :mod:`pencilkit.newton`).

Columns are images of domain basis elements, rows are codomain monomials in
graded-lex order.  Kernel dimensions of these matrices count absolutely
irreducible factors with multiplicity information.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from . import linalg
from .errors import (
    DegreeLeakage,
    FactorsNotCoprime,
    InconsistentDegrees,
    NuTooSmall,
    ZeroPolynomial,
)
from .exact_arith import QQ, Field
from .polynomials import (
    HomPoly3,
    Poly,
    _dadd,
    _ddiff,
    _dmul,
    gcd_bivariate,
    homogenize,
    monomials_of_degree,
    monomials_up_to_degree,
)

__all__ = [
    "DomainBasis",
    "RuppertMatrix",
    "Kernel",
    "apply_operator",
    "basis_full_pairs",
    "basis_E",
    "basis_E_hom",
    "build_matrix_G",
    "build_matrix_R",
    "build_matrix_R_of_one",
    "build_matrix_R_hom",
    "build_matrix",
    "kernel",
    "kernel_dimension",
    "dim_ker_G_formula",
    "dim_ker_R_formula",
    "dim_ker_R_hom_formula",
    "squarefree_R_kernel_witnesses",
    "is_absolutely_irreducible",
    "is_absolutely_irreducible_hom",
]


@dataclass(frozen=True)
class DomainBasis:
    """Ordered basis of a space of polynomial pairs (G, H).

    ``kind`` is one of ``FullPairs``, ``ConstrainedPairs``,
    ``HomogeneousConstrained`` or ``SparseConstrained``; ``param`` records the
    defining data (nu, d, or the polygon description).
    """

    kind: str
    param: object
    field: Field
    elements: tuple  # tuple[(G, H), ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def combine(self, coeffs: Sequence) -> tuple:
        """The pair sum(c_j * element_j)."""
        F = self.field
        if not self.elements:
            raise ValueError("empty basis")
        g_terms: dict = {}
        h_terms: dict = {}
        for c, (G, H) in zip(coeffs, self.elements):
            c = F.coerce(c)
            if c == 0:
                continue
            g_terms = _dadd(F, g_terms, {m: F.mul(v, c) for m, v in G.terms.items()})
            h_terms = _dadd(F, h_terms, {m: F.mul(v, c) for m, v in H.terms.items()})
        G0, H0 = self.elements[0]
        return G0._like(g_terms), H0._like(h_terms)


@dataclass(frozen=True)
class Kernel:
    dimension: int
    basis: tuple  # tuple[(G, H), ...]
    vectors: tuple = dc_field(repr=False, default=())


@dataclass(frozen=True)
class RuppertMatrix:
    """Exact matrix of a Ruppert-type map with explicit bases.

    ``entries[i][j]`` is the coefficient of ``codomain[i]`` in the image of
    ``domain.elements[j]``.
    """

    kind: str
    domain: DomainBasis
    codomain: tuple
    entries: tuple  # tuple of row tuples of raw values
    source: str = ""

    @property
    def field(self) -> Field:
        return self.domain.field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def rank(self) -> int:
        if not self.entries or not self.domain.elements:
            return 0
        return linalg.rank(self.field, self.rows())

    def kernel(self) -> Kernel:
        return kernel(self)

    def apply(self, coeffs: Sequence) -> list:
        F = self.field
        return linalg.mat_vec(F, self.rows(), [F.coerce(c) for c in coeffs])


def _operator_terms(F: Field, f: dict, fx: dict, fy: dict, G: dict, H: dict, nvars: int) -> dict:
    out = {}
    if G:
        out = _dadd(F, out, _dmul(F, f, _ddiff(F, G, 1)))
        out = _dadd(F, out, _dmul(F, G, fy), -1)
    if H:
        out = _dadd(F, out, _dmul(F, f, _ddiff(F, H, 0)), -1)
        out = _dadd(F, out, _dmul(F, H, fx))
    return out


def apply_operator(f, G, H):
    """f dG/dY - G df/dY - f dH/dX + H df/dX for matching polynomial types."""
    F = f.field
    terms = _operator_terms(F, f.terms, _ddiff(F, f.terms, 0), _ddiff(F, f.terms, 1), G.terms, H.terms, f.nvars)
    if isinstance(f, HomPoly3):
        deg = f.degree + max(G.degree, H.degree) - 1
        return HomPoly3._raw(F, terms, deg)
    return Poly._raw(F, terms)


# domain bases


def _mono_poly(F: Field, m: tuple, c=None) -> Poly:
    return Poly._raw(F, {m: F.one if c is None else c})


def basis_full_pairs(nu: int, field: Field = QQ) -> DomainBasis:
    """All (m, 0) then all (0, m) for monomials m of degree <= nu - 1."""
    if nu < 1:
        raise NuTooSmall(f"nu must be >= 1, got {nu}")
    zero = Poly._raw(field, {})
    monos = monomials_up_to_degree(nu - 1)
    elems = [(_mono_poly(field, m), zero) for m in monos]
    elems += [(zero, _mono_poly(field, m)) for m in monos]
    return DomainBasis("FullPairs", nu, field, tuple(elems))


def basis_E(nu: int, field: Field = QQ) -> DomainBasis:
    """Basis of E_nu = {(G, H) : deg G, deg H <= nu-1, deg(XG + YH) <= nu-1}.

    (m, 0) and (0, m) for deg m <= nu - 2, then (Y*Q, -X*Q) for each monomial
    Q of exact degree nu - 2.  The count is nu^2 - 1.
    """
    if nu < 1:
        raise NuTooSmall(f"nu must be >= 1, got {nu}")
    zero = Poly._raw(field, {})
    low = monomials_up_to_degree(nu - 2)
    elems = [(_mono_poly(field, m), zero) for m in low]
    elems += [(zero, _mono_poly(field, m)) for m in low]
    minus_one = field.neg(field.one)
    for i, j in monomials_of_degree(nu - 2):
        elems.append((_mono_poly(field, (i, j + 1)), _mono_poly(field, (i + 1, j), minus_one)))
    return DomainBasis("ConstrainedPairs", nu, field, tuple(elems))


def basis_E_hom(d: int, field: Field = QQ) -> DomainBasis:
    """Homogeneous domain: the E_d basis homogenized to degree d - 1."""
    aff = basis_E(d, field)
    elems = tuple((homogenize(G, d - 1), homogenize(H, d - 1)) for G, H in aff.elements)
    return DomainBasis("HomogeneousConstrained", d, field, elems)


# matrix construction


def build_matrix(
    kind: str,
    f,
    domain: DomainBasis,
    codomain: Sequence[tuple],
    source: str = "",
    divide_by_z: bool = False,
) -> RuppertMatrix:
    """Matrix of the operator of ``f`` on ``domain``.

    Every image must be supported on ``codomain`` (after division by Z when
    requested); anything else raises DegreeLeakage.
    """
    F = f.field
    if domain.field != F:
        raise ValueError("domain and polynomial live over different fields")
    index = {m: i for i, m in enumerate(codomain)}
    ncols = len(domain)
    rows = [[F.zero] * ncols for _ in codomain]
    fx = _ddiff(F, f.terms, 0)
    fy = _ddiff(F, f.terms, 1)
    for j, (G, H) in enumerate(domain.elements):
        img = _operator_terms(F, f.terms, fx, fy, G.terms, H.terms, f.nvars)
        for m, c in img.items():
            if divide_by_z:
                if m[2] == 0:
                    raise DegreeLeakage(f"image of basis element {j} is not divisible by Z")
                m = (m[0], m[1], m[2] - 1)
            i = index.get(m)
            if i is None:
                raise DegreeLeakage(f"image of basis element {j} has monomial {m} outside the codomain")
            rows[i][j] = c
    return RuppertMatrix(kind, domain, tuple(codomain), tuple(tuple(r) for r in rows), source)


def _check_nu(f: Poly, nu: int) -> int:
    if f.is_zero():
        raise ZeroPolynomial("the Ruppert map of the zero polynomial is not defined")
    d = f.total_degree
    if nu < max(d, 1):
        raise NuTooSmall(f"nu={nu} must be at least deg f = {d} and at least 1")
    return d


def build_matrix_G(f: Poly, nu: int) -> RuppertMatrix:
    """G_nu(f) on all pairs of degree <= nu-1, codomain degree <= nu+d-2."""
    d = _check_nu(f, nu)
    dom = basis_full_pairs(nu, f.field)
    cod = monomials_up_to_degree(nu + d - 2)
    return build_matrix("G_nu", f, dom, cod, source=f"G_{nu}({f})")


def build_matrix_R(f: Poly, nu: int) -> RuppertMatrix:
    """R_nu(f) on E_nu.

    At nu = d the degree 2d-2 component of every image vanishes and the
    codomain is degree <= 2d-3; a nonzero top component raises DegreeLeakage.
    For nu > d the top pair (YQ, -XQ) maps to (nu-d) f_d Q + lower terms,
    so the codomain keeps degree nu+d-2.
    """
    d = _check_nu(f, nu)
    dom = basis_E(nu, f.field)
    cod = monomials_up_to_degree(nu + d - (3 if nu == d else 2))
    return build_matrix("R_nu", f, dom, cod, source=f"R_{nu}({f})")


def build_matrix_R_of_one(d: int, field: Field = QQ) -> RuppertMatrix:
    """The map (G, H) |-> dG/dY - dH/dX on E_d, codomain degree <= d-2."""
    if d < 1:
        raise NuTooSmall(f"d must be >= 1, got {d}")
    one = Poly.const(1, field)
    dom = basis_E(d, field)
    cod = monomials_up_to_degree(d - 2)
    return build_matrix("R_nu", one, dom, cod, source=f"R_{d}(1)")


def build_matrix_R_hom(F: HomPoly3) -> RuppertMatrix:
    """Homogeneous R(F) on E (degree d-1 pairs with Z | XG+YH); images divided by Z."""
    if F.is_zero():
        raise ZeroPolynomial("the Ruppert map of the zero form is not defined")
    d = F.degree
    if d < 1:
        raise NuTooSmall("homogeneous degree must be >= 1")
    dom = basis_E_hom(d, F.field)
    cod = monomials_of_degree(2 * d - 3, 3)
    return build_matrix("R_homogeneous", F, dom, cod, source=f"R({F})", divide_by_z=True)


def kernel(M: RuppertMatrix) -> Kernel:
    """Exact nullspace, re-expressed as polynomial pairs via the domain basis."""
    F = M.field
    n = len(M.domain)
    if n == 0:
        return Kernel(0, (), ())
    if not M.entries:
        vecs = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    else:
        vecs = linalg.nullspace(F, M.rows(), n)
    pairs = tuple(M.domain.combine(v) for v in vecs)
    return Kernel(len(vecs), pairs, tuple(tuple(v) for v in vecs))


def kernel_dimension(M: RuppertMatrix) -> int:
    return len(M.domain) - M.rank()


# closed-form dimensions


def _validate_pairs(pairs) -> list[tuple[int, int]]:
    out = []
    for di, ei in pairs:
        if di < 1 or ei < 1:
            raise InconsistentDegrees(f"factor degree and multiplicity must be >= 1, got ({di}, {ei})")
        out.append((int(di), int(ei)))
    if not out:
        raise InconsistentDegrees("at least one factor is required")
    return out


def dim_ker_G_formula(r: int, d: int, nu: int, pairs) -> int:
    """r - 1 + C(2 + nu - d + sum d_i (e_i - 1), 2) for nu >= d."""
    pairs = _validate_pairs(pairs)
    if r != len(pairs):
        raise InconsistentDegrees(f"r={r} but {len(pairs)} factor pairs given")
    if sum(di * ei for di, ei in pairs) != d:
        raise InconsistentDegrees(f"sum d_i e_i != d = {d}")
    if nu < d:
        raise InconsistentDegrees(f"nu={nu} < d={d}")
    excess = sum(di * (ei - 1) for di, ei in pairs)
    return r - 1 + comb(2 + nu - d + excess, 2)


def dim_ker_R_formula(r: int, d: int, nu: int, pairs) -> int:
    """Kernel of R_nu: one less than G_d at nu = d, equal to G_{nu-1} above."""
    if nu == d:
        return dim_ker_G_formula(r, d, d, pairs) - 1
    return dim_ker_G_formula(r, d, nu - 1, pairs)


def dim_ker_R_hom_formula(r: int, pairs) -> int:
    """r - 2 + C(2 + sum d_i (e_i - 1), 2)."""
    pairs = _validate_pairs(pairs)
    if r != len(pairs):
        raise InconsistentDegrees(f"r={r} but {len(pairs)} factor pairs given")
    excess = sum(di * (ei - 1) for di, ei in pairs)
    return r - 2 + comb(2 + excess, 2)


# explicit kernel elements


def _in_E(G: Poly, H: Poly, nu: int) -> bool:
    for P in (G, H):
        if P.terms and P.total_degree > nu - 1:
            return False
    S = Poly.X(G.field) * G + Poly.Y(G.field) * H
    return S.is_zero() or S.total_degree <= nu - 1


def squarefree_R_kernel_witnesses(factors: Sequence[Poly], degrees: Sequence[int] | None = None) -> list[tuple]:
    """The r - 1 explicit kernel elements of R_d(f1 ... fr) for squarefree f.

    For i >= 2 the pair is

        G = -d_i (f/f_1) df_1/dX + d_1 (f/f_i) df_i/dX
        H = -d_i (f/f_1) df_1/dY + d_1 (f/f_i) df_i/dY

    Each pair is checked to lie in E_d and to be annihilated by the operator.
    """
    factors = list(factors)
    if not factors:
        return []
    if degrees is None:
        degrees = [fi.total_degree for fi in factors]
    degrees = list(degrees)
    if len(degrees) != len(factors):
        raise InconsistentDegrees("one degree per factor is required")
    for fi, di in zip(factors, degrees):
        if fi.is_constant():
            raise InconsistentDegrees("factors must be non-constant")
        if fi.total_degree != di:
            raise InconsistentDegrees(f"declared degree {di} differs from deg {fi} = {fi.total_degree}")
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            if not gcd_bivariate(factors[a], factors[b]).is_constant():
                raise FactorsNotCoprime(f"factors {a} and {b} share a common factor")
    f = factors[0]
    for fi in factors[1:]:
        f = f * fi
    d = f.total_degree
    f1, d1 = factors[0], degrees[0]
    q1 = f.exact_div(f1)
    a_x, a_y = q1 * f1.diff("X"), q1 * f1.diff("Y")
    out = []
    for fi, di in zip(factors[1:], degrees[1:]):
        qi = f.exact_div(fi)
        G = a_x * (-di) + qi * fi.diff("X") * d1
        H = a_y * (-di) + qi * fi.diff("Y") * d1
        if not _in_E(G, H, d):
            raise DegreeLeakage("squarefree witness left E_d")
        if not apply_operator(f, G, H).is_zero():
            raise DegreeLeakage("squarefree witness is not in the kernel")
        out.append((G, H))
    return out


def is_absolutely_irreducible(f: Poly) -> bool:
    """dim ker R_d(f) == 0 with d = deg f (characteristic 0 or > d(d-1))."""
    if f.is_zero() or f.is_constant():
        raise ZeroPolynomial("irreducibility of a constant is undefined")
    d = f.total_degree
    return kernel_dimension(build_matrix_R(f, d)) == 0


def is_absolutely_irreducible_hom(F: HomPoly3) -> bool:
    return kernel_dimension(build_matrix_R_hom(F)) == 0
