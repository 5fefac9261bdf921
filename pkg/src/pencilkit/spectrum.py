"""Pencil analysis: spectrum, reducibility statistics and bound verdicts.

For a pencil mu f# + lam g# of degree d the homogeneous Ruppert map R(-)
gives two matrices A = M(f#) and B = M(g#) with d^2 - 1 columns.  A point
(mu:lam) is spectral when mu A + lam B drops rank, and the kernel dimension
there equals m - 1 + omega + theta for the member.

Over F_p the whole projective line is scanned.  Over Q the spectrum
polynomial Spect(U, V), the gcd of the maximal minors of U A + V B, is
computed from random row compressions and its rational roots are verified
one by one by direct kernel computation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from functools import cached_property
from math import comb, lcm
from typing import Sequence

from . import _univariate as U
from . import linalg
from .bertini import BertiniReduction, bertini_reduce
from .binary_forms import BinaryForm, nonsplit_classes, rational_roots
from .errors import (
    CharacteristicTooSmall,
    CompositeOrNonReduced,
    DegreeTooSmall,
    FieldMismatch,
    InsufficientSamplePoints,
    KeyEquationMismatch,
    PolygonMismatch,
)
from .exact_arith import Field
from .newton import (
    GoodEdge,
    LatticePolygon,
    basis_E_N,
    build_matrix_SR,
    dense_polygon,
    find_good_edges,
    newton_polygon,
    select_good_edge,
    superior_envelope,
)
from .polynomials import (
    HomPoly3,
    Poly,
    dehomogenize,
    gcd_bivariate,
    homogenize,
    squarefree_decompose,
    z_valuation,
)
from .ruppert import build_matrix_R_hom, kernel_dimension

__all__ = [
    "Pencil",
    "MemberStats",
    "SpectralPoint",
    "BoundVerdict",
    "KappaInfo",
    "PencilReport",
    "SCHEMA_VERSION",
    "normalize_point",
    "format_point",
    "pencil_matrices",
    "kernel_dim_at",
    "spect_polynomial",
    "spectrum_bruteforce",
    "member_statistics",
    "compute_kappa",
    "analyze",
    "global_bounds",
    "choose_polygon",
    "bertini_reduce",
    "BertiniReduction",
]

SCHEMA_VERSION = "1.0"
MAX_DRAWS = 12
STABLE_DRAWS = 3


@dataclass(frozen=True)
class Pencil:
    """The pencil mu f# + lam g# with d = max(deg f, deg g) >= 2 and gcd(f, g) = 1."""

    f: Poly
    g: Poly

    def __post_init__(self):
        if self.f.field != self.g.field:
            raise FieldMismatch(f"f over {self.f.field}, g over {self.g.field}")
        if self.f.is_zero() or self.g.is_zero():
            raise CompositeOrNonReduced("f and g must both be nonzero")
        d = max(self.f.total_degree, self.g.total_degree)
        if d < 2:
            raise DegreeTooSmall(f"pencil degree must be >= 2, got {d}")
        if not gcd_bivariate(self.f, self.g).is_constant():
            raise CompositeOrNonReduced("f/g is not reduced: gcd(f, g) is not constant")

    @property
    def field(self) -> Field:
        return self.f.field

    @property
    def d(self) -> int:
        return max(self.f.total_degree, self.g.total_degree)

    @cached_property
    def f_sharp(self) -> HomPoly3:
        return homogenize(self.f, self.d)

    @cached_property
    def g_sharp(self) -> HomPoly3:
        return homogenize(self.g, self.d)

    def member(self, point: tuple) -> HomPoly3:
        mu, lam = point
        return self.f_sharp.scale(mu) + self.g_sharp.scale(lam)

    def affine_member(self, point: tuple) -> Poly:
        mu, lam = point
        return self.f.scale(mu) + self.g.scale(lam)

    def check_characteristic(self) -> dict:
        p = self.field.characteristic
        need = self.d * (self.d - 1)
        return {"characteristic": p, "required": f"p = 0 or p > {need}", "ok": p == 0 or p > need}


def normalize_point(F: Field, mu, lam) -> tuple:
    """(mu:lam) as (mu/lam : 1) or (1 : 0)."""
    mu, lam = F.coerce(mu), F.coerce(lam)
    if lam == 0:
        if mu == 0:
            raise ValueError("(0:0) is not a projective point")
        return (F.one, F.zero)
    return (F.div(mu, lam), F.one)


def format_point(F: Field, pt: tuple) -> list[str]:
    return [F.format(pt[0]), F.format(pt[1])]


# matrices


def pencil_matrices(P: Pencil) -> tuple[list, list]:
    """Row lists of M(f#) and M(g#) on the same bases."""
    return build_matrix_R_hom(P.f_sharp).rows(), build_matrix_R_hom(P.g_sharp).rows()


def _combine(F: Field, A: list, B: list, mu, lam) -> list:
    return [[F.reduce(mu * a + lam * b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def kernel_dim_at(P: Pencil, point: tuple, mats: tuple | None = None) -> int:
    A, B = mats if mats is not None else pencil_matrices(P)
    ncols = P.d * P.d - 1
    M = _combine(P.field, A, B, point[0], point[1])
    return ncols - linalg.rank(P.field, M)


# spectrum polynomial


def _integer_pencil(F: Field, A: list, B: list) -> tuple[list, list]:
    if not F.is_rational:
        return A, B
    den = 1
    for M in (A, B):
        for row in M:
            for x in row:
                if x != 0:
                    den = lcm(den, x.denominator)
    return [[int(x * den) for x in r] for r in A], [[int(x * den) for x in r] for r in B]


def _matmul(S: list, A: list, F: Field) -> list:
    cols = list(zip(*A))
    return [[F.reduce(sum(s * a for s, a in zip(row, col))) for col in cols] for row in S]


def _compressed_form(F: Field, SA: list, SB: list, D: int) -> BinaryForm:
    xs = [F.coerce(k) for k in range(D + 1)]
    ys = [linalg.det(F, _combine(F, SA, SB, x, F.one)) for x in xs]
    p = U.interpolate(F, xs, ys)
    top = linalg.det(F, SA)
    lead = p[D] if len(p) > D else F.zero
    if F.reduce(lead - top) != 0:
        raise AssertionError("interpolated leading coefficient disagrees with det(S A)")
    return BinaryForm.from_univariate(F, p, D)


def spect_polynomial(P: Pencil, rng_seed: int = 0, info: dict | None = None) -> BinaryForm:
    """gcd of the maximal minors of U M(f#) + V M(g#), via random compressions.

    Each draw multiplies the pencil on the left by a random (d^2-1) x rows
    matrix, evaluates the square determinant at u = 0..d^2-1, interpolates,
    and checks the u^(d^2-1) coefficient against det(S M(f#)).  The running
    gcd stops after it has been unchanged for three consecutive draws.
    """
    F = P.field
    d = P.d
    D = d * d - 1
    if not F.is_rational and F.characteristic <= d * d:
        raise InsufficientSamplePoints(f"F_{F.characteristic} has too few points; need p > {d * d}")
    A, B = _integer_pencil(F, *pencil_matrices(P))
    rows = len(A)
    rng = random.Random(rng_seed)
    bound = 1 << 16 if F.is_rational else F.characteristic
    current: BinaryForm | None = None
    stable = 0
    draws = 0
    while draws < MAX_DRAWS:
        draws += 1
        if F.is_rational:
            S = [[rng.randint(-bound, bound) for _ in range(rows)] for _ in range(D)]
        else:
            S = [[rng.randrange(bound) for _ in range(rows)] for _ in range(D)]
        form = _compressed_form(F, _matmul(S, A, F), _matmul(S, B, F), D)
        if form.is_zero():
            continue
        new = form.monic() if current is None else current.gcd(form)
        if current is not None and new == current:
            stable += 1
            if stable >= STABLE_DRAWS:
                current = new
                break
        else:
            stable = 0
        current = new
    if info is not None:
        info["draws"] = draws
    if current is None:
        raise CompositeOrNonReduced("Spect vanishes identically: f/g is composite or not reduced")
    return current


# member statistics


@dataclass(frozen=True)
class MemberStats:
    """Factor statistics of one pencil member.

    ``classes`` lists (degree of g_k, k, r_k) for the squarefree classes of
    the affine part; Z contributes separately through ``e_inf``.
    """

    n: int
    m: int
    omega: int
    theta: int
    e_inf: int
    kernel_dim: int
    classes: tuple

    @property
    def in_gamma(self) -> bool:
        return self.n == 1 and self.m >= 2 and self.e_inf == 0

    @property
    def nonreduced_affine(self) -> bool:
        n_aff = self.n - (1 if self.e_inf > 0 else 0)
        return n_aff == 1 and self.m - self.e_inf >= 2

    @property
    def affine_squarefree(self) -> bool:
        return all(k == 1 for _deg, k, _r in self.classes) and self.e_inf <= 1

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "omega": self.omega,
            "theta": self.theta,
            "e_inf": self.e_inf,
            "kernel_dim": self.kernel_dim,
            "classes": [{"degree": dg, "multiplicity": k, "factors": r} for dg, k, r in self.classes],
        }


def _check_char(F: Field, d: int) -> None:
    p = F.characteristic
    if p and p <= d * (d - 1):
        raise CharacteristicTooSmall(f"characteristic {p} must exceed d(d-1) = {d * (d - 1)}")


def member_statistics(F: HomPoly3, kernel_dim: int | None = None) -> MemberStats:
    """n, m, omega, theta, e_inf of a member, cross-checked against dim ker R(F).

    The affine part is squarefree-decomposed as prod g_k^k and each class
    contributes r_k = dim ker R(g_k#) + 1 absolutely irreducible factors.
    """
    if F.is_zero():
        raise ValueError("member_statistics of the zero form")
    d = F.degree
    _check_char(F.field, d)
    e_inf = z_valuation(F)
    aff = dehomogenize(F)
    classes = []
    if not aff.is_constant():
        dec = squarefree_decompose(aff)
        for gk, k in dec.factors:
            deg = gk.total_degree
            rk = kernel_dimension(build_matrix_R_hom(homogenize(gk, deg))) + 1
            classes.append((deg, k, rk))
    n = sum(r for _deg, _k, r in classes) + (1 if e_inf > 0 else 0)
    m = sum(k * r for _deg, k, r in classes) + e_inf
    omega = sum((k - 1) * deg for deg, k, _r in classes) + max(e_inf - 1, 0)
    theta = comb(omega + 1, 2) - (m - n)
    if kernel_dim is None:
        kernel_dim = kernel_dimension(build_matrix_R_hom(F))
    if m - 1 + omega + theta != kernel_dim:
        raise KeyEquationMismatch(
            f"m-1+omega+theta = {m - 1 + omega + theta} but dim ker R = {kernel_dim} for {F}"
        )
    return MemberStats(n, m, omega, theta, e_inf, kernel_dim, tuple(classes))


# kappa


@dataclass(frozen=True)
class KappaInfo:
    kappa: int
    e_inf: int
    member: tuple | None


def compute_kappa(P: Pencil) -> KappaInfo:
    """The member divisible by Z (if any), its Z-multiplicity and kappa."""
    F = P.field
    d = P.d
    fd, gd = P.f.homogeneous_part(d), P.g.homogeneous_part(d)
    if fd.is_zero():
        point = (F.one, F.zero)
    elif gd.is_zero():
        point = (F.zero, F.one)
    else:
        mf = fd.leading_monomial()
        c = F.div(fd.terms[mf], gd.terms.get(mf, F.zero)) if gd.terms.get(mf, 0) != 0 else None
        if c is None or fd != gd.scale(c):
            return KappaInfo(0, 0, None)
        point = normalize_point(F, F.one, F.neg(c))
    e = z_valuation(P.member(point))
    return KappaInfo(max(e - 1, 0), e, point)


# spectral points


@dataclass(frozen=True)
class SpectralPoint:
    point: tuple
    kernel_dim: int
    stats: MemberStats | None = None
    provenance: str = "computed"
    spect_multiplicity: int | None = None
    sr_kernel_dim: int | None = None
    formula_status: str = "theorem"

    @property
    def e_inf(self) -> int:
        return self.stats.e_inf if self.stats else 0

    @property
    def degree_deficient(self) -> bool:
        return self.e_inf > 0

    def as_dict(self, F: Field) -> dict:
        out = {
            "point": format_point(F, self.point),
            "kernel_dim": self.kernel_dim,
            "provenance": self.provenance,
            "member_is_degree_deficient": self.degree_deficient,
            "formula_status": self.formula_status,
        }
        if self.stats is not None:
            out.update(self.stats.as_dict())
            out["in_gamma"] = self.stats.in_gamma
            out["nonreduced_affine"] = self.stats.nonreduced_affine
        if self.spect_multiplicity is not None:
            out["spect_multiplicity"] = self.spect_multiplicity
        if self.sr_kernel_dim is not None:
            out["sr_kernel_dim"] = self.sr_kernel_dim
        return out


def _projective_line(p: int):
    yield (1, 0)
    for mu in range(p):
        yield (mu, 1)


def spectrum_bruteforce(P: Pencil, with_stats: bool = True) -> list[SpectralPoint]:
    """Scan all p + 1 points of the projective line over F_p."""
    F = P.field
    if F.is_rational:
        raise FieldMismatch("spectrum_bruteforce needs a prime field")
    _check_char(F, P.d)
    p = F.characteristic
    A, B = pencil_matrices(P)
    ncols = P.d * P.d - 1
    found = []
    for mu, lam in _projective_line(p):
        M = [[(mu * a + lam * b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
        k = ncols - linalg.rank_mod_p(M, p)
        if k > 0:
            found.append(((mu, lam), k))
    if len(found) == p + 1:
        raise CompositeOrNonReduced("every point of the line is spectral: f/g is composite")
    out = []
    for pt, k in found:
        stats = member_statistics(P.member(pt), kernel_dim=k) if with_stats else None
        status = "theorem" if stats is None or stats.affine_squarefree else "empirical"
        out.append(SpectralPoint(pt, k, stats, "computed", formula_status=status))
    return out


# bounds and report


@dataclass(frozen=True)
class BoundVerdict:
    name: str
    lhs: int
    rhs: int
    holds: bool
    relation: str = "<="
    applicable: bool = True
    complete: bool = True
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "applicable": self.applicable,
            "complete": self.complete,
            "note": self.note,
        }


def _le(name: str, lhs: int, rhs: int, complete: bool = True, note: str = "") -> BoundVerdict:
    return BoundVerdict(name, lhs, rhs, lhs <= rhs, "<=", True, complete, note)


@dataclass
class PencilReport:
    field: Field
    f: Poly
    g: Poly
    d: int
    mode: str
    seed: int
    spectral_points: list
    kappa: KappaInfo
    bounds: list
    warnings: list
    characteristic_check: dict
    spect: dict | None = None
    sparse: dict | None = None
    complete: bool = True

    @property
    def rho(self) -> int:
        return sum(sp.stats.n - 1 for sp in self.spectral_points if sp.stats)

    @property
    def m(self) -> int:
        return sum(sp.stats.m - 1 for sp in self.spectral_points if sp.stats)

    @property
    def omega(self) -> int:
        return sum(sp.stats.omega for sp in self.spectral_points if sp.stats)

    @property
    def theta(self) -> int:
        return sum(sp.stats.theta for sp in self.spectral_points if sp.stats)

    @property
    def all_bounds_hold(self) -> bool:
        return all(b.holds for b in self.bounds if b.applicable)

    def bound(self, name: str) -> BoundVerdict:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def to_dict(self) -> dict:
        F = self.field
        out = {
            "report_type": "analyze",
            "schema_version": SCHEMA_VERSION,
            "field": F.spec(),
            "characteristic_check": self.characteristic_check,
            "seed": self.seed,
            "mode": self.mode,
            "f": str(self.f),
            "g": str(self.g),
            "d": self.d,
            "spectral_points": [sp.as_dict(F) for sp in self.spectral_points],
            "rho": self.rho,
            "m": self.m,
            "omega": self.omega,
            "theta": self.theta,
            "kappa": self.kappa.kappa,
            "e_inf": self.kappa.e_inf,
            "kappa_member": format_point(F, self.kappa.member) if self.kappa.member else None,
            "bounds": [b.as_dict() for b in self.bounds],
            "warnings": list(self.warnings),
            "complete": self.complete,
        }
        if self.spect is not None:
            out["spect"] = self.spect
        if self.sparse is not None:
            out["sparse"] = self.sparse
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _spect_summary(S: BinaryForm, info: dict, seed: int) -> dict:
    F = S.field
    return {
        "degree": S.degree,
        "coefficients": S.coefficient_strings(),
        "form": str(S),
        "draws": info.get("draws", 0),
        "rational_roots": [
            {"point": format_point(F, pt), "multiplicity": k} for pt, k in rational_roots(S, seed)
        ],
        "nonsplit_factors": nonsplit_classes(S, seed),
    }


def global_bounds(P: Pencil, points: Sequence[SpectralPoint], complete: bool) -> list[BoundVerdict]:
    d = P.d
    stats = [sp.stats for sp in points if sp.stats is not None]
    rho = sum(s.n - 1 for s in stats)
    m = sum(s.m - 1 for s in stats)
    omega = sum(s.omega for s in stats)
    theta = sum(s.theta for s in stats)
    out = [
        _le("m_omega_theta_total", m + omega + theta, d * d - 1, complete),
        _le("rho_le_m", rho, m, complete),
        _le("omega_total", omega, 2 * d - 2, complete),
        _le("gamma_card", sum(1 for s in stats if s.in_gamma), 3, complete),
        _le("nonreduced_affine_fibers", sum(1 for s in stats if s.nonreduced_affine), 4, complete),
    ]
    if rho == d * d - 1:
        out.append(BoundVerdict("rho_max_implies_omega_zero", omega, 0, omega == 0, "==", True, complete))
    else:
        out.append(BoundVerdict("rho_max_implies_omega_zero", omega, 0, True, "==", False, complete,
                                f"rho = {rho} < d^2-1 = {d * d - 1}"))
    if P.g.is_constant():
        F = P.field
        affine = [sp for sp in points if sp.stats is not None and not (sp.point[0] == 0 and sp.point[1] == F.one)]
        lhs = sum(sp.stats.m - 1 + sp.stats.omega + sp.stats.theta for sp in affine)
        out.append(_le("affine_members_total", lhs, d * (d - 1) // 2, complete, "sum over members other than (0:1)"))
    for sp in points:
        if sp.spect_multiplicity is not None:
            out.append(
                BoundVerdict(
                    f"spect_multiplicity_{'_'.join(format_point(P.field, sp.point))}",
                    sp.kernel_dim, sp.spect_multiplicity, sp.kernel_dim <= sp.spect_multiplicity, "<=",
                )
            )
    return out


def choose_polygon(P: Pencil, how: str = "auto") -> LatticePolygon:
    """auto: N+(f+g); newton: hull of supp f and supp g; superior: its N+."""
    if how == "auto":
        return superior_envelope(newton_polygon(P.f + P.g))
    hull = LatticePolygon.hull(list(P.f.terms) + list(P.g.terms))
    if how == "newton":
        return hull
    if how == "superior":
        return superior_envelope(hull)
    raise ValueError(f"unknown polygon choice {how!r}")


def _sparse_section(
    P: Pencil,
    polygon: LatticePolygon,
    points: list,
    kappa: KappaInfo,
    complete: bool,
    warnings: list,
) -> tuple[dict, list[BoundVerdict]]:
    F = P.field
    d = P.d
    if not dense_polygon(d).contains_polygon(polygon):
        raise PolygonMismatch(f"{polygon} is not contained in N((1+X+Y)^{d})")
    edges = find_good_edges(polygon)
    edge = select_good_edge(edges)
    n_e = edge.n_edge if edge else 0
    dim_en = 2 * polygon.n_total - polygon.n_x - polygon.n_y - n_e
    bound = dim_en + kappa.kappa
    Nf, Ng = newton_polygon(P.f), newton_polygon(P.g)
    in_n = polygon.contains_polygon(Nf) and polygon.contains_polygon(Ng)
    in_plus = polygon.contains_polygon(superior_envelope(Nf)) and polygon.contains_polygon(superior_envelope(Ng))

    rho = sum(sp.stats.n - 1 for sp in points if sp.stats)
    m = sum(sp.stats.m - 1 for sp in points if sp.stats)

    f00, g00 = P.f.constant_term().value, P.g.constant_term().value
    origin_member = None
    origin_note = ""
    if f00 == 0 and g00 == 0:
        origin_ok = False
        origin_note = "f(0,0) = g(0,0) = 0: the point (-g(0,0):f(0,0)) is undefined"
    else:
        origin_member = normalize_point(F, F.neg(g00), f00)
        k = kernel_dim_at(P, origin_member)
        origin_ok = k == 0
        if not origin_ok:
            origin_note = f"(-g(0,0):f(0,0)) is spectral (kernel dimension {k})"

    verdicts = []
    for name, lhs, ok, note in (
        ("sparse_rho_newton", rho, in_n, "" if in_n else "N(f) or N(g) not contained in the polygon"),
        ("sparse_m_superior", m, in_plus, "" if in_plus else "N+(f) or N+(g) not contained in the polygon"),
        ("sparse_m_origin_regular", m, in_n and origin_ok,
         origin_note if not origin_ok else ("" if in_n else "N(f) or N(g) not contained in the polygon")),
    ):
        if ok:
            verdicts.append(_le(name, lhs, bound, complete))
        else:
            verdicts.append(BoundVerdict(name, lhs, bound, True, "<=", False, complete, note))

    sparse = {
        "polygon": [list(v) for v in polygon.vertices],
        "N": polygon.n_total,
        "N_X": polygon.n_x,
        "N_Y": polygon.n_y,
        "good_edge": edge.as_dict() if edge else None,
        "good_edges": [e.as_dict() for e in edges],
        "N_E": n_e,
        "dim_E_N": dim_en,
        "kappa": kappa.kappa,
        "bound": bound,
        "N_f_contained": in_n,
        "Nplus_f_contained": in_plus,
        "origin_member": format_point(F, origin_member) if origin_member else None,
        "origin_member_spectral": (not origin_ok) if origin_member else None,
    }
    domain = basis_E_N(polygon, edge, F)
    if len(domain) != dim_en:
        raise AssertionError("E_N basis size disagrees with 2N - N_X - N_Y - N_E")
    _check_char(F, d)
    for i, sp in enumerate(points):
        h = P.affine_member(sp.point)
        if polygon.contains_polygon(newton_polygon(h)):
            M = build_matrix_SR(h, polygon, edge, d=d, domain=domain)
            points[i] = _replace(sp, sr_kernel_dim=kernel_dimension(M))
        else:
            warnings.append(f"N of member {format_point(F, sp.point)} leaves the polygon; no sparse kernel")
    return sparse, verdicts


def _replace(sp: SpectralPoint, **kw) -> SpectralPoint:
    return replace(sp, **kw)


def analyze(P: Pencil, mode: str = "dense", rng_seed: int = 0, polygon: str | LatticePolygon = "auto") -> PencilReport:
    """Spectrum, statistics, kappa and every applicable bound verdict."""
    if mode not in ("dense", "sparse"):
        raise ValueError(f"mode must be dense or sparse, got {mode!r}")
    F = P.field
    d = P.d
    _check_char(F, d)
    warnings: list[str] = []
    complete = True
    spect = None
    points: list[SpectralPoint] = []

    if F.is_rational:
        info: dict = {}
        S = spect_polynomial(P, rng_seed, info)
        spect = _spect_summary(S, info, rng_seed)
        mats = pencil_matrices(P)
        for pt, mult in rational_roots(S, rng_seed):
            k = kernel_dim_at(P, pt, mats)
            if k == 0:
                warnings.append(f"root {format_point(F, pt)} of Spect is not spectral; dropped")
                continue
            stats = member_statistics(P.member(pt), kernel_dim=k)
            points.append(SpectralPoint(pt, k, stats, "computed", spect_multiplicity=mult))
        if spect["nonsplit_factors"]:
            complete = False
            warnings.append(
                "Spect has factors without rational roots; their spectral points lie in extensions of Q "
                "and are reported by degree and multiplicity only"
            )
    else:
        points = spectrum_bruteforce(P)
        warnings.append(f"spectral points defined only over extensions of F_{F.characteristic} are not enumerated")
        if F.characteristic > d * d:
            info = {}
            S = spect_polynomial(P, rng_seed, info)
            spect = _spect_summary(S, info, rng_seed)
            points = [_replace(sp, spect_multiplicity=S.root_multiplicity(sp.point)) for sp in points]
            if spect["nonsplit_factors"]:
                complete = False
        else:
            warnings.append(f"Spect not computed: needs p > d^2 = {d * d}")
        if any(sp.formula_status == "empirical" for sp in points):
            warnings.append("kernel-dimension formulas for non-squarefree members over F_p are checked empirically")

    kappa = compute_kappa(P)
    bounds = global_bounds(P, points, complete)
    sparse = None
    if mode == "sparse":
        poly = polygon if isinstance(polygon, LatticePolygon) else choose_polygon(P, polygon)
        sparse, verdicts = _sparse_section(P, poly, points, kappa, complete, warnings)
        bounds.extend(verdicts)
    if not complete:
        warnings.append("statistics cover rational spectral points only; bound left-hand sides are partial sums")
    return PencilReport(
        field=F,
        f=P.f,
        g=P.g,
        d=d,
        mode=mode,
        seed=rng_seed,
        spectral_points=points,
        kappa=kappa,
        bounds=bounds,
        warnings=warnings,
        characteristic_check=P.check_characteristic(),
        spect=spect,
        sparse=sparse,
        complete=complete,
    )


def good_edge_of(polygon: LatticePolygon) -> GoodEdge | None:
    return select_good_edge(find_good_edges(polygon))
