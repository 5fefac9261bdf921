"""Newton polygons, superior envelopes, good edges and the sparse Ruppert map.

Polygons live in the first quadrant and are stored by their extreme
vertices in counter-clockwise order.  Points and segments are legal
(degenerate) polygons.  Lattice counts always refer to the closed region.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    CharacteristicTooSmall,
    EdgeNotGood,
    EnvelopeAssertionFailed,
    PolygonMismatch,
    WitnessContainmentFailed,
    ZeroPolynomial,
)
from .exact_arith import QQ, Field
from .polynomials import Poly, gcd_bivariate, monomials_up_to_degree, weighted_degree
from .ruppert import DomainBasis, RuppertMatrix, apply_operator, build_matrix

Point = tuple  # (x, y)

__all__ = [
    "LatticePolygon",
    "GoodEdge",
    "Witness",
    "convex_hull",
    "newton_polygon",
    "superior_envelope",
    "dense_polygon",
    "find_good_edges",
    "select_good_edge",
    "minkowski_sum",
    "basis_E_N",
    "build_matrix_SR",
    "in_E_N",
    "kerdef_witnesses",
    "render_ascii",
    "render_svg",
]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> tuple:
    """Extreme points of the hull, counter-clockwise from the lowest-leftmost."""
    pts = sorted({(int(x), int(y)) for x, y in points}, key=lambda p: (p[1], p[0]))
    if len(pts) <= 1:
        return tuple(pts)
    pts.sort()
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    start = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
    return tuple(hull[start:] + hull[:start])


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon in the first quadrant (closed region)."""

    vertices: tuple

    def __post_init__(self):
        if any(x < 0 or y < 0 for x, y in self.vertices):
            raise ValueError("polygons must lie in the first quadrant")
        if convex_hull(self.vertices) != tuple(self.vertices):
            raise ValueError(f"vertices {self.vertices} are not a reduced counter-clockwise hull")

    @classmethod
    def hull(cls, points: Iterable[Point]) -> "LatticePolygon":
        verts = convex_hull(points)
        if not verts:
            raise ValueError("hull of an empty point set")
        return cls(verts)

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def x_max(self) -> int:
        return max(v[0] for v in self.vertices)

    @property
    def y_max(self) -> int:
        return max(v[1] for v in self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) < 2:
            return []
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains(self, p: Point) -> bool:
        v = self.vertices
        if len(v) == 1:
            return tuple(p) == v[0]
        if len(v) == 2:
            a, b = v
            return (
                _cross(a, b, p) == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
            )
        return all(_cross(a, b, p) >= 0 for a, b in self.edges())

    def contains_polygon(self, other: "LatticePolygon") -> bool:
        return all(self.contains(p) for p in other.vertices)

    @cached_property
    def lattice_points(self) -> tuple:
        return tuple(
            (x, y)
            for y in range(self.y_max + 1)
            for x in range(self.x_max + 1)
            if self.contains((x, y))
        )

    @property
    def n_total(self) -> int:
        return len(self.lattice_points)

    @property
    def n_x(self) -> int:
        return sum(1 for _x, y in self.lattice_points if y == 0)

    @property
    def n_y(self) -> int:
        return sum(1 for x, _y in self.lattice_points if x == 0)

    def counts(self) -> dict:
        return {"N": self.n_total, "N_X": self.n_x, "N_Y": self.n_y}

    def __str__(self):
        return "hull{" + ", ".join(f"({x},{y})" for x, y in self.vertices) + "}"


@dataclass(frozen=True)
class GoodEdge:
    """Edge with equation a*x + b*y = c dominating the rest of the polygon."""

    p: Point
    q: Point
    a: int
    b: int
    c: int

    @property
    def normal(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def level(self) -> int:
        return self.c

    @property
    def n_edge(self) -> int:
        return gcd(abs(self.q[0] - self.p[0]), abs(self.q[1] - self.p[1])) + 1

    def weight(self, pt: Point) -> int:
        return self.a * pt[0] + self.b * pt[1]

    def on_edge(self, pt: Point) -> bool:
        return self.weight(pt) == self.c

    def as_dict(self) -> dict:
        return {"p": list(self.p), "q": list(self.q), "a": self.a, "b": self.b, "c": self.c, "N_E": self.n_edge}


def newton_polygon(f: Poly) -> LatticePolygon:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return LatticePolygon.hull(f.terms)


def dense_polygon(d: int) -> LatticePolygon:
    """N((1 + X + Y)^d)."""
    if d == 0:
        return LatticePolygon(((0, 0),))
    return LatticePolygon(((0, 0), (d, 0), (0, d)))


def superior_envelope(P: LatticePolygon) -> LatticePolygon:
    """Hull of P with the origin and the axis projections of its extremes.

    Every boundary edge off the axes is asserted to have non-positive slope.
    """
    xm, ym = P.x_max, P.y_max
    env = LatticePolygon.hull(list(P.vertices) + [(0, 0), (xm, 0), (0, ym)])
    for a, b in env.edges():
        if (a[1] == 0 and b[1] == 0) or (a[0] == 0 and b[0] == 0):
            continue
        dx, dy = b[0] - a[0], b[1] - a[1]
        if dx * dy > 0:
            raise EnvelopeAssertionFailed(f"edge {a}-{b} of the envelope has positive slope")
    return env


def _candidate_edges(P: LatticePolygon) -> list[tuple[Point, Point, int, int]]:
    out = []
    for p, q in P.edges():
        dx, dy = q[0] - p[0], q[1] - p[1]
        g = gcd(abs(dx), abs(dy))
        normals = [(dy // g, -dx // g)]
        if P.kind == "segment":
            normals.append((-dy // g, dx // g))
        for a, b in normals:
            out.append((p, q, a, b))
    if P.kind == "segment":
        out = out[:2]
    return out


def is_good(P: LatticePolygon, edge: GoodEdge) -> bool:
    if edge.a < 0 or edge.b < 0 or (edge.a, edge.b) == (0, 0) or edge.c < 1:
        return False
    if edge.weight(edge.p) != edge.c or edge.weight(edge.q) != edge.c:
        return False
    for pt in P.lattice_points:
        w = edge.weight(pt)
        if w > edge.c or w < 0:
            return False
        if w == edge.c and not _between(edge.p, edge.q, pt):
            return False
    return True


def _between(p: Point, q: Point, pt: Point) -> bool:
    return (
        _cross(p, q, pt) == 0
        and min(p[0], q[0]) <= pt[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= pt[1] <= max(p[1], q[1])
    )


def find_good_edges(P: LatticePolygon) -> list[GoodEdge]:
    """All good edges: outward normal (a, b) >= 0, level c >= 1, strict dominance."""
    found = []
    for p, q, a, b in _candidate_edges(P):
        if a < 0 or b < 0:
            continue
        e = GoodEdge(p, q, a, b, a * p[0] + b * p[1])
        if is_good(P, e):
            found.append(e)
    return found


def select_good_edge(edges: Sequence[GoodEdge]) -> GoodEdge | None:
    """Largest N_E, ties broken by the lexicographically smallest normal."""
    if not edges:
        return None
    return min(edges, key=lambda e: (-e.n_edge, e.a, e.b))


def _edge_vectors(verts: tuple) -> list[Point]:
    if len(verts) < 2:
        return []
    return [(verts[(i + 1) % len(verts)][0] - verts[i][0], verts[(i + 1) % len(verts)][1] - verts[i][1]) for i in range(len(verts))]


def _angle_key(v: Point):
    # half 0: angle in [0, pi), half 1: [pi, 2 pi)
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return half, v


def _angle_less(u: Point, v: Point) -> bool:
    hu, hv = _angle_key(u)[0], _angle_key(v)[0]
    if hu != hv:
        return hu < hv
    return u[0] * v[1] - u[1] * v[0] > 0


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum by merging the edge sequences in angular order."""
    start = (P.vertices[0][0] + Q.vertices[0][0], P.vertices[0][1] + Q.vertices[0][1])
    ep, eq = _edge_vectors(P.vertices), _edge_vectors(Q.vertices)
    i = j = 0
    pts = [start]
    cur = start
    while i < len(ep) or j < len(eq):
        if j >= len(eq) or (i < len(ep) and not _angle_less(eq[j], ep[i])):
            v = ep[i]
            i += 1
        else:
            v = eq[j]
            j += 1
        cur = (cur[0] + v[0], cur[1] + v[1])
        pts.append(cur)
    return LatticePolygon.hull(pts)


# sparse domain


def _check_edge(P: LatticePolygon, edge: GoodEdge | None) -> None:
    if edge is None:
        return
    if not is_good(P, edge) or not (P.contains(edge.p) and P.contains(edge.q)):
        raise EdgeNotGood(f"edge {edge.p}-{edge.q} with normal {edge.normal} is not a good edge of {P}")
    if not any(
        {edge.p, edge.q} == {p, q} or (_between(p, q, edge.p) and _between(p, q, edge.q))
        for p, q in P.edges()
    ) and P.kind != "point":
        raise EdgeNotGood(f"{edge.p}-{edge.q} is not an edge of {P}")


def basis_E_N(P: LatticePolygon, edge: GoodEdge | None = None, field: Field = QQ) -> DomainBasis:
    """Basis of pairs (G, H) with supp(XG), supp(YH) in P and, for a good edge
    with equation a*x + b*y = c, the weighted top part of a*X*G + b*Y*H zero.

    Each lattice point n on the edge imposes a * g_n + b * h_n = 0 on the
    coefficient g_n of X^(n-(1,0)) in G and h_n of X^(n-(0,1)) in H.  Slots
    with zero weight are unconstrained, so every edge point removes exactly
    one dimension and the total is 2N - N_X - N_Y - N_E.
    """
    _check_edge(P, edge)
    pts = P.lattice_points
    zero = Poly._raw(field, {})
    order = sorted(pts, key=lambda p: (-(p[0] + p[1]), -p[0]))
    g_slots = [(x - 1, y) for x, y in order if x >= 1]
    h_slots = [(x, y - 1) for x, y in order if y >= 1]
    constrained_g: set = set()
    constrained_h: set = set()
    coupled = []
    if edge is not None:
        a, b = edge.normal
        for x, y in order:
            if not edge.on_edge((x, y)):
                continue
            gs = (x - 1, y) if x >= 1 and a != 0 else None
            hs = (x, y - 1) if y >= 1 and b != 0 else None
            if gs is not None:
                constrained_g.add(gs)
            if hs is not None:
                constrained_h.add(hs)
            if gs is not None and hs is not None:
                coupled.append((gs, hs, a, b))
    elems = []
    for m in g_slots:
        if m not in constrained_g:
            elems.append((Poly._raw(field, {m: field.one}), zero))
    for m in h_slots:
        if m not in constrained_h:
            elems.append((zero, Poly._raw(field, {m: field.one})))
    for gs, hs, a, b in coupled:
        elems.append((Poly._raw(field, {gs: field.coerce(b)}), Poly._raw(field, {hs: field.coerce(-a)})))
    param = {"polygon": [list(v) for v in P.vertices], "edge": edge.as_dict() if edge else None}
    return DomainBasis("SparseConstrained", param, field, tuple(elems))


def expected_dim_E_N(P: LatticePolygon, edge: GoodEdge | None) -> int:
    return 2 * P.n_total - P.n_x - P.n_y - (edge.n_edge if edge else 0)


def in_E_N(G: Poly, H: Poly, P: LatticePolygon, edge: GoodEdge | None) -> bool:
    """Membership of (G, H) in E_N, tested directly from the definition."""
    for i, j in G.terms:
        if not P.contains((i + 1, j)):
            return False
    for i, j in H.terms:
        if not P.contains((i, j + 1)):
            return False
    if edge is None:
        return True
    F = G.field
    a, b = edge.normal
    S = Poly.X(F) * G * a + Poly.Y(F) * H * b
    return S.is_zero() or weighted_degree(S, a, b) <= edge.c - 1


def _check_char(field: Field, bound: int) -> None:
    p = field.characteristic
    if p and p <= bound:
        raise CharacteristicTooSmall(f"characteristic {p} must exceed {bound}")


def build_matrix_SR(
    h: Poly,
    P: LatticePolygon,
    edge: GoodEdge | None = None,
    d: int | None = None,
    domain: DomainBasis | None = None,
) -> RuppertMatrix:
    """Sparse map on E_N with codomain the monomials of degree <= 2d - 2.

    ``d`` defaults to the largest total degree of a point of P.
    """
    if d is None:
        d = max(x + y for x, y in P.vertices)
    _check_char(h.field, d * (d - 1))
    if not h.is_zero() and not P.contains_polygon(newton_polygon(h)):
        raise PolygonMismatch(f"N({h}) is not contained in {P}")
    if domain is None:
        domain = basis_E_N(P, edge, h.field)
    cod = monomials_up_to_degree(2 * d - 2)
    return build_matrix("SR_sparse", h, domain, cod, source=f"SR({h})")


# kernel witnesses


@dataclass(frozen=True)
class Witness:
    """One explicit kernel element (G, H) with the containments it satisfies."""

    i: int
    k: int
    G: Poly
    H: Poly
    checks: dict

    @property
    def pair(self) -> tuple:
        return (self.G, self.H)


def _support_in(p: Poly, P: LatticePolygon) -> bool:
    return all(P.contains(m) for m in p.terms)


def kerdef_witnesses(
    factors: Sequence[tuple[Poly, int]],
    edge_normal: tuple[int, int] = (1, 1),
) -> list[Witness]:
    """The (sum e_i) - 1 explicit kernel elements built from a factorization.

    For i >= 2 (with weighted degrees d_ab):
        G = -d_ab(f_i) (f/f_1) df_1/dX + d_ab(f_1) (f/f_i) df_i/dX
    and for k = 2..e_i:
        G = (f/f_i^k) df_i/dX
    with H the same using d/dY.  Containment (i) is checked against N(f),
    (ii) against N+(f) and also against N(f) when f(0,0) != 0, and (iii) when
    ``edge_normal`` is the normal of a good edge of N(f).  ``checks`` also
    records the N(f) containment for k >= 2 when f(0,0) = 0, where it is
    allowed to fail.
    """
    if not factors:
        return []
    field = factors[0][0].field
    f = Poly.const(1, field)
    for fi, ei in factors:
        if fi.is_constant():
            raise ValueError("factors must be non-constant")
        f = f * fi**ei
    d = f.total_degree
    _check_char(field, d)
    for x in range(len(factors)):
        for y in range(x + 1, len(factors)):
            if not gcd_bivariate(factors[x][0], factors[y][0]).is_constant():
                raise WitnessContainmentFailed(f"factors {x + 1} and {y + 1} are not coprime")
    a, b = edge_normal
    Nf = newton_polygon(f)
    Nplus = superior_envelope(Nf)
    good = [e for e in find_good_edges(Nf) if e.normal == (a, b)]
    edge = good[0] if good else None
    f00_nonzero = not f.constant_term().is_zero()
    X, Y = Poly.X(field), Poly.Y(field)

    raw = []
    f1, _e1 = factors[0]
    w1 = weighted_degree(f1, a, b)
    q1 = f.exact_div(f1)
    for idx in range(1, len(factors)):
        fi, _ei = factors[idx]
        wi = weighted_degree(fi, a, b)
        qi = f.exact_div(fi)
        G = q1 * f1.diff("X") * (-wi) + qi * fi.diff("X") * w1
        H = q1 * f1.diff("Y") * (-wi) + qi * fi.diff("Y") * w1
        raw.append((idx + 1, 1, G, H))
    for idx, (fi, ei) in enumerate(factors):
        for k in range(2, ei + 1):
            q = f.exact_div(fi**k)
            raw.append((idx + 1, k, q * fi.diff("X"), q * fi.diff("Y")))

    out = []
    for i, k, G, H in raw:
        XG, YH = X * G, Y * H
        checks: dict = {}
        in_nf = _support_in(XG, Nf) and _support_in(YH, Nf)
        if k == 1:
            checks["i_in_N"] = in_nf
            if not in_nf:
                raise WitnessContainmentFailed(f"witness ({i},{k}) leaves N(f)")
        else:
            in_plus = _support_in(XG, Nplus) and _support_in(YH, Nplus)
            checks["ii_in_Nplus"] = in_plus
            checks["ii_in_N"] = in_nf
            if not in_plus:
                raise WitnessContainmentFailed(f"witness ({i},{k}) leaves N+(f)")
            if f00_nonzero and not in_nf:
                raise WitnessContainmentFailed(f"witness ({i},{k}) leaves N(f) although f(0,0) != 0")
        if edge is not None:
            S = XG * a + YH * b
            ok = S.is_zero() or weighted_degree(S, a, b) <= weighted_degree(f, a, b) - 1
            checks["iii_weighted"] = ok
            if not ok:
                raise WitnessContainmentFailed(f"witness ({i},{k}) violates the weighted-degree bound")
        checks["in_kernel"] = apply_operator(f, G, H).is_zero()
        if not checks["in_kernel"]:
            raise WitnessContainmentFailed(f"witness ({i},{k}) is not annihilated by the operator")
        out.append(Witness(i, k, G, H, checks))
    return out


# rendering


def render_ascii(P: LatticePolygon, support: Iterable[Point] = ()) -> str:
    """Rows from top to bottom: '*' support point, '.' lattice point, ' ' outside."""
    sup = {tuple(s) for s in support}
    xm = max([P.x_max] + [s[0] for s in sup])
    ym = max([P.y_max] + [s[1] for s in sup])
    lines = []
    for y in range(ym, -1, -1):
        row = []
        for x in range(xm + 1):
            if (x, y) in sup:
                row.append("*")
            elif P.contains((x, y)):
                row.append(".")
            else:
                row.append(" ")
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines) + "\n"


PITCH = 32


def render_svg(
    P: LatticePolygon,
    support: Iterable[Point] = (),
    good_edges: Sequence[GoodEdge] = (),
    title: str = "",
) -> str:
    """Deterministic SVG: 32 px lattice pitch, axes, hull filled at 20% opacity."""
    sup = sorted({tuple(s) for s in support})
    xm = max([P.x_max] + [s[0] for s in sup]) + 1
    ym = max([P.y_max] + [s[1] for s in sup]) + 1
    margin = PITCH
    width = xm * PITCH + 2 * margin
    height = ym * PITCH + 2 * margin

    def sx(x):
        return margin + x * PITCH

    def sy(y):
        return height - margin - y * PITCH

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(xm)}" y2="{sy(0)}" stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(ym)}" stroke="black" stroke-width="1"/>')
    for y in range(ym + 1):
        for x in range(xm + 1):
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="1.5" fill="#888"/>')
    pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in P.vertices)
    if P.kind == "polygon":
        out.append(f'<polygon points="{pts}" fill="steelblue" fill-opacity="0.2" stroke="steelblue" stroke-width="1.5"/>')
    elif P.kind == "segment":
        out.append(f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    for e in good_edges:
        out.append(
            f'<line x1="{sx(e.p[0])}" y1="{sy(e.p[1])}" x2="{sx(e.q[0])}" y2="{sy(e.q[1])}" '
            f'stroke="crimson" stroke-width="4"/>'
        )
    for x, y in sup:
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
