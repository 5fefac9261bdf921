"""Command-line front end.

Exit status: 0 on success with every applicable bound verdict holding, 2 when
the run succeeded but at least one verdict failed, 1 on usage or input errors
(one diagnostic line on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bertini import bertini_reduce, parse_nvariate
from .errors import PencilkitError
from .exact_arith import Field
from .newton import (
    LatticePolygon,
    basis_E_N,
    find_good_edges,
    newton_polygon,
    render_ascii,
    render_svg,
    select_good_edge,
    superior_envelope,
)
from .paper_examples import paper_examples
from .polynomials import Poly, homogenize, parse, squarefree_decompose
from .ruppert import build_matrix_R, build_matrix_R_hom, kernel_dimension
from .spectrum import SCHEMA_VERSION, Pencil, analyze, global_bounds, spectrum_bruteforce

__all__ = ["main", "run", "build_parser", "resolve_seed"]

EXIT_OK, EXIT_ERROR, EXIT_BOUND_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_seed(flag: int | None, env: dict | None = None) -> int:
    if flag is not None:
        return flag
    env = os.environ if env is None else env
    raw = env.get("PENCIL_SEED")
    if raw is None or raw.strip() == "":
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"PENCIL_SEED must be an unsigned integer, got {raw!r}") from None
    if not 0 <= seed < 2**64:
        raise UsageError("PENCIL_SEED must fit in 64 unsigned bits")
    return seed


def _u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pencilkit", description="Exact analysis of pencils of plane curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, field=True):
        if field:
            sp.add_argument("--field", default="q", help="q or fp:<prime>")
        sp.add_argument("--seed", type=_u64, default=None, help="RNG seed (fallback: PENCIL_SEED, then 0)")
        sp.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
        sp.add_argument("--quiet", action="store_true", help="no summary line on stderr")

    a = sub.add_parser("analyze", help="spectrum, statistics and bound verdicts of a pencil")
    a.add_argument("--f", required=True)
    a.add_argument("--g", required=True)
    a.add_argument("--mode", choices=("dense", "sparse"), default="dense")
    a.add_argument("--polygon", choices=("auto", "newton", "superior"), default="auto")
    common(a)

    i = sub.add_parser("irreducible", help="absolute irreducibility through the Ruppert kernel")
    i.add_argument("--f", required=True)
    common(i)

    n = sub.add_parser("newton", help="Newton polygon, lattice counts and good edges")
    n.add_argument("--f", required=True)
    n.add_argument("--g", default=None)
    n.add_argument("--polygon", choices=("auto", "newton", "superior"), default="auto")
    n.add_argument("--svg", default=None, help="write an SVG rendering here")
    common(n)

    s = sub.add_parser("spectrum-bf", help="enumerate the spectrum over F_p")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--prime", type=int, required=True)
    common(s, field=False)

    b = sub.add_parser("bertini", help="reduce an n-variate polynomial to two variables")
    b.add_argument("--vars", type=int, required=True)
    b.add_argument("--poly", required=True)
    common(b)

    e = sub.add_parser("paper-examples", help="reference worked examples with stated-versus-computed values")
    common(e, field=False)
    return p


def _polygon_for(f: Poly, g: Poly | None, how: str) -> LatticePolygon:
    if how == "auto":
        return superior_envelope(newton_polygon(f + g if g is not None else f))
    pts = list(f.terms) + (list(g.terms) if g is not None else [])
    hull = LatticePolygon.hull(pts)
    return hull if how == "newton" else superior_envelope(hull)


def _cmd_analyze(args, seed: int) -> tuple[dict, bool, str]:
    F = Field.from_spec(args.field)
    P = Pencil(parse(args.f, F), parse(args.g, F))
    rep = analyze(P, mode=args.mode, rng_seed=seed, polygon=args.polygon)
    summary = f"rho={rep.rho} m={rep.m} omega={rep.omega} theta={rep.theta} kappa={rep.kappa.kappa}"
    return rep.to_dict(), rep.all_bounds_hold, summary


def _cmd_irreducible(args, seed: int) -> tuple[dict, bool, str]:
    F = Field.from_spec(args.field)
    f = parse(args.f, F)
    d = f.total_degree
    if f.is_zero() or d < 1:
        raise UsageError("irreducibility needs a non-constant polynomial")
    if d == 1:
        kdim, count = 0, 1
    else:
        kdim = kernel_dimension(build_matrix_R(f, d))
        count = 0
        for gk, k in squarefree_decompose(f).factors:
            dk = gk.total_degree
            r = 1 if dk == 1 else kernel_dimension(build_matrix_R_hom(homogenize(gk, dk))) + 1
            count += k * r
    out = {
        "report_type": "irreducible",
        "schema_version": SCHEMA_VERSION,
        "field": F.spec(),
        "f": str(f),
        "d": d,
        "kernel_dim": kdim,
        "irreducible": kdim == 0,
        "factor_count": count,
    }
    return out, True, f"irreducible: {'true' if kdim == 0 else 'false'}"


def _cmd_newton(args, seed: int) -> tuple[dict, bool, str]:
    F = Field.from_spec(args.field)
    f = parse(args.f, F)
    g = parse(args.g, F) if args.g is not None else None
    P = _polygon_for(f, g, args.polygon)
    edges = find_good_edges(P)
    edge = select_good_edge(edges)
    support = sorted(set(f.terms) | (set(g.terms) if g is not None else set()))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(P, support, edges))
    out = {
        "report_type": "newton",
        "schema_version": SCHEMA_VERSION,
        "f": str(f),
        "g": str(g) if g is not None else None,
        "polygon": args.polygon,
        "vertices": [list(v) for v in P.vertices],
        "N": P.n_total,
        "N_X": P.n_x,
        "N_Y": P.n_y,
        "good_edges": [e.as_dict() for e in edges],
        "good_edge": edge.as_dict() if edge else None,
        "dim_E_N": len(basis_E_N(P, edge, F)),
        "ascii": render_ascii(P, support),
        "svg": args.svg,
    }
    return out, True, f"N={P.n_total} N_X={P.n_x} N_Y={P.n_y} N_E={edge.n_edge if edge else 0}"


def _cmd_spectrum_bf(args, seed: int) -> tuple[dict, bool, str]:
    F = Field.prime(args.prime)
    P = Pencil(parse(args.f, F), parse(args.g, F))
    points = spectrum_bruteforce(P)
    bounds = global_bounds(P, points, complete=False)
    out = {
        "report_type": "spectrum_bf",
        "schema_version": SCHEMA_VERSION,
        "field": F.spec(),
        "f": str(P.f),
        "g": str(P.g),
        "d": P.d,
        "spectral_points": [sp.as_dict(F) for sp in points],
        "bounds": [b.as_dict() for b in bounds],
    }
    ok = all(b.holds for b in bounds if b.applicable)
    return out, ok, f"{len(points)} spectral point(s) over {F.spec()}"


def _cmd_bertini(args, seed: int) -> tuple[dict, bool, str]:
    F = Field.from_spec(args.field)
    red = bertini_reduce(parse_nvariate(args.poly, args.vars, F), seed=seed, field=F)
    kdim = kernel_dimension(build_matrix_R_hom(homogenize(red.poly, red.degree)))
    out = {
        "report_type": "bertini",
        "schema_version": SCHEMA_VERSION,
        "field": F.spec(),
        "input": args.poly,
        "vars": args.vars,
        "seed": seed,
        "reduction": red.as_dict(),
        "kernel_dim": kdim,
        "irreducible": kdim == 0,
    }
    return out, True, f"reduced in {red.attempts} draw(s); kernel_dim={kdim}"


def _cmd_paper_examples(args, seed: int) -> tuple[dict, bool, str]:
    out = paper_examples(seed=seed)
    return out, True, f"{len(out['discrepancies'])} stated value(s) differ from computed ones"


_COMMANDS = {
    "analyze": _cmd_analyze,
    "irreducible": _cmd_irreducible,
    "newton": _cmd_newton,
    "spectrum-bf": _cmd_spectrum_bf,
    "bertini": _cmd_bertini,
    "paper-examples": _cmd_paper_examples,
}


def run(argv: Sequence[str], stdout=None, stderr=None, env: dict | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(list(argv))
        seed = resolve_seed(args.seed, env)
        report, ok, summary = _COMMANDS[args.command](args, seed)
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        if not args.quiet:
            stderr.write(summary + ("" if ok else " [bound verdict FAILED]") + "\n")
        return EXIT_OK if ok else EXIT_BOUND_FAILED
    except UsageError as exc:
        stderr.write(f"cli.UsageError: {exc}\n")
    except PencilkitError as exc:
        stderr.write(exc.diagnostic() + "\n")
    except ValueError as exc:
        stderr.write(f"cli.InputError: {exc}\n")
    except OSError as exc:
        stderr.write(f"cli.IOError: {exc}\n")
    return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
