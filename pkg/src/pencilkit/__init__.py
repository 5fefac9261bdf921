"""Exact analysis of pencils of plane algebraic curves."""

from .bertini import BertiniReduction, bertini_reduce, parse_nvariate
from .binary_forms import BinaryForm, rational_roots
from .errors import PencilkitError
from .exact_arith import QQ, Field, FieldElement
from .newton import (
    GoodEdge,
    LatticePolygon,
    basis_E_N,
    build_matrix_SR,
    dense_polygon,
    find_good_edges,
    kerdef_witnesses,
    minkowski_sum,
    newton_polygon,
    select_good_edge,
    superior_envelope,
)
from .polynomials import HomPoly3, Poly, dehomogenize, homogenize, parse, parse_homogeneous, squarefree_decompose
from .ruppert import (
    build_matrix_G,
    build_matrix_R,
    build_matrix_R_hom,
    build_matrix_R_of_one,
    dim_ker_G_formula,
    dim_ker_R_formula,
    dim_ker_R_hom_formula,
    is_absolutely_irreducible,
    kernel_dimension,
)
from .spectrum import Pencil, PencilReport, analyze, member_statistics, spect_polynomial, spectrum_bruteforce

__version__ = "0.1.0"

__all__ = [
    "BertiniReduction",
    "BinaryForm",
    "Field",
    "FieldElement",
    "GoodEdge",
    "HomPoly3",
    "LatticePolygon",
    "Pencil",
    "PencilReport",
    "PencilkitError",
    "Poly",
    "QQ",
    "analyze",
    "basis_E_N",
    "bertini_reduce",
    "build_matrix_G",
    "build_matrix_R",
    "build_matrix_R_hom",
    "build_matrix_R_of_one",
    "build_matrix_SR",
    "dehomogenize",
    "dense_polygon",
    "dim_ker_G_formula",
    "dim_ker_R_formula",
    "dim_ker_R_hom_formula",
    "find_good_edges",
    "homogenize",
    "is_absolutely_irreducible",
    "kerdef_witnesses",
    "kernel_dimension",
    "member_statistics",
    "minkowski_sum",
    "newton_polygon",
    "parse",
    "parse_homogeneous",
    "parse_nvariate",
    "rational_roots",
    "select_good_edge",
    "spect_polynomial",
    "spectrum_bruteforce",
    "squarefree_decompose",
    "superior_envelope",
]
