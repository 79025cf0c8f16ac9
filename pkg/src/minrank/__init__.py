"""Minrank of directed graphs over prime fields: bounds, certificates, and linear index codes."""

from .field import F2, FieldElem, FieldSpec
from .matrix import Matrix, rank, solve, sparsity
from .graph import DiGraph, complement, sample_gnp, shift
from .codec import BasisEncoding, decode, encode
from .bounds import (
    compute_bounds,
    clique_cover_upper_bound,
    exact_minrank,
    independent_set_lower_bound,
    sparse_basis_submatrix,
    sparsity_lower_bound,
)
from .indexcode import LinearIndexCode, broadcast, build_code, decode_symbol

__all__ = [
    "F2", "FieldElem", "FieldSpec", "Matrix", "rank", "solve", "sparsity",
    "DiGraph", "complement", "sample_gnp", "shift", "BasisEncoding", "decode", "encode",
    "compute_bounds", "clique_cover_upper_bound", "exact_minrank",
    "independent_set_lower_bound", "sparse_basis_submatrix", "sparsity_lower_bound",
    "LinearIndexCode", "broadcast", "build_code", "decode_symbol",
]
