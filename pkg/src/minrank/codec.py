"""A rank-k matrix is determined by k independent rows, k independent columns, and their indices.

``encode`` extracts such a pair of bases, ``decode`` rebuilds the matrix from
them, and ``count_rank_k_sparse_base_matrices`` counts, by exhaustive
enumeration, the matrices of rank k that admit s-sparse row and column bases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .field import FieldSpec
from .matrix import (
    Matrix,
    greedy_column_basis,
    greedy_row_basis,
    rank,
    row_echelon,
    solve,
)


class MalformedEncodingError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "enumerations"):
        need = str(required) if required < 10**12 else f"about 2^{required.bit_length() - 1}"
        super().__init__(f"needs {need} {what}, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class BasisEncoding:
    n: int
    field: FieldSpec
    row_indices: Tuple[int, ...]
    row_basis: np.ndarray  # k x n, row t is Row_{row_indices[t]}
    col_indices: Tuple[int, ...]
    col_basis: np.ndarray  # n x k, column t is Col_{col_indices[t]}

    @property
    def k(self) -> int:
        return len(self.row_indices)

    def intersection(self) -> np.ndarray:
        """The k x k block of rows ``row_indices`` and columns ``col_indices``."""
        return self.row_basis[:, list(self.col_indices)]

    def size_in_symbols(self) -> int:
        """Field elements for the bases plus base-q digits for the 2k indices."""
        digits = max(1, math.ceil(math.log(self.n, self.field.q))) if self.n > 1 else 1
        return 2 * self.k * self.n + 2 * self.k * digits


def encode(M: Matrix) -> BasisEncoding:
    if M.rows != M.cols:
        raise ValueError("encode expects a square matrix")
    rows = tuple(greedy_row_basis(M))
    cols = tuple(greedy_column_basis(M))
    return BasisEncoding(
        n=M.rows,
        field=M.field,
        row_indices=rows,
        row_basis=M.data[list(rows), :].copy(),
        col_indices=cols,
        col_basis=M.data[:, list(cols)].copy(),
    )


def validate(enc: BasisEncoding):
    n, k, q = enc.n, enc.k, enc.field.q
    R = np.asarray(enc.row_basis)
    C = np.asarray(enc.col_basis)
    if len(enc.col_indices) != k:
        raise MalformedEncodingError("row and column index lists differ in length")
    if R.shape != (k, n) or C.shape != (n, k):
        raise MalformedEncodingError(f"basis shapes {R.shape}, {C.shape} do not fit n={n}, k={k}")
    for name, idx in (("row", enc.row_indices), ("column", enc.col_indices)):
        if any(not 0 <= i < n for i in idx):
            raise MalformedEncodingError(f"{name} index out of range")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise MalformedEncodingError(f"{name} indices must be strictly increasing")
    if np.any((R < 0) | (R >= q)) or np.any((C < 0) | (C >= q)):
        raise MalformedEncodingError("entries must be canonical field elements")
    if k == 0:
        return
    # The stored rows and columns share the k x k intersection.
    if not np.array_equal(R[:, list(enc.col_indices)], C[list(enc.row_indices), :]):
        raise MalformedEncodingError("stored rows and columns disagree on their overlap")
    if len(row_echelon(enc.intersection(), q)[1]) != k:
        raise MalformedEncodingError("intersection submatrix is singular")


def decode(enc: BasisEncoding) -> Matrix:
    validate(enc)
    n, k, field = enc.n, enc.k, enc.field
    if k == 0:
        return Matrix.zeros(n, field=field)
    W = Matrix(enc.intersection(), field)
    out = np.zeros((n, n), dtype=np.int64)
    cols = set(enc.col_indices)
    for t, j in enumerate(enc.col_indices):
        out[:, j] = enc.col_basis[:, t]
    for i in range(n):
        if i in cols:
            continue
        # Col_i = C @ alpha, and restricted to the basis rows that reads W @ alpha = R[:, i].
        alpha = solve(W, enc.row_basis[:, i])
        out[:, i] = (enc.col_basis @ alpha) % field.q
    return Matrix(out, field)


def _min_basis_sparsity(vectors: np.ndarray, k: int, q: int) -> int:
    """Smallest total nonzero count over all sets of k independent rows of ``vectors``."""
    if k == 0:
        return 0
    weights = np.count_nonzero(vectors, axis=1)
    best = None
    for subset in itertools.combinations(range(vectors.shape[0]), k):
        w = int(weights[list(subset)].sum())
        if best is not None and w >= best:
            continue
        if len(row_echelon(vectors[list(subset)], q)[1]) == k:
            best = w
    return best


DEFAULT_COUNT_BUDGET = 1 << 16


def count_rank_k_sparse_base_matrices(
    n: int, k: int, s: int, field: FieldSpec, budget: int = DEFAULT_COUNT_BUDGET
) -> int:
    """Exact size of the set of n x n rank-k matrices with s-sparse row and column bases."""
    if s < 0:
        return 0
    return sparse_base_count_table(n, field, budget).get((k, min(s, n * n)), 0)


_TABLE_CACHE: Dict[Tuple[int, int], Dict[Tuple[int, int], int]] = {}


def sparse_base_count_table(n: int, field: FieldSpec, budget: int = DEFAULT_COUNT_BUDGET):
    """Map ``(k, s) -> count`` for every ``0 <= k <= n`` and ``0 <= s <= n*n``."""
    q = field.q
    total = q ** (n * n)
    if total > budget:
        raise BudgetExceededError(total, budget, "matrices")
    key = (n, q)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    # minimal (row, col) basis sparsity profile -> number of matrices
    profile: Dict[Tuple[int, int, int], int] = {}
    for flat in itertools.product(range(q), repeat=n * n):
        a = np.array(flat, dtype=np.int64).reshape(n, n)
        k = rank(Matrix(a, field))
        key3 = (k, _min_basis_sparsity(a, k, q), _min_basis_sparsity(a.T, k, q))
        profile[key3] = profile.get(key3, 0) + 1
    table = {}
    for k in range(n + 1):
        for s in range(n * n + 1):
            table[(k, s)] = sum(
                c for (kk, rs, cs), c in profile.items() if kk == k and rs <= s and cs <= s
            )
    _TABLE_CACHE[(n, q)] = table
    return table


def corollary_bound(n: int, q: int, s: int) -> int:
    return (n * q) ** (6 * s)
