"""Dense matrices over a prime field.

Entries are stored as an ``int64`` numpy array of canonical representatives in
``[0, q)``. Elimination always runs on private copies; the public array is
marked read-only.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .field import F2, FieldElem, FieldSpec, inverse_table


class DimensionError(ValueError):
    pass


class Matrix:
    __slots__ = ("data", "field")

    def __init__(self, data, field: FieldSpec = F2):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
        arr %= field.q
        arr.setflags(write=False)
        self.data = arr
        self.field = field

    @classmethod
    def identity(cls, n: int, field: FieldSpec = F2) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None, field: FieldSpec = F2) -> "Matrix":
        return cls(np.zeros((rows, rows if cols is None else cols), dtype=np.int64), field)

    @classmethod
    def ones(cls, rows: int, cols: Optional[int] = None, field: FieldSpec = F2) -> "Matrix":
        return cls(np.ones((rows, rows if cols is None else cols), dtype=np.int64), field)

    @classmethod
    def random(cls, rows: int, cols: int, field: FieldSpec, rng: np.random.Generator) -> "Matrix":
        return cls(rng.integers(0, field.q, size=(rows, cols)), field)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "Matrix":
        return Matrix(self.data.T, self.field)

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(int(self.data[i, j]), self.field)

    def row(self, i: int) -> np.ndarray:
        return self.data[i]

    def col(self, j: int) -> np.ndarray:
        return self.data[:, j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _same_field(self, other)
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix(_matmul_mod(self.data, other.data, self.field.q), self.field)
        vec = np.asarray(other, dtype=np.int64)
        if vec.shape != (self.cols,):
            raise DimensionError(f"vector of length {vec.shape} does not match {self.shape}")
        return _matmul_mod(self.data, vec, self.field.q)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field.q, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.data.tolist()}, {self.field!r})"

    def tolist(self):
        return self.data.tolist()


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


def _matmul_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    # Entries are < q <= 8192, so products fit easily; reduce in chunks only
    # for inner dimensions that could overflow int64.
    inner = a.shape[-1]
    if inner * (q - 1) ** 2 < 2**62:
        return (a @ b) % q
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    step = max(1, (2**62) // ((q - 1) ** 2))
    for s in range(0, inner, step):
        out = (out + a[..., s : s + step] @ b[s : s + step]) % q
    return out


def row_echelon(data: np.ndarray, q: int, reduced: bool = False):
    """Gaussian elimination with first-nonzero pivoting.

    Returns the echelon form (a fresh array) and the list of pivot columns.
    """
    a = np.array(data, dtype=np.int64) % q
    rows, cols = a.shape
    inv = inverse_table(q)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * inv[a[r, c]]) % q
        if reduced:
            factors = a[:, c].copy()
            factors[r] = 0
            nzr = np.flatnonzero(factors)
        else:
            nzr = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(a[nzr, c], a[r])) % q
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.rows > M.cols:
        return len(row_echelon(M.data.T, M.field.q)[1])
    return len(row_echelon(M.data, M.field.q)[1])


def rank_f2_bits(rows: Sequence[int]) -> int:
    """Rank over F2 of rows packed as Python integers (bit j = column j)."""
    basis = {}  # leading bit -> vector
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def pack_f2_rows(M: Matrix):
    if M.field.q != 2:
        raise ValueError("bit packing is only defined over F2")
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in M.data]


def solve(A: Matrix, b) -> Optional[np.ndarray]:
    """Return some ``x`` with ``A @ x == b``, or ``None`` if the system is inconsistent."""
    b = np.asarray(b, dtype=np.int64) % A.field.q
    if b.shape != (A.rows,):
        raise DimensionError(f"right-hand side of length {b.shape} for a {A.shape} system")
    aug = np.concatenate([A.data, b[:, None]], axis=1)
    ech, pivots = row_echelon(aug, A.field.q, reduced=True)
    if pivots and pivots[-1] == A.cols:
        return None
    x = np.zeros(A.cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = ech[r, A.cols]
    return x


def sparsity(M: Matrix) -> int:
    return int(np.count_nonzero(M.data))


def index_sparsity(M: Matrix, i: int) -> int:
    """Nonzeros in row ``i`` plus nonzeros in column ``i``; a nonzero diagonal entry counts twice."""
    if M.rows != M.cols:
        raise DimensionError("index sparsity needs a square matrix")
    return int(np.count_nonzero(M.data[i]) + np.count_nonzero(M.data[:, i]))


def index_sparsities(M: Matrix) -> np.ndarray:
    nz = M.data != 0
    return nz.sum(axis=1) + nz.sum(axis=0)


class IncrementalBasis:
    """Span of vectors over F_q, grown one vector at a time.

    Stored vectors are kept fully reduced (identity on the pivot columns),
    so membership is one matrix-vector product.
    """

    def __init__(self, dim: int, field: FieldSpec):
        self.dim = dim
        self.field = field
        self._rows = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        q = self.field.q
        v = np.asarray(v, dtype=np.int64) % q
        if not self.pivots:
            return v
        return (v - _matmul_mod(v[self.pivots], self._rows, q)) % q

    def add(self, v) -> bool:
        """Add ``v`` if it is independent of the current span; report whether it was."""
        q = self.field.q
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        p = int(nz[0])
        r = (r * self.field.inverse_table[r[p]]) % q
        if self.pivots:
            self._rows = (self._rows - np.outer(self._rows[:, p], r)) % q
        self._rows = np.vstack([self._rows, r])
        self.pivots.append(p)
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()


def _check_order(order, size):
    order = list(range(size)) if order is None else [int(i) for i in order]
    if sorted(order) != list(range(size)):
        raise ValueError(f"order must be a permutation of range({size})")
    return order


def greedy_column_basis(M: Matrix, order: Optional[Iterable[int]] = None) -> list:
    """Scan columns in ``order``, keeping each one independent of those already kept."""
    order = _check_order(order, M.cols)
    basis = IncrementalBasis(M.rows, M.field)
    kept = []
    for j in order:
        if basis.add(M.data[:, j]):
            kept.append(j)
            if len(kept) == M.rows:
                break
    return kept


def greedy_row_basis(M: Matrix, order: Optional[Iterable[int]] = None) -> list:
    return greedy_column_basis(M.T, order)


def principal_submatrix(M: Matrix, indices: Sequence[int]) -> Matrix:
    """Restrict ``M`` to the rows and columns in ``indices`` (in the given order)."""
    if M.rows != M.cols:
        raise DimensionError("principal submatrices need a square matrix")
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError("indices must be distinct")
    for i in idx:
        if not 0 <= i < M.rows:
            raise IndexError(f"index {i} out of range for a {M.rows}x{M.rows} matrix")
    if not idx:
        return Matrix(np.zeros((0, 0), dtype=np.int64), M.field)
    return Matrix(M.data[np.ix_(idx, idx)], M.field)


def basis_sparsity(vectors: np.ndarray) -> int:
    return int(np.count_nonzero(vectors))
