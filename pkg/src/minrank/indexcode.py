"""Linear index codes built from representing matrices.

The sender broadcasts ``y = E x`` where the rows of ``E`` are a row basis of a
matrix ``M`` representing the side-information graph. Receiver ``i`` writes
``Row_i(M) = lambda_i E``, so ``lambda_i . y = sum_j M[i, j] x_j``; every term
other than ``M[i, i] x_i`` involves only symbols it already holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping

import numpy as np

from .field import FieldSpec
from .graph import DiGraph, is_representing
from .matrix import DimensionError, Matrix, greedy_row_basis, solve


class SideInformationError(KeyError):
    pass


@dataclass(frozen=True)
class ReceiverData:
    coefficients: np.ndarray  # lambda_i, length k
    side: Dict[int, int]  # j -> M[i, j] for every j in K_i
    diagonal: int


@dataclass(frozen=True)
class LinearIndexCode:
    n: int
    field: FieldSpec
    encoding_rows: np.ndarray  # k x n
    receivers: List[ReceiverData]

    @property
    def k(self) -> int:
        return self.encoding_rows.shape[0]

    def knows(self, i: int) -> List[int]:
        return sorted(self.receivers[i].side)


def build_code(G: DiGraph, M: Matrix) -> LinearIndexCode:
    if not is_representing(M, G):
        raise ValueError("matrix does not represent the graph")
    q = M.field.q
    basis = greedy_row_basis(M)
    E = M.data[basis, :].copy()
    Et = Matrix(E.T, M.field)
    receivers = []
    for i in range(G.n):
        lam = solve(Et, M.data[i])
        if lam is None:  # unreachable: E spans the row space
            raise RuntimeError(f"row {i} is not in the span of the row basis")
        side = {j: int(M.data[i, j]) for j in G.out_neighbors(i)}
        receivers.append(ReceiverData(lam % q, side, int(M.data[i, i])))
    return LinearIndexCode(G.n, M.field, E, receivers)


def broadcast(code: LinearIndexCode, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (code.n,):
        raise DimensionError(f"message must have length {code.n}, got {x.shape}")
    return (code.encoding_rows @ (x % code.field.q)) % code.field.q


def decode_symbol(code: LinearIndexCode, i: int, y, side: Mapping[int, int]) -> int:
    """Recover ``x_i`` from the broadcast ``y`` and the symbols ``{j: x_j}`` for ``j`` in ``K_i``."""
    rec = code.receivers[i]
    q = code.field.q
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (code.k,):
        raise DimensionError(f"broadcast must have length {code.k}, got {y.shape}")
    missing = rec.side.keys() - side.keys()
    if missing:
        raise SideInformationError(f"receiver {i} is missing side information for {sorted(missing)}")
    extra = side.keys() - rec.side.keys()
    if extra:
        raise SideInformationError(f"receiver {i} does not know {sorted(extra)}")
    acc = int(rec.coefficients @ y) % q
    for j, c in rec.side.items():
        if c:
            acc -= c * int(side[j])
    return (acc * code.field.inv_int(rec.diagonal)) % q


def simulate(code: LinearIndexCode, G: DiGraph, messages) -> int:
    """Decode every receiver for each message; return the number of correct decodes."""
    ok = 0
    for x in messages:
        x = np.asarray(x, dtype=np.int64)
        y = broadcast(code, x)
        for i in range(code.n):
            side = {j: int(x[j]) for j in G.out_neighbors(i)}
            ok += decode_symbol(code, i, y, side) == x[i]
    return ok
