"""Executable property suites, run from the CLI as ``minrank verify <suite>``.

Each suite returns a :class:`SuiteResult`; the first violation stops the
suite and is kept as a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from .bounds import (
    clique_cover_upper_bound,
    compute_bounds,
    exact_minrank,
    product_bound_holds,
    sparse_basis_submatrix,
)
from .codec import corollary_bound, decode, encode, sparse_base_count_table
from .field import F2, FieldSpec
from .graph import DiGraph, complement, sample_gnp
from .indexcode import build_code, simulate
from .matrix import Matrix, rank, sparsity


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name}: {status} ({self.checked} checked)"
        if self.detail:
            text += f" {self.detail}"
        if self.counterexample:
            text += f"\n  counterexample: {self.counterexample}"
        return text


# ---------------------------------------------------------------- generators


def random_rank_k(n: int, k: int, field: FieldSpec, rng) -> Matrix:
    """A product of random n x k and k x n factors, resampled until its rank is exactly k."""
    while True:
        A = rng.integers(0, field.q, size=(n, k))
        B = rng.integers(0, field.q, size=(k, n))
        M = Matrix((A @ B) % field.q, field)
        if rank(M) == k:
            return M


def clique_blocks(n: int, sizes, field: FieldSpec, rng) -> np.ndarray:
    """Block-diagonal, each block a rank-one outer product of nonzero vectors."""
    out = np.zeros((n, n), dtype=np.int64)
    start = 0
    for b in sizes:
        u = rng.integers(1, field.q, size=b)
        v = rng.integers(1, field.q, size=b)
        out[start : start + b, start : start + b] = np.outer(u, v) % field.q
        start += b
    return out


def random_partition(n: int, rng) -> list:
    parts = []
    left = n
    while left:
        b = int(rng.integers(1, left + 1)) if rng.random() < 0.3 else int(rng.integers(1, min(left, 8) + 1))
        parts.append(b)
        left -= b
    return parts


def column_concentrated(b: int, field: FieldSpec, rng) -> Matrix:
    """b blocks of size b on the diagonal, with the first b columns overwritten at random."""
    n = b * b
    a = np.kron(np.eye(b, dtype=np.int64), np.ones((b, b), dtype=np.int64))
    a[:, :b] = rng.integers(0, field.q, size=(n, b))
    return Matrix(a, field)


def nonzero_diagonal_matrix(n: int, field: FieldSpec, rng, family: int) -> Matrix:
    q = field.q
    if family == 0:
        a = rng.integers(0, q, size=(n, n))
    elif family == 1:
        a = clique_blocks(n, random_partition(n, rng), field, rng)
        perm = rng.permutation(n)
        a = a[np.ix_(perm, perm)]
    elif family == 2:
        density = rng.uniform(0.0, 0.2)
        a = np.where(rng.random((n, n)) < density, rng.integers(1, q, size=(n, n)), 0)
    else:
        a = clique_blocks(n, random_partition(n, rng), field, rng)
        m = int(rng.integers(1, min(n, 5) + 1))
        a[:, :m] = rng.integers(0, q, size=(n, m))
    a = np.array(a, dtype=np.int64)
    diag = a.diagonal().copy()
    fix = diag == 0
    diag[fix] = rng.integers(1, q, size=int(fix.sum()))
    np.fill_diagonal(a, diag)
    return Matrix(a, field)


def _fill_diagonal_nonzero(a: np.ndarray, q: int, rng) -> np.ndarray:
    d = a.diagonal().copy()
    zero = d == 0
    d[zero] = rng.integers(1, q, size=int(zero.sum()))
    np.fill_diagonal(a, d)
    return a


def lemma34_matrix(field: FieldSpec, rng, family: int) -> Matrix:
    """Families: 0 dense, 1 sparse, 2 column-concentrated, 3 permuted clique blocks
    with a few dense columns, 4 low-rank products. Families 0-3 get a nonzero
    diagonal nine times out of ten."""
    q = field.q
    n = int(rng.integers(1, 65))
    if family == 0:
        a = rng.integers(0, q, size=(n, n))
    elif family == 1:
        density = rng.uniform(0.01, 0.3)
        a = np.where(rng.random((n, n)) < density, rng.integers(1, q, size=(n, n)), 0)
    elif family == 2:
        a = column_concentrated(int(rng.integers(2, 9)), field, rng).data.copy()
    elif family == 3:
        a = clique_blocks(n, random_partition(n, rng), field, rng)
        m = int(rng.integers(0, min(n, 4) + 1))
        a[:, :m] = rng.integers(0, q, size=(n, m))
        perm = rng.permutation(n)
        a = a[np.ix_(perm, perm)]
    else:
        return random_rank_k(n, int(rng.integers(1, n + 1)), field, rng)
    a = np.array(a, dtype=np.int64)
    if rng.random() < 0.9:
        a = _fill_diagonal_nonzero(a, q, rng)
    return Matrix(a, field)


# ---------------------------------------------------------------- suites


def suite_lemma31(seed: int = 0, trials: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    fields_ = [FieldSpec(q) for q in (2, 3, 5)]
    for t in range(trials):
        field = fields_[t % 3]
        n = int(rng.integers(1, 13))
        k = int(rng.integers(0, n + 1))
        M = random_rank_k(n, k, field, rng) if k else Matrix.zeros(n, field=field)
        enc = encode(M)
        if enc.k != k or decode(enc) != M:
            return SuiteResult("lemma31", False, t, counterexample=repr(M))
        if enc.row_basis.shape != (k, n) or enc.col_basis.shape != (n, k):
            return SuiteResult("lemma31", False, t, counterexample=f"encoding is not 2k vectors for {M!r}")
    return SuiteResult("lemma31", True, trials, "decode(encode(M)) == M")


def suite_corollary32(seed: int = 0, max_n: int = 3, q: int = 2) -> SuiteResult:
    checked = 0
    field = FieldSpec(q)
    for n in range(1, max_n + 1):
        table = sparse_base_count_table(n, field)
        for (k, s), count in sorted(table.items()):
            checked += 1
            if count > corollary_bound(n, q, s):
                return SuiteResult("corollary32", False, checked, counterexample=f"n={n} k={k} s={s} count={count}")
    return SuiteResult("corollary32", True, checked, "count <= (n q)^(6 s)")


def suite_lemma33(seed: int = 0, trials: int = 1000, n: int = 32) -> SuiteResult:
    rng = np.random.default_rng(seed)
    for t in range(trials):
        field = FieldSpec((2, 3)[t % 2])
        M = nonzero_diagonal_matrix(n, field, rng, t % 4)
        if 4 * sparsity(M) * rank(M) < n * n:
            return SuiteResult("lemma33", False, t, counterexample=repr(M))
    return SuiteResult("lemma33", True, trials, "s(M) >= n^2 / (4 rank M)")


def suite_lemma34(seed: int = 0, trials: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    for t in range(trials):
        field = FieldSpec((2, 3)[t % 2])
        M = lemma34_matrix(field, rng, t % 5)
        try:
            sparse_basis_submatrix(M)  # asserts both postconditions internally
        except AssertionError as exc:
            return SuiteResult("lemma34", False, t, counterexample=f"{exc}: {M!r}")
    return SuiteResult("lemma34", True, trials, "k'/n' <= k/n and bases <= 2 s(M') k'/n'")


def all_graphs(n: int):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield DiGraph.from_arcs(n, [pairs[b] for b in range(len(pairs)) if mask >> b & 1])


def suite_product_bound(seed: int = 0, n: int = 4, field: FieldSpec = F2) -> SuiteResult:
    checked = 0
    for G in all_graphs(n):
        checked += 1
        if not product_bound_holds(G, field):
            return SuiteResult("product-bound", False, checked, counterexample=str(G.arc_list()))
    return SuiteResult("product-bound", True, checked, "minrank(G) * minrank(co-G) >= n")


def suite_sandwich(seed: int = 0, n: int = 4, field: FieldSpec = F2) -> SuiteResult:
    checked = 0
    for G in all_graphs(n):
        checked += 1
        try:
            rep = compute_bounds(G, field, exact_budget=1 << 24)
            co = exact_minrank(complement(G), field).value
        except AssertionError as exc:
            return SuiteResult("sandwich-n4", False, checked, counterexample=f"{exc}: {G.arc_list()}")
        if rep.exact is None or not (
            max(rep.lower_sparsity, rep.lower_indset) <= rep.exact <= rep.upper_clique_cover
        ) or rep.exact * co < n:
            return SuiteResult("sandwich-n4", False, checked, counterexample=str(G.arc_list()))
    return SuiteResult("sandwich-n4", True, checked, "lower <= exact <= upper, product >= n")


def suite_indexcode(seed: int = 0, graphs: int = 100, messages: int = 100, n: int = 16) -> SuiteResult:
    rng = np.random.default_rng(seed)
    total = 0
    for g in range(graphs):
        G = sample_gnp(n, 0.5, int(rng.integers(0, 2**63)))
        cover = clique_cover_upper_bound(G)
        code = build_code(G, cover.witness)
        if code.k != rank(cover.witness) or code.k != cover.value:
            return SuiteResult("indexcode", False, total, counterexample=f"length {code.k} != rank on {G.arc_list()}")
        xs = rng.integers(0, 2, size=(messages, n))
        ok = simulate(code, G, xs)
        total += messages * n
        if ok != messages * n:
            return SuiteResult("indexcode", False, total, counterexample=f"{messages * n - ok} decode failures on {G.arc_list()}")
    return SuiteResult("indexcode", True, total, "every receiver decoded its symbol")


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "lemma31": suite_lemma31,
    "corollary32": suite_corollary32,
    "lemma33": suite_lemma33,
    "lemma34": suite_lemma34,
    "product-bound": suite_product_bound,
    "sandwich-n4": suite_sandwich,
    "indexcode": suite_indexcode,
}


def run_verify(name: str, seed: int = 0) -> SuiteResult:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(seed=seed)


def corollary32_rows(n: int, q: int = 2):
    """(k, s, exact count, bound) for the CLI table."""
    table = sparse_base_count_table(n, FieldSpec(q))
    return [(k, s, c, corollary_bound(n, q, s)) for (k, s), c in sorted(table.items())]

