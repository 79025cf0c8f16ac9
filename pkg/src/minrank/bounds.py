"""Minrank: exact search, lower and upper certificates, and sparse-basis submatrices."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

import numpy as np

from .codec import BudgetExceededError
from .field import F2, FieldSpec
from .graph import DiGraph, complement, is_representing
from .matrix import (
    Matrix,
    basis_sparsity,
    greedy_column_basis,
    greedy_row_basis,
    index_sparsities,
    principal_submatrix,
    rank,
    sparsity,
)

DEFAULT_EXACT_BUDGET = 1 << 24
DEFAULT_INDSET_EXACT_N = 40
DEFAULT_COLOR_EXACT_N = 20


class BoundTimeout(Exception):
    pass


class InvariantViolation(AssertionError):
    """A certificate failed its own postcondition; this indicates a bug."""


def _check_deadline(deadline: Optional[float]):
    if deadline is not None and time.monotonic() > deadline:
        raise BoundTimeout()


# ---------------------------------------------------------------- lower bounds


def sparsity_lower_bound(G: DiGraph) -> int:
    """ceil(n^2 / (4 (n + |A|))), clamped to at least 1.

    Any representing matrix has at most n + |A| nonzeros, and a matrix with a
    nonzero diagonal has at least n^2 / (4 rank) of them.
    """
    n = G.n
    return max(1, -(-(n * n) // (4 * (n + G.arc_count))))


def _bitmask_adjacency(U: np.ndarray) -> List[int]:
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in U]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_independent_set(U: np.ndarray, deadline: Optional[float] = None) -> Tuple[list, bool]:
    """Maximum independent set of the undirected graph ``U`` by branch and bound.

    Returns ``(vertices, finished)``; on timeout the best set found so far is
    returned with ``finished=False``.
    """
    n = U.shape[0]
    nbr = _bitmask_adjacency(U)
    best = _greedy_independent_set(U)
    state = {"best": best, "calls": 0}

    def rec(P: int, cur: list):
        state["calls"] += 1
        if state["calls"] & 1023 == 0:
            _check_deadline(deadline)
        if len(cur) + _popcount(P) <= len(state["best"]):
            return
        if P == 0:
            state["best"] = list(cur)
            return
        v, dv = -1, -1
        for u in _bits(P):
            d = _popcount(nbr[u] & P)
            if d > dv:
                v, dv = u, d
        if dv == 0:
            state["best"] = cur + list(_bits(P))
            return
        rec(P & ~nbr[v] & ~(1 << v), cur + [v])
        rec(P & ~(1 << v), cur)

    try:
        rec((1 << n) - 1, [])
        finished = True
    except BoundTimeout:
        finished = False
    return sorted(state["best"]), finished


def _greedy_independent_set(U: np.ndarray) -> list:
    """Repeatedly take a minimum-degree vertex (lowest index on ties) and drop its neighbours."""
    alive = np.ones(U.shape[0], dtype=bool)
    chosen = []
    while alive.any():
        deg = np.where(alive, (U & alive).sum(axis=1), np.iinfo(np.int64).max)
        v = int(np.argmin(deg))
        chosen.append(v)
        alive &= ~U[v]
        alive[v] = False
    return sorted(chosen)


@dataclass
class IndependentSetBound:
    value: int
    vertices: list
    method: str  # exact | greedy | timeout (best found before the deadline)

    @property
    def exact(self) -> bool:
        return self.method == "exact"


def independent_set_lower_bound(
    G: DiGraph, exact_budget: int = DEFAULT_INDSET_EXACT_N, deadline: Optional[float] = None
) -> IndependentSetBound:
    """An independent set of the underlying undirected graph; any representing
    matrix restricts to a nonsingular diagonal block on it."""
    U = G.adj | G.adj.T
    if G.n <= exact_budget:
        verts, finished = max_independent_set(U, deadline)
        return IndependentSetBound(len(verts), verts, "exact" if finished else "timeout")
    verts = _greedy_independent_set(U)
    return IndependentSetBound(len(verts), verts, "greedy")


# ---------------------------------------------------------------- upper bound


def clique_conflict_graph(G: DiGraph) -> np.ndarray:
    """Undirected complement view: u, v conflict unless both (u,v) and (v,u) are arcs."""
    C = ~(G.adj & G.adj.T)
    np.fill_diagonal(C, False)
    return C


def greedy_coloring(U: np.ndarray) -> np.ndarray:
    """First-fit colouring in order of descending degree, ties by index."""
    n = U.shape[0]
    deg = U.sum(axis=1)
    order = sorted(range(n), key=lambda v: (-int(deg[v]), v))
    colors = np.full(n, -1, dtype=np.int64)
    for v in order:
        used = colors[U[v]]
        taken = np.zeros(n + 1, dtype=bool)
        taken[used[used >= 0]] = True
        colors[v] = int(np.argmin(taken))
    return colors


def exact_coloring(U: np.ndarray, deadline: Optional[float] = None) -> Tuple[np.ndarray, bool]:
    """Chromatic colouring by DSATUR branch and bound, seeded with the greedy colouring."""
    n = U.shape[0]
    nbr = [np.flatnonzero(U[v]).tolist() for v in range(n)]
    deg = [len(x) for x in nbr]
    best = greedy_coloring(U)
    state = {"best": best, "k": int(best.max()) + 1, "calls": 0}
    clique = _greedy_clique(U)
    colors = [-1] * n

    def pick():
        v, key = -1, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            sat = len({colors[w] for w in nbr[u] if colors[w] >= 0})
            cand = (sat, deg[u], -u)
            if key is None or cand > key:
                v, key = u, cand
        return v

    def rec(done: int, used: int):
        state["calls"] += 1
        if state["calls"] & 255 == 0:
            _check_deadline(deadline)
        if used >= state["k"]:
            return
        if done == n:
            state["best"] = np.array(colors, dtype=np.int64)
            state["k"] = used
            return
        v = pick()
        forbidden = {colors[w] for w in nbr[v]}
        for c in range(used):
            if c not in forbidden:
                colors[v] = c
                rec(done + 1, used)
                colors[v] = -1
                if state["k"] <= clique:
                    return
        if used + 1 < state["k"]:
            colors[v] = used
            rec(done + 1, used + 1)
            colors[v] = -1

    try:
        if state["k"] > clique:
            rec(0, 0)
        finished = True
    except BoundTimeout:
        finished = False
    return state["best"], finished


def _greedy_clique(U: np.ndarray) -> int:
    n = U.shape[0]
    if n == 0:
        return 0
    order = np.argsort(-U.sum(axis=1), kind="stable")
    members = []
    for v in order:
        if all(U[v, w] for w in members):
            members.append(int(v))
    return len(members)


def coloring_witness(colors: np.ndarray, field: FieldSpec = F2) -> Matrix:
    """M[i, j] = 1 iff i and j share a colour; its rank is the number of colours."""
    colors = np.asarray(colors)
    return Matrix((colors[:, None] == colors[None, :]).astype(np.int64), field)


@dataclass
class CliqueCoverBound:
    value: int
    coloring: np.ndarray
    witness: Matrix
    method: str  # exact | greedy | timeout

    @property
    def exact(self) -> bool:
        return self.method == "exact"


def clique_cover_upper_bound(
    G: DiGraph,
    exact_budget: int = DEFAULT_COLOR_EXACT_N,
    field: FieldSpec = F2,
    deadline: Optional[float] = None,
) -> CliqueCoverBound:
    """Cover G by bidirectional cliques, i.e. properly colour the undirected complement."""
    U = clique_conflict_graph(G)
    if G.n <= exact_budget:
        colors, finished = exact_coloring(U, deadline)
        method = "exact" if finished else "timeout"
    else:
        colors, method = greedy_coloring(U), "greedy"
    colors = _canonical_colors(colors)
    return CliqueCoverBound(int(colors.max()) + 1, colors, coloring_witness(colors, field), method)


def _canonical_colors(colors: np.ndarray) -> np.ndarray:
    """Relabel colours in order of first appearance."""
    mapping = {}
    out = np.empty_like(colors)
    for i, c in enumerate(colors.tolist()):
        out[i] = mapping.setdefault(c, len(mapping))
    return out


# ---------------------------------------------------------------- exact minrank


def exact_minrank_cost(G: DiGraph, field: FieldSpec, pin_diagonal: bool = False) -> int:
    """Number of representing matrices the exhaustive search ranges over."""
    q = field.q
    cost = q ** G.arc_count
    if q > 2 and not pin_diagonal:
        cost *= (q - 1) ** G.n
    return cost


@dataclass
class ExactMinrank:
    value: int
    witness: Matrix


def exact_minrank(
    G: DiGraph,
    field: FieldSpec = F2,
    budget: int = DEFAULT_EXACT_BUDGET,
    pin_diagonal: bool = False,
    deadline: Optional[float] = None,
) -> ExactMinrank:
    """Minimum rank over all matrices representing ``G``.

    Rows are assigned one at a time (row i ranges over a nonzero diagonal value
    and arbitrary values on the arcs leaving i) while an echelon basis of the
    rows so far is maintained; a partial assignment whose rank already reaches
    the best known value is cut off. The best value starts at the clique-cover
    bound and the search stops early once it meets the independent-set bound.
    Over F2 the diagonal is necessarily 1. ``pin_diagonal`` fixes it to 1 for
    q > 2 as well, which is sound because scaling rows preserves rank.
    """
    cost = exact_minrank_cost(G, field, pin_diagonal)
    if cost > budget:
        raise BudgetExceededError(cost, budget)
    cover = clique_cover_upper_bound(G, field=field)
    lower = max(independent_set_lower_bound(G).value, sparsity_lower_bound(G))
    if cover.value <= lower:
        return ExactMinrank(cover.value, cover.witness)
    if field.q == 2:
        found = _search_f2(G, cover.value, lower, deadline)
    else:
        found = _search_generic(G, field, cover.value, lower, pin_diagonal, deadline)
    if found is None:
        return ExactMinrank(cover.value, cover.witness)
    value, data = found
    return ExactMinrank(value, Matrix(data, field))


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _search_f2(G: DiGraph, upper: int, lower: int, deadline):
    n = G.n
    options = []
    for i in range(n):
        mask = sum(1 << j for j in G.out_neighbors(i))
        options.append([(1 << i) | s for s in sorted(_submasks(mask))])
    basis = [0] * n
    chosen = [0] * n
    state = {"best": upper, "rows": None, "calls": 0}

    def rec(i: int, r: int):
        state["calls"] += 1
        if state["calls"] & 4095 == 0:
            _check_deadline(deadline)
        if r >= state["best"]:
            return
        if i == n:
            state["best"] = r
            state["rows"] = list(chosen)
            return
        for row in options[i]:
            chosen[i] = row
            v = row
            while v:
                top = v.bit_length() - 1
                if not basis[top]:
                    break
                v ^= basis[top]
            if v:
                basis[top] = v
                rec(i + 1, r + 1)
                basis[top] = 0
            else:
                rec(i + 1, r)
            if state["best"] <= lower:
                return

    rec(0, 0)
    if state["rows"] is None:
        return None
    data = np.array([[(row >> j) & 1 for j in range(n)] for row in state["rows"]], dtype=np.int64)
    return state["best"], data


def _search_generic(G: DiGraph, field: FieldSpec, upper: int, lower: int, pin_diagonal, deadline):
    import itertools

    n, q = G.n, field.q
    inv = field.inverse_table
    diag_values = [1] if pin_diagonal else list(range(1, q))
    row_options = []
    for i in range(n):
        nb = G.out_neighbors(i)
        opts = []
        for d in diag_values:
            for vals in itertools.product(range(q), repeat=len(nb)):
                row = [0] * n
                row[i] = d
                for j, x in zip(nb, vals):
                    row[j] = x
                opts.append(row)
        row_options.append(opts)

    pivots: dict = {}  # pivot column -> normalized row with first nonzero there
    chosen = [None] * n
    state = {"best": upper, "rows": None, "calls": 0}

    def reduce(v):
        v = list(v)
        for p in sorted(pivots):
            c = v[p]
            if c:
                b = pivots[p]
                v = [(x - c * y) % q for x, y in zip(v, b)]
        return v

    def rec(i: int, r: int):
        state["calls"] += 1
        if state["calls"] & 1023 == 0:
            _check_deadline(deadline)
        if r >= state["best"]:
            return
        if i == n:
            state["best"] = r
            state["rows"] = [list(x) for x in chosen]
            return
        for row in row_options[i]:
            chosen[i] = row
            v = reduce(row)
            p = next((j for j, x in enumerate(v) if x), None)
            if p is None:
                rec(i + 1, r)
            else:
                s = int(inv[v[p]])
                pivots[p] = [(x * s) % q for x in v]
                rec(i + 1, r + 1)
                del pivots[p]
            if state["best"] <= lower:
                return

    rec(0, 0)
    if state["rows"] is None:
        return None
    return state["best"], np.array(state["rows"], dtype=np.int64)


def product_bound_holds(G: DiGraph, field: FieldSpec = F2, budget: int = DEFAULT_EXACT_BUDGET) -> bool:
    """minrank(G) * minrank(complement(G)) >= n."""
    a = exact_minrank(G, field, budget).value
    b = exact_minrank(complement(G), field, budget).value
    return a * b >= G.n


# ------------------------------------------------- sparse-basis principal submatrix


@dataclass
class SparseBasisSubmatrix:
    """A principal submatrix with low relative rank and sparse bases.

    ``indices`` are positions in the original matrix, listed in the order the
    submatrix uses; ``row_basis``/``col_basis`` are positions within the
    submatrix.
    """

    indices: list
    submatrix: Matrix
    rank: int
    size: int
    row_basis: list
    col_basis: list
    row_basis_sparsity: int
    col_basis_sparsity: int
    depth: int = 0

    @property
    def sparsity(self) -> int:
        return sparsity(self.submatrix)


def _first_low_rank_prefix(M: Matrix, order: list, k: int) -> Optional[Tuple[int, int]]:
    """Smallest n' < n whose leading principal submatrix (in ``order``) has rank <= n' k / n."""
    n = M.rows
    t = 1
    while t < n:
        r = rank(principal_submatrix(M, order[:t]))
        if r * n <= t * k:
            return t, r
        # Leading ranks never decrease, so sizes with t' k < r n cannot qualify.
        t = max(t + 1, -(-(r * n) // k))
    return None


def sparse_basis_submatrix(M: Matrix) -> SparseBasisSubmatrix:
    """Find a principal submatrix M' (size n', rank k') with k'/n' <= k/n whose
    row and column bases each have at most 2 s(M') k'/n' nonzeros.

    Each level sorts indices by s(i) (row plus column nonzeros, stable by
    index), descends into the first leading principal submatrix of relative
    rank at most k/n, and otherwise takes greedy bases of the whole level in
    sorted order. A zero diagonal entry yields the 1x1 zero submatrix.
    """
    if M.rows != M.cols:
        raise ValueError("sparse_basis_submatrix expects a square matrix")
    n0 = M.rows
    k0 = rank(M)
    indices = list(range(n0))
    current = M
    depth = 0
    while True:
        n = current.rows
        diag = current.data.diagonal()
        zero = np.flatnonzero(diag == 0)
        if zero.size:
            i = int(zero[0])
            result = SparseBasisSubmatrix(
                [indices[i]], principal_submatrix(current, [i]), 0, 1, [], [], 0, 0, depth
            )
            break
        k = rank(current)
        s = index_sparsities(current)
        order = sorted(range(n), key=lambda i: (int(s[i]), i))
        prefix = _first_low_rank_prefix(current, order, k) if n > 1 else None
        if prefix is not None:
            t = prefix[0]
            indices = [indices[i] for i in order[:t]]
            current = principal_submatrix(current, order[:t])
            depth += 1
            continue
        sub = principal_submatrix(current, order)
        pos = list(range(n))
        rows = greedy_row_basis(sub, pos)
        cols = greedy_column_basis(sub, pos)
        result = SparseBasisSubmatrix(
            [indices[i] for i in order],
            sub,
            k,
            n,
            rows,
            cols,
            basis_sparsity(sub.data[rows, :]),
            basis_sparsity(sub.data[:, cols]),
            depth,
        )
        break

    _check_sparse_basis(result, k0, n0)
    return result


def _check_sparse_basis(res: SparseBasisSubmatrix, k: int, n: int):
    kp, np_ = res.rank, res.size
    if kp * n > k * np_:
        raise InvariantViolation(f"relative rank {kp}/{np_} exceeds {k}/{n}")
    limit = 2 * res.sparsity * kp  # compared against sparsity * n'
    for name, w in (("row", res.row_basis_sparsity), ("column", res.col_basis_sparsity)):
        if w * np_ > limit:
            raise InvariantViolation(
                f"{name} basis has {w} nonzeros, above 2*{res.sparsity}*{kp}/{np_}"
            )
    if len(res.row_basis) != kp or len(res.col_basis) != kp:
        raise InvariantViolation("basis sizes differ from the submatrix rank")


# ---------------------------------------------------------------- report


@dataclass
class BoundsReport:
    n: int
    arc_count: int
    q: int
    lower_sparsity: int
    lower_indset: int
    indset_method: str
    upper_clique_cover: int
    cover_method: str
    exact: Optional[int] = None
    exact_status: str = "skipped"  # skipped | ok | over-budget | timeout
    independent_set: list = dc_field(default_factory=list)
    coloring: Optional[np.ndarray] = None
    cover_witness: Optional[Matrix] = None
    exact_witness: Optional[Matrix] = None
    seconds: dict = dc_field(default_factory=dict)

    @property
    def best_lower(self) -> int:
        return max(self.lower_sparsity, self.lower_indset)

    def check(self, G: DiGraph):
        """Verify bound ordering and every witness; raise InvariantViolation otherwise."""
        if self.best_lower > self.upper_clique_cover:
            raise InvariantViolation(f"lower bound {self.best_lower} > upper bound {self.upper_clique_cover}")
        if self.exact is not None and not self.best_lower <= self.exact <= self.upper_clique_cover:
            raise InvariantViolation(
                f"exact minrank {self.exact} outside [{self.best_lower}, {self.upper_clique_cover}]"
            )
        U = G.adj | G.adj.T
        iset = self.independent_set
        if len(iset) != self.lower_indset or U[np.ix_(iset, iset)].any():
            raise InvariantViolation("independent-set witness is not independent")
        if self.coloring is not None:
            C = clique_conflict_graph(G)
            same = self.coloring[:, None] == self.coloring[None, :]
            if (C & same).any():
                raise InvariantViolation("colouring is not proper on the clique-conflict graph")
        for name, W, val in (
            ("clique-cover", self.cover_witness, self.upper_clique_cover),
            ("exact", self.exact_witness, self.exact),
        ):
            if W is None:
                continue
            if not is_representing(W, G):
                raise InvariantViolation(f"{name} witness does not represent the graph")
            if rank(W) != val:
                raise InvariantViolation(f"{name} witness has rank {rank(W)}, reported {val}")


def compute_bounds(
    G: DiGraph,
    field: FieldSpec = F2,
    exact_budget: Optional[int] = None,
    indset_exact_n: int = DEFAULT_INDSET_EXACT_N,
    color_exact_n: int = DEFAULT_COLOR_EXACT_N,
    time_limit: Optional[float] = None,
    check: bool = True,
) -> BoundsReport:
    """All affordable bounds for ``G``. ``exact_budget=None`` skips the exact search.

    ``time_limit`` (seconds) applies to each bound separately. A timed-out
    branch and bound keeps the best certificate found so far (marked inexact);
    a timed-out exact search leaves ``exact`` empty with status ``timeout``.
    """
    seconds = {}

    def deadline():
        return None if time_limit is None else time.monotonic() + time_limit

    t0 = time.perf_counter()
    lower_sp = sparsity_lower_bound(G)
    seconds["lower_sparsity"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ind = independent_set_lower_bound(G, indset_exact_n, deadline())
    seconds["lower_indset"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cover = clique_cover_upper_bound(G, color_exact_n, field, deadline())
    seconds["upper_clique_cover"] = time.perf_counter() - t0

    report = BoundsReport(
        n=G.n,
        arc_count=G.arc_count,
        q=field.q,
        lower_sparsity=lower_sp,
        lower_indset=ind.value,
        indset_method=ind.method,
        upper_clique_cover=cover.value,
        cover_method=cover.method,
        independent_set=ind.vertices,
        coloring=cover.coloring,
        cover_witness=cover.witness,
        seconds=seconds,
    )
    if exact_budget is not None:
        t0 = time.perf_counter()
        try:
            ex = exact_minrank(G, field, exact_budget, deadline=deadline())
            report.exact, report.exact_witness, report.exact_status = ex.value, ex.witness, "ok"
        except BudgetExceededError:
            report.exact_status = "over-budget"
        except BoundTimeout:
            report.exact_status = "timeout"
        seconds["exact"] = time.perf_counter() - t0
    if check:
        report.check(G)
    return report

