"""Directed graphs without self-loops, stored as boolean adjacency matrices.

Random graphs use numpy's PCG64 generator (``numpy.random.default_rng(seed)``).
``sample_gnp`` draws ``n*(n-1)`` uniforms in one call and assigns them to the
off-diagonal ordered pairs in row-major order ``(0,1), (0,2), ..., (n-1,n-2)``;
pair ``(u, v)`` is an arc iff its uniform is ``< p``.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np

from .matrix import DimensionError, Matrix


class DiGraph:
    __slots__ = ("adj",)

    def __init__(self, adj):
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise ValueError("a graph needs at least one vertex")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        adj.setflags(write=False)
        self.adj = adj

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> "DiGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) is not allowed")
            adj[u, v] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> "DiGraph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "DiGraph":
        return cls(~np.eye(n, dtype=bool))

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def arc_count(self) -> int:
        return int(np.count_nonzero(self.adj))

    @property
    def arcs(self) -> frozenset:
        return frozenset(self.arc_list())

    def arc_list(self) -> list:
        us, vs = np.nonzero(self.adj)
        return list(zip(us.tolist(), vs.tolist()))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def out_neighbors(self, u: int) -> list:
        """The side-information set of receiver ``u``."""
        return np.flatnonzero(self.adj[u]).tolist()

    def __eq__(self, other):
        if not isinstance(other, DiGraph):
            return NotImplemented
        return np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"DiGraph(n={self.n}, arcs={self.arc_count})"


def sample_gnp(n: int, p: float, seed: int) -> DiGraph:
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"arc probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    u = rng.random(n * (n - 1))
    adj = np.zeros((n, n), dtype=bool)
    adj[~np.eye(n, dtype=bool)] = u < p
    return DiGraph(adj)


def sample_out_regular(n: int, d: int, seed: int) -> DiGraph:
    """Each vertex gets ``d`` distinct out-neighbours chosen uniformly (vertex order)."""
    if not 0 <= d < n:
        raise ValueError(f"out-degree must lie in [0, {n - 1}]")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=bool)
    for u in range(n):
        others = np.delete(np.arange(n), u)
        adj[u, rng.choice(others, size=d, replace=False)] = True
    return DiGraph(adj)


def complement(G: DiGraph) -> DiGraph:
    adj = ~G.adj
    np.fill_diagonal(adj, False)
    return DiGraph(adj)


def shift_with_drops(G: DiGraph, i: int) -> Tuple[DiGraph, int]:
    """Shift every arc ``(u, v)`` to ``(u, (v + i) mod n)``.

    Arcs landing on ``(u, u)`` are dropped; their count is returned alongside.
    """
    n = G.n
    if not 0 <= i < n:
        raise ValueError(f"shift must lie in [0, {n})")
    adj = np.roll(G.adj, i, axis=1)
    dropped = int(np.count_nonzero(adj.diagonal()))
    np.fill_diagonal(adj, False)
    return DiGraph(adj), dropped


def shift(G: DiGraph, i: int) -> DiGraph:
    return shift_with_drops(G, i)[0]


def underlying_undirected(G: DiGraph) -> DiGraph:
    return DiGraph(G.adj | G.adj.T)


def max_out_degree(G: DiGraph) -> int:
    return int(G.adj.sum(axis=1).max())


def is_representing(M: Matrix, G: DiGraph) -> bool:
    """Nonzero diagonal, and zero at every off-diagonal non-arc."""
    if M.shape != (G.n, G.n):
        raise DimensionError(f"a {M.shape} matrix cannot represent a graph on {G.n} vertices")
    d = M.data
    if not np.all(d.diagonal() != 0):
        return False
    forbidden = ~G.adj
    np.fill_diagonal(forbidden, False)
    return not np.any(d[forbidden])


# edge-list text format: "n m" then m lines "u v", 0-based


def write_edge_list(G: DiGraph, dest: Union[str, Path, io.TextIOBase]):
    arcs = G.arc_list()
    text = f"{G.n} {len(arcs)}\n" + "".join(f"{u} {v}\n" for u, v in arcs)
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_edge_list(src: Union[str, Path, io.TextIOBase]) -> DiGraph:
    if isinstance(src, (str, Path)):
        with open(src, encoding="ascii") as fh:
            text = fh.read()
    else:
        text = src.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge list")
    try:
        n, m = (int(t) for t in lines[0].split())
        arcs = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise ValueError(f"malformed edge list: {exc}") from None
    if len(arcs) != m or any(len(a) != 2 for a in arcs):
        raise ValueError(f"header promises {m} arcs, found {len(arcs)} lines")
    if len(set(arcs)) != m:
        raise ValueError("duplicate arcs in edge list")
    return DiGraph.from_arcs(n, arcs)
