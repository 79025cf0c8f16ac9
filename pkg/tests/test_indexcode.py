import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minrank.bounds import clique_cover_upper_bound, exact_minrank
from minrank.field import F2, FieldSpec
from minrank.graph import DiGraph, sample_gnp
from minrank.indexcode import SideInformationError, broadcast, build_code, decode_symbol, simulate
from minrank.matrix import DimensionError, Matrix, rank


def _side(G, i, x):
    return {j: int(x[j]) for j in G.out_neighbors(i)}


def test_empty_graph_sends_everything():
    G = DiGraph.empty(4)
    code = build_code(G, Matrix.identity(4))
    assert code.k == 4
    x = [1, 0, 1, 1]
    assert broadcast(code, x).tolist() == x


def test_complete_graph_sends_one_symbol():
    G = DiGraph.complete(5)
    code = build_code(G, Matrix.ones(5))
    assert code.k == 1
    x = np.array([1, 1, 0, 1, 0])
    y = broadcast(code, x)
    assert y.tolist() == [1]
    assert [decode_symbol(code, i, y, _side(G, i, x)) for i in range(5)] == x.tolist()


def test_five_cycle_code_has_length_three():
    G = DiGraph.from_arcs(5, [(i, (i + d) % 5) for i in range(5) for d in (1, 4)])
    M = exact_minrank(G).witness
    code = build_code(G, M)
    assert code.k == 3
    xs = np.array([[(a >> b) & 1 for b in range(5)] for a in range(32)])
    assert simulate(code, G, xs) == 32 * 5


def test_rejects_non_representing_matrix():
    with pytest.raises(ValueError):
        build_code(DiGraph.empty(2), Matrix.ones(2))


def test_side_information_must_match():
    G = DiGraph.from_arcs(2, [(0, 1), (1, 0)])
    code = build_code(G, Matrix.ones(2))
    y = broadcast(code, [1, 0])
    with pytest.raises(SideInformationError):
        decode_symbol(code, 0, y, {})
    with pytest.raises(SideInformationError):
        decode_symbol(code, 0, y, {1: 0, 0: 1})
    with pytest.raises(DimensionError):
        decode_symbol(code, 0, [1, 1], {1: 0})
    with pytest.raises(DimensionError):
        broadcast(code, [1])


def test_decodes_over_f5_with_nontrivial_diagonal():
    F5 = FieldSpec(5)
    G = DiGraph.from_arcs(3, [(0, 1), (1, 0), (2, 0)])
    M = Matrix([[2, 3, 0], [4, 1, 0], [1, 0, 3]], F5)
    code = build_code(G, M)
    assert code.k == rank(M)
    rng = np.random.default_rng(0)
    xs = rng.integers(0, 5, size=(200, 3))
    assert simulate(code, G, xs) == 600


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 14), st.floats(0.1, 0.9), st.integers(0, 2**32), st.sampled_from([2, 3, 5]))
def test_cover_code_decodes_everything(n, p, seed, q):
    F = FieldSpec(q)
    G = sample_gnp(n, p, seed)
    M = clique_cover_upper_bound(G, field=F).witness
    code = build_code(G, M)
    assert code.k == rank(M)
    xs = np.random.default_rng(seed).integers(0, q, size=(10, n))
    assert simulate(code, G, xs) == 10 * n


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_broadcast_is_linear(seed):
    rng = np.random.default_rng(seed)
    G = sample_gnp(10, 0.5, seed)
    code = build_code(G, clique_cover_upper_bound(G).witness)
    x1, x2 = rng.integers(0, 2, size=(2, 10))
    assert np.array_equal(broadcast(code, (x1 + x2) % 2), (broadcast(code, x1) + broadcast(code, x2)) % 2)
