import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minrank.field import FieldSpec
from minrank.graph import (
    DiGraph,
    complement,
    is_representing,
    read_edge_list,
    sample_gnp,
    sample_out_regular,
    shift,
    shift_with_drops,
    underlying_undirected,
    write_edge_list,
)
from minrank.matrix import DimensionError, Matrix


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    adj = np.array(bits).reshape(n, n)
    np.fill_diagonal(adj, False)
    return DiGraph(adj)


def test_sample_empty_and_complete():
    assert sample_gnp(7, 0.0, 1).arc_count == 0
    assert sample_gnp(7, 1.0, 1).arc_count == 42


def test_sample_single_vertex():
    assert sample_gnp(1, 0.5, 3).arc_count == 0


def test_sample_arc_count_within_five_sigma():
    n, p = 1000, 0.3
    N = n * (n - 1)
    m = sample_gnp(n, p, 12345).arc_count
    assert abs(m - p * N) <= 5 * math.sqrt(N * p * (1 - p))


def test_sample_is_reproducible_and_seed_sensitive():
    assert sample_gnp(50, 0.5, 9) == sample_gnp(50, 0.5, 9)
    assert sample_gnp(50, 0.5, 9) != sample_gnp(50, 0.5, 10)


def test_sample_never_has_loops():
    assert not sample_gnp(30, 1.0, 0).adj.diagonal().any()


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_sample_rejects_bad_probability(p):
    with pytest.raises(ValueError):
        sample_gnp(5, p, 0)


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        DiGraph.from_arcs(3, [(1, 1)])


def test_complement_examples():
    assert complement(DiGraph.empty(4)) == DiGraph.complete(4)
    G = DiGraph.from_arcs(3, [(0, 1)])
    assert complement(G).arc_count == 5
    assert not complement(G).has_arc(0, 1)


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_complement_is_an_involution(G):
    assert complement(complement(G)) == G
    assert G.arc_count + complement(G).arc_count == G.n * (G.n - 1)


def test_shift_example_drops_loops():
    G = DiGraph.from_arcs(3, [(0, 1), (0, 2), (2, 1)])
    H, dropped = shift_with_drops(G, 1)
    # (0,1)->(0,2), (0,2)->(0,0) dropped, (2,1)->(2,2) dropped
    assert H.arc_list() == [(0, 2)]
    assert dropped == 2


def test_shift_zero_is_identity():
    G = sample_gnp(10, 0.4, 2)
    assert shift(G, 0) == G


def test_shift_out_of_range():
    with pytest.raises(ValueError):
        shift(DiGraph.empty(3), 3)


@settings(max_examples=100, deadline=None)
@given(digraphs(), st.data())
def test_shift_composition_without_loops(G, data):
    i = data.draw(st.integers(0, G.n - 1))
    j = data.draw(st.integers(0, G.n - 1))
    H, d1 = shift_with_drops(G, i)
    K, d2 = shift_with_drops(H, j)
    if d1 == 0 and d2 == 0:
        assert K == shift(G, (i + j) % G.n)
    assert H.arc_count + d1 == G.arc_count


def test_underlying_undirected_is_symmetric():
    G = DiGraph.from_arcs(3, [(0, 1)])
    U = underlying_undirected(G)
    assert U.has_arc(1, 0) and U.arc_count == 2


def test_out_regular():
    G = sample_out_regular(24, 3, 1)
    assert (G.adj.sum(axis=1) == 3).all()
    with pytest.raises(ValueError):
        sample_out_regular(4, 4, 0)


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=10))
def test_edge_list_round_trip(G):
    buf = io.StringIO()
    write_edge_list(G, buf)
    buf.seek(0)
    assert read_edge_list(buf) == G


def test_edge_list_format():
    buf = io.StringIO()
    write_edge_list(DiGraph.from_arcs(3, [(2, 0), (0, 1)]), buf)
    assert buf.getvalue() == "3 2\n0 1\n2 0\n"


@pytest.mark.parametrize("text", ["", "3 2\n0 1\n", "3 1\n0 0\n", "2 2\n0 1\n0 1\n", "2 1\n0 x\n", "2 1\n0 5\n"])
def test_edge_list_rejects_malformed(text):
    with pytest.raises(ValueError):
        read_edge_list(io.StringIO(text))


def test_is_representing_examples():
    G = DiGraph.from_arcs(2, [(0, 1)])
    assert is_representing(Matrix.identity(2), G)
    assert is_representing(Matrix([[1, 1], [0, 1]]), G)
    assert not is_representing(Matrix([[1, 0], [1, 1]]), G)
    assert not is_representing(Matrix([[0, 1], [0, 1]]), G)
    F3 = FieldSpec(3)
    assert is_representing(Matrix([[2, 1], [0, 1]], F3), G)
    with pytest.raises(DimensionError):
        is_representing(Matrix.identity(3), G)
