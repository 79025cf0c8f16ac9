import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minrank.codec import (
    BasisEncoding,
    BudgetExceededError,
    MalformedEncodingError,
    corollary_bound,
    count_rank_k_sparse_base_matrices,
    decode,
    encode,
    sparse_base_count_table,
)
from minrank.field import F2, FieldSpec
from minrank.matrix import Matrix, rank

# Frozen from an independent brute force over all 2^(n^2) matrices
# (plain-Python rank, minimum over every basis choice); see tests/oracles.py.
F2_COUNTS_N1 = {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}
F2_COUNTS_N2 = {
    **{(0, s): 1 for s in range(5)},
    (1, 0): 0, (1, 1): 4, (1, 2): 9, (1, 3): 9, (1, 4): 9,
    (2, 0): 0, (2, 1): 0, (2, 2): 2, (2, 3): 6, (2, 4): 6,
}
F2_COUNTS_N3 = {
    0: [1] * 10,
    1: [0, 9, 36, 49, 49, 49, 49, 49, 49, 49],
    2: [0, 0, 18, 108, 231, 294, 294, 294, 294, 294],
    3: [0, 0, 0, 6, 42, 114, 150, 168, 168, 168],
}


@st.composite
def square_matrices(draw, max_n=8):
    q = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n))
    return Matrix(np.array(vals).reshape(n, n), FieldSpec(q))


def test_round_trip_examples():
    for M in (Matrix.identity(4), Matrix.zeros(3), Matrix.ones(5, field=FieldSpec(3))):
        assert decode(encode(M)) == M


def test_encoding_shapes():
    enc = encode(Matrix.ones(4))
    assert enc.k == 1
    assert enc.row_basis.shape == (1, 4) and enc.col_basis.shape == (4, 1)
    assert enc.row_indices == (0,) and enc.col_indices == (0,)


@settings(max_examples=300, deadline=None)
@given(square_matrices())
def test_round_trip_property(M):
    enc = encode(M)
    assert enc.k == rank(M)
    assert decode(enc) == M


def _replace(enc, **kw):
    d = dict(n=enc.n, field=enc.field, row_indices=enc.row_indices, row_basis=enc.row_basis,
             col_indices=enc.col_indices, col_basis=enc.col_basis)
    d.update(kw)
    return BasisEncoding(**d)


@pytest.mark.parametrize("change", [
    dict(row_indices=(0,)),
    dict(row_indices=(1, 0)),
    dict(col_indices=(0, 7)),
    dict(row_basis=np.array([[0, 0, 1], [0, 1, 1]])),  # disagrees with the stored columns
    dict(col_basis=np.array([[2, 0], [0, 1], [0, 0]])),
])
def test_malformed_encodings_rejected(change):
    enc = encode(Matrix([[1, 0, 1], [0, 1, 1], [1, 1, 0]]))
    with pytest.raises(MalformedEncodingError):
        decode(_replace(enc, **change))


def test_singular_intersection_rejected():
    enc = BasisEncoding(2, F2, (0, 1), np.ones((2, 2), dtype=np.int64), (0, 1), np.ones((2, 2), dtype=np.int64))
    with pytest.raises(MalformedEncodingError):
        decode(enc)


def test_count_examples():
    assert count_rank_k_sparse_base_matrices(2, 2, 2, F2) == 2  # the two permutation matrices
    assert count_rank_k_sparse_base_matrices(2, 0, 0, F2) == 1
    assert count_rank_k_sparse_base_matrices(1, 1, 1, F2) == 1


@pytest.mark.parametrize("n,expected", [(1, F2_COUNTS_N1), (2, F2_COUNTS_N2)])
def test_count_table_matches_oracle_small(n, expected):
    table = sparse_base_count_table(n, F2)
    for key, value in expected.items():
        assert table[key] == value


def test_count_table_matches_oracle_n3():
    table = sparse_base_count_table(3, F2)
    for k, row in F2_COUNTS_N3.items():
        assert [table[(k, s)] for s in range(10)] == row
    assert sum(table[(k, 9)] for k in range(4)) == 2 ** 9


def test_count_is_monotone_in_s():
    table = sparse_base_count_table(3, F2)
    for k in range(4):
        assert all(table[(k, s)] <= table[(k, s + 1)] for s in range(9))


def test_count_budget():
    with pytest.raises(BudgetExceededError):
        sparse_base_count_table(4, F2, budget=1000)


def test_counts_respect_bound():
    for n in (1, 2, 3):
        for (k, s), c in sparse_base_count_table(n, F2).items():
            assert c <= corollary_bound(n, 2, s)


def test_count_table_over_f3():
    table = sparse_base_count_table(2, FieldSpec(3))
    assert sum(table[(k, 4)] for k in range(3)) == 81
    assert table[(2, 4)] == 48  # |GL_2(F_3)|
