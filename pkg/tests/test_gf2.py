from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcq8 import gf2
from tcq8.errors import InvalidParameter
from tcq8.fujii import build_fujii_complex
from tcq8.gf2 import GF2Matrix


def dense_rank(M) -> int:
    """Textbook row reduction over GF(2), used as the oracle."""
    A = np.array(M, dtype=np.uint8) % 2
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


bit_matrices = st.integers(1, 12).flatmap(
    lambda r: st.integers(1, 12).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=200, deadline=None)
@given(bit_matrices)
def test_rank_matches_dense_oracle(rows):
    A = GF2Matrix.from_dense(rows)
    assert gf2.rank(A) == dense_rank(rows)
    assert gf2.rank(A.T) == gf2.rank(A)


@settings(max_examples=100, deadline=None)
@given(bit_matrices)
def test_kernel_basis(rows):
    A = GF2Matrix.from_dense(rows)
    basis = gf2.kernel_basis(A)
    assert len(basis) == A.cols - gf2.rank(A)
    for v in basis:
        assert not A.matvec(v).any()
    if basis:
        assert dense_rank(np.array(basis)) == len(basis)


@settings(max_examples=100, deadline=None)
@given(bit_matrices, st.integers(0, 2**32 - 1))
def test_solve_consistent_and_refuted(rows, seed):
    A = GF2Matrix.from_dense(rows)
    rng = np.random.default_rng(seed)
    u0 = rng.integers(0, 2, A.cols).astype(np.uint8)
    b = A.matvec(u0)
    out = gf2.solve(A, b)
    assert out.solvable
    assert np.array_equal(A.matvec(out.solution), b)
    c = rng.integers(0, 2, A.rows).astype(np.uint8)
    out = gf2.solve(A, c, refute=True)
    consistent = dense_rank(np.column_stack([np.array(rows), c])) == dense_rank(rows)
    assert out.solvable == consistent
    if not consistent:
        assert gf2.verify_refutation(A, c, out.refutation)


def test_solution_is_canonical():
    # free variables are zero: the solution only uses pivot columns
    A = GF2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    out = gf2.solve(A, [1, 1])
    assert out.solution.tolist() == [0, 1, 0]
    assert out.pivot_columns.tolist() == [0, 1]


def test_small_examples():
    assert gf2.rank(GF2Matrix.identity(5)) == 5
    assert gf2.rank(GF2Matrix.from_dense([[1, 1], [1, 1]])) == 1
    assert gf2.rank(GF2Matrix.zeros(3, 4)) == 0
    zero_rhs = gf2.solve(GF2Matrix.from_dense([[1, 0], [1, 1]]), [0, 0])
    assert zero_rhs.solvable and not zero_rhs.solution.any()
    d2 = build_fujii_complex(0, 2).boundary_mod2(2)
    assert gf2.rank(d2) == 0


def test_from_pairs_toggles_duplicates():
    A = GF2Matrix.from_pairs(2, 2, [0, 1, 0, 1, 1], [0, 0, 0, 1, 1])
    B = GF2Matrix.from_pairs(2, 2, [1, 1, 0, 0, 1], [1, 1, 0, 0, 0])
    assert A.to_dense().tolist() == [[0, 0], [1, 0]]
    assert A == B


def test_products_and_stacks():
    A = GF2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    B = GF2Matrix.from_dense([[1, 0], [1, 1], [0, 1]])
    assert A.mul(B).to_dense().tolist() == [[0, 1], [1, 0]]
    assert A.hstack(A).shape == (2, 6)
    assert A.vstack(A).shape == (4, 3)
    assert A.T.to_dense().tolist() == [[1, 0], [1, 1], [0, 1]]
    v = np.array([1, 1, 1], dtype=np.uint8)
    assert A.matvec(v).tolist() == [0, 0]
    assert A.rmatvec(np.array([1, 0], dtype=np.uint8)).tolist() == [1, 1, 0]
    assert A.select_columns([2]).to_dense().tolist() == [[0], [1]]


def test_left_certificate_rejects_consistent_system():
    A = GF2Matrix.identity(3)
    with pytest.raises(InvalidParameter):
        gf2.left_certificate(A, [1, 0, 1])


def test_clearing_preserves_ranks(bar4):
    pivots = np.zeros(0, dtype=np.int64)
    for k in range(0, 4):
        delta = bar4.coboundary_mod2(k)
        r, pivots = gf2.rank_with_clearing(delta, skip=pivots)
        assert r == gf2.rank(delta)
        if delta.rows * delta.cols < 200_000:
            assert r == dense_rank(delta.to_dense())


def test_serialization_round_trips():
    rng = np.random.default_rng(1)
    for n in (0, 1, 7, 8, 9, 100):
        v = rng.integers(0, 2, n).astype(np.uint8)
        assert np.array_equal(gf2.bitvector_from_hex(gf2.bitvector_to_hex(v)), v)
    with pytest.raises(InvalidParameter):
        gf2.bitvector_from_hex({"length": 3, "hex": "ff"})
    A = GF2Matrix.from_dense([[1, 0, 1], [0, 1, 1]])
    buf = io.StringIO()
    gf2.write_coordinate(A, buf)
    assert buf.getvalue().splitlines() == ["2 3 4", "1 1 1", "2 2 1", "1 3 1", "2 3 1"]
    buf.seek(0)
    assert gf2.read_coordinate(buf) == A


def test_worker_count(monkeypatch):
    monkeypatch.setenv(gf2.WORKERS_ENV, "3")
    assert gf2.worker_count() == 3
    monkeypatch.setenv(gf2.WORKERS_ENV, "zero")
    with pytest.raises(InvalidParameter):
        gf2.worker_count()
