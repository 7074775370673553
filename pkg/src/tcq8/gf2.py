"""Sparse GF(2) linear algebra: rank, deterministic solve, kernel basis.

Matrices are held column-compressed with sorted, duplicate-free row
indices.  Elimination is a column reduction compiled with numba: columns
are processed in increasing index order and each reduced column is keyed
by its largest row index.  A column that reduces to zero is dependent on
the earlier ones, so the pivot columns are exactly the lexicographically
first independent set -- the same set Gaussian elimination finds when it
pivots on the lowest column index.  The particular solution returned by
:func:`solve` is supported on those pivot columns, i.e. every free variable
is zero, and it therefore does not depend on how the reduction is
scheduled.

Boundary matrices of cell complexes stay very sparse under this reduction,
which is what makes systems with tens of thousands of unknowns cheap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numba import njit
from numba.typed import List

from .errors import InvalidParameter

WORKERS_ENV = "TCQ8_WORKERS"


def worker_count() -> int:
    """Worker count from the environment (default 1).

    Elimination itself is sequential; the setting only affects the
    data-parallel validation passes, whose results are order independent.
    """
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameter(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return max(1, n)


# --------------------------------------------------------------------------
# compiled kernels


@njit(cache=True)
def _symdiff(a, b):
    out = np.empty(a.shape[0] + b.shape[0], dtype=np.int64)
    i = 0
    j = 0
    k = 0
    na = a.shape[0]
    nb = b.shape[0]
    while i < na and j < nb:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k].copy()


@njit(cache=True)
def _reduce(nrows, ncols, indptr, indices, track):
    """Column reduction.  Returns (owner, reduced, combos, zero_cols).

    owner[r] is the column whose reduced form has largest row r, or -1.
    combos[j] lists the original columns summing to reduced[j] (only
    when ``track``); for a zero column this is a kernel vector.
    """
    owner = np.full(nrows, -1, dtype=np.int64)
    empty = np.empty(0, dtype=np.int64)
    reduced = List()
    combos = List()
    zero_cols = List()
    for j in range(ncols):
        col = indices[indptr[j]:indptr[j + 1]].astype(np.int64)
        if track:
            combo = np.array([j], dtype=np.int64)
        else:
            combo = empty
        while col.shape[0] > 0:
            k = owner[col[-1]]
            if k < 0:
                break
            col = _symdiff(col, reduced[k])
            if track:
                combo = _symdiff(combo, combos[k])
        if col.shape[0] > 0:
            owner[col[-1]] = j
            reduced.append(col)
        else:
            zero_cols.append(j)
            reduced.append(empty)
        combos.append(combo)
    return owner, reduced, combos, zero_cols


@njit(cache=True)
def _reduce_vector(vec, owner, reduced, combos):
    """Reduce ``vec`` (sorted rows) against a reduction; returns
    (residual, combination of original columns)."""
    combo = np.empty(0, dtype=np.int64)
    while vec.shape[0] > 0:
        k = owner[vec[-1]]
        if k < 0:
            break
        vec = _symdiff(vec, reduced[k])
        combo = _symdiff(combo, combos[k])
    return vec, combo


@njit(cache=True)
def _pivot_rows(nrows, ncols, indptr, indices, skip):
    owner = np.full(nrows, -1, dtype=np.int64)
    reduced = List()
    empty = np.empty(0, dtype=np.int64)
    for j in range(ncols):
        if skip[j]:
            reduced.append(empty)
            continue
        col = indices[indptr[j]:indptr[j + 1]].astype(np.int64)
        while col.shape[0] > 0:
            k = owner[col[-1]]
            if k < 0:
                break
            col = _symdiff(col, reduced[k])
        if col.shape[0] > 0:
            owner[col[-1]] = j
            reduced.append(col)
        else:
            reduced.append(empty)
    return owner


# --------------------------------------------------------------------------
# matrix type


class GF2Matrix:
    """Immutable sparse matrix over GF(2), column-compressed.

    ``indptr`` has length ``cols + 1``; ``indices[indptr[j]:indptr[j+1]]``
    are the (sorted, distinct) rows holding a 1 in column ``j``.
    """

    __slots__ = ("rows", "cols", "indptr", "indices")

    def __init__(self, rows: int, cols: int, indptr, indices):
        self.rows = int(rows)
        self.cols = int(cols)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        if self.indptr.shape != (self.cols + 1,):
            raise InvalidParameter("indptr length must be cols + 1")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= self.rows):
            raise InvalidParameter("row index out of range")
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_pairs(cls, rows: int, cols: int, row_idx, col_idx) -> "GF2Matrix":
        """Build from coordinate pairs; repeated pairs cancel mod 2."""
        r = np.asarray(row_idx, dtype=np.int64).ravel()
        c = np.asarray(col_idx, dtype=np.int64).ravel()
        if r.shape != c.shape:
            raise InvalidParameter("row and column index arrays differ in length")
        if r.size:
            if r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols:
                raise InvalidParameter("coordinate out of range")
        key = c * max(rows, 1) + r
        key.sort()
        # keep keys of odd multiplicity
        if key.size:
            uniq, counts = np.unique(key, return_counts=True)
            key = uniq[counts % 2 == 1]
        cc = key // max(rows, 1)
        rr = key % max(rows, 1)
        indptr = np.zeros(cols + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(np.bincount(cc, minlength=cols))
        return cls(rows, cols, indptr, rr)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "GF2Matrix":
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise InvalidParameter("dense data must be two dimensional")
        r, c = np.nonzero(arr % 2)
        return cls.from_pairs(arr.shape[0], arr.shape[1], r, c)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Iterable[int]]) -> "GF2Matrix":
        rr, cc = [], []
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            for i in col:
                rr.append(i)
                cc.append(j)
        return cls.from_pairs(rows, ncols, rr, cc)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, np.arange(n + 1), np.arange(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols, np.zeros(cols + 1, dtype=np.int64), np.zeros(0, dtype=np.int64))

    # -- basic queries --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def column(self, j: int) -> np.ndarray:
        return self.indices[self.indptr[j]:self.indptr[j + 1]]

    def column_indices(self) -> np.ndarray:
        """Column index of every stored entry."""
        return np.repeat(np.arange(self.cols, dtype=np.int64), np.diff(self.indptr))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        out[self.indices, self.column_indices()] = 1
        return out

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix.from_pairs(self.cols, self.rows, self.column_indices(), self.indices)

    T = property(transpose)

    def matvec(self, vec) -> np.ndarray:
        """A @ vec over GF(2); ``vec`` is a 0/1 vector of length ``cols``."""
        v = as_bitvector(vec, self.cols)
        cols = np.nonzero(v)[0]
        if cols.size == 0:
            return np.zeros(self.rows, dtype=np.uint8)
        starts = self.indptr[cols]
        ends = self.indptr[cols + 1]
        lens = ends - starts
        idx = np.repeat(ends - np.cumsum(lens), lens) + np.arange(lens.sum())
        hits = self.indices[idx]
        return (np.bincount(hits, minlength=self.rows) % 2).astype(np.uint8)

    def rmatvec(self, vec) -> np.ndarray:
        """vec @ A over GF(2); ``vec`` has length ``rows``."""
        v = as_bitvector(vec, self.rows)
        hit = v[self.indices] == 1
        sums = np.bincount(self.column_indices()[hit], minlength=self.cols)
        return (sums % 2).astype(np.uint8)

    def mul(self, other: "GF2Matrix") -> "GF2Matrix":
        """Matrix product over GF(2)."""
        if self.cols != other.rows:
            raise InvalidParameter("shape mismatch in product")
        rr, cc = [], []
        for j in range(other.cols):
            col = self.matvec(_indicator(other.column(j), other.rows))
            nz = np.nonzero(col)[0]
            rr.append(nz)
            cc.append(np.full(nz.size, j, dtype=np.int64))
        if not rr:
            return GF2Matrix.zeros(self.rows, other.cols)
        return GF2Matrix.from_pairs(self.rows, other.cols, np.concatenate(rr), np.concatenate(cc))

    def select_columns(self, cols) -> "GF2Matrix":
        cols = np.asarray(cols, dtype=np.int64)
        lens = self.indptr[cols + 1] - self.indptr[cols]
        indptr = np.concatenate([[0], np.cumsum(lens)]).astype(np.int64)
        parts = [self.column(j) for j in cols]
        ind = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
        return GF2Matrix(self.rows, cols.size, indptr, ind)

    def hstack(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.rows != other.rows:
            raise InvalidParameter("row counts differ")
        indptr = np.concatenate([self.indptr, other.indptr[1:] + self.indptr[-1]])
        return GF2Matrix(self.rows, self.cols + other.cols, indptr, np.concatenate([self.indices, other.indices]))

    def vstack(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != other.cols:
            raise InvalidParameter("column counts differ")
        r = np.concatenate([self.indices, other.indices + self.rows])
        c = np.concatenate([self.column_indices(), other.column_indices()])
        return GF2Matrix.from_pairs(self.rows + other.rows, self.cols, r, c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.indices.tobytes(), self.indptr.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _indicator(rows, n: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.uint8)
    v[np.asarray(rows, dtype=np.int64)] = 1
    return v


def as_bitvector(vec, n: int) -> np.ndarray:
    v = np.asarray(vec)
    if v.shape != (n,):
        raise InvalidParameter(f"bit-vector of length {n} expected, got shape {v.shape}")
    return (v.astype(np.int64) % 2).astype(np.uint8)


# --------------------------------------------------------------------------
# operations


@dataclass
class SolveOutcome:
    """Result of :func:`solve`.

    ``refutation`` (only for inconsistent systems, when requested) is a
    row combination ``y`` with ``y A = 0`` and ``y . b = 1`` -- the summed
    equation reads 0 = 1.
    """

    status: str
    rank: int
    solution: np.ndarray | None = None
    refutation: np.ndarray | None = None
    pivot_columns: np.ndarray | None = field(default=None, repr=False)

    @property
    def solvable(self) -> bool:
        return self.status == "solvable"


def rank(A: GF2Matrix) -> int:
    return rank_with_clearing(A)[0]


def rank_with_clearing(A: GF2Matrix, skip=None) -> tuple[int, np.ndarray]:
    """Rank of ``A`` ignoring the columns flagged in ``skip``, plus the
    sorted pivot rows of the reduction.

    Skipping is only rank-preserving when the caller knows those columns
    reduce to zero.  For consecutive coboundary matrices this holds for
    the pivot rows of the previous degree's reduction (the clearing
    lemma of persistence computations).
    """
    mask = np.zeros(A.cols, dtype=np.bool_)
    if skip is not None and len(skip):
        mask[np.asarray(skip, dtype=np.int64)] = True
    if A.rows == 0 or A.cols == 0:
        return 0, np.zeros(0, dtype=np.int64)
    owner = _pivot_rows(A.rows, A.cols, A.indptr, A.indices, mask)
    rows = np.nonzero(owner >= 0)[0]
    return int(rows.size), rows


def kernel_basis(A: GF2Matrix) -> list[np.ndarray]:
    """Null-space basis, one 0/1 vector per non-pivot column."""
    if A.cols == 0:
        return []
    _, _, combos, zero_cols = _reduce(A.rows, A.cols, A.indptr, A.indices, True)
    return [_indicator(combos[j], A.cols) for j in zero_cols]


def solve(A: GF2Matrix, b, refute: bool = False) -> SolveOutcome:
    """Solve ``A u = b`` over GF(2).

    The solution has every free variable set to zero and is re-checked
    against ``A`` before it is returned.  With ``refute=True`` an
    inconsistent system also gets a left certificate ``y``.
    """
    bvec = as_bitvector(b, A.rows)
    owner, reduced, combos, zero_cols = _reduce(A.rows, A.cols, A.indptr, A.indices, True)
    r = A.cols - len(zero_cols)
    pivots = np.array([j for j in range(A.cols) if reduced[j].shape[0] > 0], dtype=np.int64)
    rhs = np.nonzero(bvec)[0].astype(np.int64)
    residual, combo = _reduce_vector(rhs, owner, reduced, combos)
    if residual.shape[0] == 0:
        u = _indicator(combo, A.cols)
        if not np.array_equal(A.matvec(u), bvec):
            raise AssertionError("GF(2) solution failed verification")
        return SolveOutcome("solvable", r, solution=u, pivot_columns=pivots)
    outcome = SolveOutcome("inconsistent", r, pivot_columns=pivots)
    if refute:
        outcome.refutation = left_certificate(A, bvec)
    return outcome


def left_certificate(A: GF2Matrix, b) -> np.ndarray:
    """Find ``y`` with ``y A = 0`` and ``y . b = 1``; raise if ``b`` is in
    the column space."""
    bvec = as_bitvector(b, A.rows)
    # [A^T; b^T] y = e_last
    bt = GF2Matrix.from_pairs(1, A.rows, np.zeros(int(bvec.sum()), dtype=np.int64), np.nonzero(bvec)[0])
    M = A.transpose().vstack(bt)
    target = np.zeros(M.rows, dtype=np.uint8)
    target[-1] = 1
    out = solve(M, target)
    if not out.solvable:
        raise InvalidParameter("system is consistent; no left certificate exists")
    y = out.solution
    if A.rmatvec(y).any() or int(y @ bvec.astype(np.int64)) % 2 != 1:
        raise AssertionError("left certificate failed verification")
    return y


def verify_refutation(A: GF2Matrix, b, y) -> bool:
    bvec = as_bitvector(b, A.rows)
    yv = as_bitvector(y, A.rows)
    return not A.rmatvec(yv).any() and int(yv.astype(np.int64) @ bvec) % 2 == 1


# --------------------------------------------------------------------------
# serialization


def bitvector_to_hex(vec) -> dict:
    v = np.asarray(vec, dtype=np.uint8)
    return {"length": int(v.size), "hex": np.packbits(v).tobytes().hex()}


def bitvector_from_hex(obj: dict) -> np.ndarray:
    n = int(obj["length"])
    raw = np.frombuffer(bytes.fromhex(obj["hex"]), dtype=np.uint8)
    bits = np.unpackbits(raw)
    if bits.size < n or bits[n:].any():
        raise InvalidParameter("malformed bit-vector serialization")
    return bits[:n].copy()


def write_coordinate(A: GF2Matrix, fh) -> None:
    """Coordinate text format: header ``rows cols nnz`` then 1-based
    ``row col value`` lines, column-major."""
    fh.write(f"{A.rows} {A.cols} {A.nnz}\n")
    cols = A.column_indices()
    for r, c in zip(A.indices.tolist(), cols.tolist()):
        fh.write(f"{r + 1} {c + 1} 1\n")


def read_coordinate(fh) -> GF2Matrix:
    header = fh.readline().split()
    rows, cols, nnz = (int(t) for t in header)
    rr = np.empty(nnz, dtype=np.int64)
    cc = np.empty(nnz, dtype=np.int64)
    for k in range(nnz):
        r, c, v = fh.readline().split()
        if int(v) % 2 == 0:
            rr[k] = cc[k] = -1
            continue
        rr[k] = int(r) - 1
        cc[k] = int(c) - 1
    keep = rr >= 0
    return GF2Matrix.from_pairs(rows, cols, rr[keep], cc[keep])
