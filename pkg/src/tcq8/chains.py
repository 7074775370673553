"""Finitely generated chain complexes with integer or mod-2 boundaries.

Boundary matrices follow the usual convention: ``boundary(k)`` maps
``C_k -> C_{k-1}``, rows are indexed by (k-1)-cells and columns by
k-cells.  Every complex is checked for ``d_{k-1} d_k = 0`` when it is
built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import gf2
from .errors import ConstructionRejected, InvalidParameter


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """Z^free_rank + Z_{d1} + ... with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t):
            raise InvalidParameter(f"torsion coefficients must be >= 2: {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise InvalidParameter(f"torsion not in divisibility order: {t}")

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def smith_normal_form(M) -> tuple[list[int], int]:
    """Invariant factors of an integer matrix.

    Returns ``(diag, rank)`` where ``diag`` lists the nonzero diagonal
    entries ``d1 | d2 | ... | d_r`` of the Smith form (all positive).
    Works on a copy in Python integers, so there is no overflow.
    """
    A = [[int(v) for v in row] for row in _as_rows(M)]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = A[i][j]
                if v and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must divide the whole remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest entry of row/column t into the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, nr) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, nc) if A[t][j]]
            _, i, j = min(cands)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag, len(diag)


def _as_rows(M) -> list[list[int]]:
    if sp.issparse(M):
        return M.toarray().tolist()
    if isinstance(M, np.ndarray):
        return M.tolist()
    return [list(r) for r in M]


class ChainComplex:
    """Graded cells plus sparse boundary matrices.

    Parameters
    ----------
    cells:
        ``cells[k]`` is a sequence of labels of the k-cells.  Any object
        with ``len``, indexing and ``index`` works, so large complexes can
        supply lazy label sequences.
    boundaries:
        Mapping ``k -> matrix`` for ``k >= 1``; missing degrees are zero.
        Matrices may be scipy sparse, dense arrays or :class:`GF2Matrix`.
    modulus:
        ``None`` for integer complexes, ``2`` for complexes only defined
        mod 2.
    """

    def __init__(
        self,
        cells: Sequence[Sequence],
        boundaries: Mapping[int, object],
        modulus: int | None = None,
        name: str = "",
        validate: bool = True,
    ):
        if modulus not in (None, 2):
            raise InvalidParameter("modulus must be None or 2")
        self.cells = list(cells)
        self.modulus = modulus
        self.name = name
        self.top_dim = len(self.cells) - 1
        self._bd: dict[int, sp.csc_array] = {}
        for k in range(1, self.top_dim + 1):
            shape = (len(self.cells[k - 1]), len(self.cells[k]))
            M = boundaries.get(k)
            self._bd[k] = _to_csc(M, shape, modulus)
        extra = set(boundaries) - set(range(1, self.top_dim + 1))
        if extra:
            raise InvalidParameter(f"boundaries given for missing degrees {sorted(extra)}")
        self._rank2: dict[int, int] = {}
        self._mod2: dict[int, gf2.GF2Matrix] = {}
        if validate:
            self.check_d_squared()

    # -- structure ------------------------------------------------------------

    def n_cells(self, k: int) -> int:
        if k < 0 or k > self.top_dim:
            return 0
        return len(self.cells[k])

    def cell_counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def boundary(self, k: int) -> sp.csc_array:
        """Integer matrix of d_k (for a mod-2 complex, entries are 0/1)."""
        if k < 1 or k > self.top_dim:
            return sp.csc_array((self.n_cells(k - 1), self.n_cells(k)), dtype=np.int64)
        return self._bd[k]

    def boundary_mod2(self, k: int) -> gf2.GF2Matrix:
        if k not in self._mod2:
            M = self.boundary(k).tocoo()
            odd = (M.data % 2) != 0
            self._mod2[k] = gf2.GF2Matrix.from_pairs(M.shape[0], M.shape[1], M.row[odd], M.col[odd])
        return self._mod2[k]

    def coboundary_mod2(self, k: int) -> gf2.GF2Matrix:
        """delta^k : C^k -> C^(k+1), the transpose of d_{k+1}."""
        return self.boundary_mod2(k + 1).transpose()

    def index(self, k: int, label) -> int:
        return self.cells[k].index(label)

    def check_d_squared(self) -> None:
        for k in range(2, self.top_dim + 1):
            P = (self._bd[k - 1] @ self._bd[k]).tocoo()
            data = P.data % 2 if self.modulus == 2 else P.data
            bad = np.nonzero(data)[0]
            if bad.size:
                j = int(P.col[bad].min())
                label = self.cells[k][j]
                raise ConstructionRejected(
                    f"d_{k - 1} d_{k} != 0 on {k}-cell {label!r} of {self.name or 'complex'}",
                    cell=(k, label),
                )

    def check_range(self, k: int) -> None:
        if not isinstance(k, (int, np.integer)) or k < 0 or k > self.top_dim:
            raise InvalidParameter(f"degree {k} outside 0..{self.top_dim}")

    def rank_mod2(self, k: int) -> int:
        """Rank of d_k mod 2.

        Ranks are computed upward as ranks of the coboundaries
        delta^0, delta^1, ..., each reduction skipping the columns cleared
        by the previous one.
        """
        if k < 1 or k > self.top_dim:
            return 0
        if k not in self._rank2:
            start = max(self._rank2, default=0)
            pivots = self._pivots if start else np.zeros(0, dtype=np.int64)
            for j in range(start + 1, k + 1):
                r, pivots = gf2.rank_with_clearing(self.coboundary_mod2(j - 1), skip=pivots)
                self._rank2[j] = r
            self._pivots = pivots
        return self._rank2[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.cell_counts()))

    def __repr__(self) -> str:
        return f"ChainComplex({self.name!r}, cells={self.cell_counts()})"


def _to_csc(M, shape, modulus) -> sp.csc_array:
    if M is None:
        out = sp.csc_array(shape, dtype=np.int64)
    elif isinstance(M, gf2.GF2Matrix):
        data = np.ones(M.nnz, dtype=np.int64)
        out = sp.csc_array((data, M.indices.copy(), M.indptr.copy()), shape=M.shape)
    elif sp.issparse(M):
        out = sp.csc_array(M, dtype=np.int64)
    else:
        arr = np.asarray(M, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(shape)
        out = sp.csc_array(arr)
    if out.shape != shape:
        raise ConstructionRejected(f"boundary shape {out.shape} does not match cell counts {shape}")
    if modulus == 2:
        out.data %= 2
    out.eliminate_zeros()
    out.sort_indices()
    return out


# --------------------------------------------------------------------------
# homology


def _snf_factors(M) -> tuple[list[int], int]:
    if M.shape[0] == 0 or M.shape[1] == 0 or M.nnz == 0:
        return [], 0
    return smith_normal_form(M.toarray())


def homology_Z(cx: ChainComplex, k: int) -> AbelianGroupDescriptor:
    """H_k = ker d_k / im d_{k+1}."""
    if cx.modulus is not None:
        raise InvalidParameter("integral homology of a mod-2 complex is undefined")
    cx.check_range(k)
    _, r_k = _snf_factors(cx.boundary(k))
    f_next, r_next = _snf_factors(cx.boundary(k + 1))
    free = cx.n_cells(k) - r_k - r_next
    return AbelianGroupDescriptor(free, tuple(d for d in f_next if d > 1))


def cohomology_Z(cx: ChainComplex, k: int) -> AbelianGroupDescriptor:
    """H^k = ker delta^k / im delta^{k-1}, delta^k = d_{k+1}^T."""
    if cx.modulus is not None:
        raise InvalidParameter("integral cohomology of a mod-2 complex is undefined")
    cx.check_range(k)
    _, r_k = _snf_factors(cx.boundary(k + 1).T)
    f_prev, r_prev = _snf_factors(cx.boundary(k).T)
    free = cx.n_cells(k) - r_k - r_prev
    return AbelianGroupDescriptor(free, tuple(d for d in f_prev if d > 1))


def betti_F2(cx: ChainComplex, k: int) -> int:
    """dim ker(d_k mod 2) - rank(d_{k+1} mod 2).

    For a truncated complex the top degree is the homology of the
    truncation itself.
    """
    cx.check_range(k)
    return cx.n_cells(k) - cx.rank_mod2(k) - cx.rank_mod2(k + 1)


def write_coordinate(M, fh) -> None:
    """Integer sparse matrix in coordinate text format (1-based)."""
    if isinstance(M, gf2.GF2Matrix):
        gf2.write_coordinate(M, fh)
        return
    C = sp.csc_array(M).tocoo()
    order = np.lexsort((C.row, C.col))
    fh.write(f"{C.shape[0]} {C.shape[1]} {C.nnz}\n")
    for t in order:
        fh.write(f"{C.row[t] + 1} {C.col[t] + 1} {C.data[t]}\n")


def read_coordinate(fh) -> sp.csc_array:
    rows, cols, nnz = (int(t) for t in fh.readline().split())
    rr, cc, vv = [], [], []
    for _ in range(nnz):
        r, c, v = fh.readline().split()
        rr.append(int(r) - 1)
        cc.append(int(c) - 1)
        vv.append(int(v))
    return sp.csc_array((np.array(vv, dtype=np.int64), (rr, cc)), shape=(rows, cols))


class Cochain:
    """F2-valued cochain of a fixed degree, stored as its sorted support."""

    __slots__ = ("cx", "dim", "support")

    def __init__(self, cx: ChainComplex, dim: int, support=()):
        cx.check_range(dim)
        s = np.unique(np.asarray(support, dtype=np.int64))
        if s.size and (s[0] < 0 or s[-1] >= cx.n_cells(dim)):
            raise InvalidParameter("cochain support outside the cells of its degree")
        self.cx = cx
        self.dim = dim
        self.support = s
        s.setflags(write=False)

    @classmethod
    def from_vector(cls, cx: ChainComplex, dim: int, vec) -> "Cochain":
        return cls(cx, dim, np.nonzero(np.asarray(vec) % 2)[0])

    @classmethod
    def from_labels(cls, cx: ChainComplex, dim: int, labels) -> "Cochain":
        return cls(cx, dim, [cx.index(dim, lab) for lab in labels])

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.cx.n_cells(self.dim), dtype=np.uint8)
        v[self.support] = 1
        return v

    def __call__(self, cell) -> int:
        i = cell if isinstance(cell, (int, np.integer)) else self.cx.index(self.dim, cell)
        j = np.searchsorted(self.support, i)
        return int(j < self.support.size and self.support[j] == i)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.cx, self.dim, np.setxor1d(self.support, other.support, assume_unique=True))

    __sub__ = __add__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.cx is other.cx and self.dim == other.dim and np.array_equal(self.support, other.support)

    def __hash__(self):
        return hash((id(self.cx), self.dim, self.support.tobytes()))

    def __bool__(self) -> bool:
        return bool(self.support.size)

    def __len__(self) -> int:
        return int(self.support.size)

    def _compatible(self, other: "Cochain") -> None:
        if self.cx is not other.cx or self.dim != other.dim:
            raise InvalidParameter("cochains live on different complexes or degrees")

    def labels(self) -> list[str]:
        cells = self.cx.cells[self.dim]
        fmt = getattr(self.cx, "cell_str", None)
        if fmt is not None:
            return [fmt(self.dim, int(i)) for i in self.support]
        return [str(cells[int(i)]) for i in self.support]

    def __repr__(self) -> str:
        return f"Cochain(dim={self.dim}, |support|={self.support.size})"


def coboundary(c: Cochain) -> Cochain:
    """delta c = c o d, computed mod 2."""
    if c.dim >= c.cx.top_dim:
        raise InvalidParameter(f"coboundary of a degree-{c.dim} cochain needs cells of degree {c.dim + 1}")
    return Cochain.from_vector(c.cx, c.dim + 1, c.cx.boundary_mod2(c.dim + 1).rmatvec(c.to_vector()))


def coboundary_witness(c: Cochain, refute: bool = False) -> tuple[Cochain | None, gf2.SolveOutcome]:
    """Solve delta u = c.  Returns the witness (or None) and the solver outcome;
    with ``refute`` an inconsistent outcome carries a cycle z with c(z) = 1
    and d z = 0."""
    if c.dim == 0:
        raise InvalidParameter("degree-0 cochains are never coboundaries of anything")
    A = c.cx.coboundary_mod2(c.dim - 1)
    out = gf2.solve(A, c.to_vector(), refute=refute)
    if out.solvable:
        return Cochain.from_vector(c.cx, c.dim - 1, out.solution), out
    return None, out


def is_cocycle(c: Cochain) -> bool:
    return not coboundary(c)
