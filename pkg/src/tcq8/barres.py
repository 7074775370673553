"""Normalized bar complex of a finite group, with cochain algebra.

A d-cell is a tuple [g1|...|gd] of non-identity elements.  With the
non-identity elements numbered 0..q-1 (q = |G| - 1) in normal-form order, the
cell is stored as the base-q integer whose most significant digit is g1, so
cells of each degree are in lexicographic order.

    d[g1|...|gd] = [g2|...|gd] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^d [g1|...|g_{d-1}]

Faces with an identity entry are degenerate and dropped.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .chains import ChainComplex, Cochain, betti_F2, coboundary, coboundary_witness
from .errors import InvalidInput, InvalidParameter
from .fingroup import Group, GroupElement

DEFAULT_MAX_DIM = 7


# --------------------------------------------------------------------------
# vectorized cell arithmetic, shared with the twisted complex


def decode(codes: np.ndarray, d: int, q: int) -> np.ndarray:
    """Codes -> (N, d) array of group indices (1..q)."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, d), dtype=np.int64)
    c = codes.copy()
    for i in range(d - 1, -1, -1):
        out[:, i] = c % q + 1
        c //= q
    return out


def encode(g: np.ndarray, q: int) -> np.ndarray:
    """(N, d) array of non-identity group indices -> codes."""
    out = np.zeros(g.shape[0], dtype=np.int64)
    for i in range(g.shape[1]):
        out = out * q + (g[:, i] - 1)
    return out


def bar_faces(mul: np.ndarray, g: np.ndarray, q: int):
    """Faces of the cells given as an (N, d) index array.

    Yields ``(i, valid, codes)`` for i = 0..d; ``valid`` marks
    non-degenerate faces and the face has sign (-1)^i.
    """
    N, d = g.shape
    ones = np.ones(N, dtype=bool)
    yield 0, ones, encode(g[:, 1:], q)
    for i in range(d - 1):
        prod = mul[g[:, i], g[:, i + 1]]
        valid = prod != 0
        merged = np.concatenate([g[:, :i], np.where(valid, prod, 1)[:, None], g[:, i + 2:]], axis=1)
        yield i + 1, valid, encode(merged, q)
    yield d, ones, encode(g[:, :-1], q)


class BarCells(Sequence):
    """Lazy, lexicographically ordered d-cells of the normalized bar complex."""

    def __init__(self, group: Group, d: int):
        self.group = group
        self.d = d
        self.q = group.order - 1

    def __len__(self) -> int:
        return self.q ** self.d

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        digits = []
        for _ in range(self.d):
            digits.append(i % self.q + 1)
            i //= self.q
        return tuple(self.group.elements[k] for k in reversed(digits))

    def index(self, cell) -> int:
        cell = tuple(cell)
        if len(cell) != self.d:
            raise InvalidParameter(f"expected a {self.d}-cell, got {cell!r}")
        code = 0
        for g in cell:
            k = self.group.index(g)
            if k == 0:
                raise InvalidParameter("normalized bar cells have no identity entries")
            code = code * self.q + (k - 1)
        return code

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def format_bar_cell(cell: Sequence[GroupElement]) -> str:
    return "[" + "|".join(g.short() for g in cell) + "]"


class BarComplex(ChainComplex):
    """Normalized bar complex of ``group`` through ``max_dim``."""

    def __init__(self, group: Group, max_dim: int = DEFAULT_MAX_DIM):
        if max_dim < 0:
            raise InvalidParameter("max_dim must be >= 0")
        self.group = group
        self.q = group.order - 1
        self.mul = np.array(group.cayley, dtype=np.int64)
        cells = [BarCells(group, d) for d in range(max_dim + 1)]
        bd = {d: self._boundary_matrix(d) for d in range(1, max_dim + 1)}
        super().__init__(cells, bd, name=f"bar(H_{group.m})<= {max_dim}")

    def _boundary_matrix(self, d: int) -> sp.csc_array:
        q = self.q
        n = q ** d
        cols = np.arange(n, dtype=np.int64)
        g = decode(cols, d, q)
        rr, cc, vv = [], [], []
        for i, valid, face in bar_faces(self.mul, g, q):
            rr.append(face[valid])
            cc.append(cols[valid])
            vv.append(np.full(int(valid.sum()), -1 if i % 2 else 1, dtype=np.int64))
        data = np.concatenate(vv)
        M = sp.csc_array((data, (np.concatenate(rr), np.concatenate(cc))), shape=(q ** (d - 1), n))
        M.sum_duplicates()
        return M

    def cell_str(self, k: int, i: int) -> str:
        return format_bar_cell(self.cells[k][i])

    def parse_cell(self, s: str) -> tuple[GroupElement, ...]:
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise InvalidParameter(f"bad bar cell {s!r}")
        body = s[1:-1]
        if not body:
            return ()
        return tuple(self.group.parse_short(t) for t in body.split("|"))


def build_bar_complex(group: Group, max_dim: int = DEFAULT_MAX_DIM) -> BarComplex:
    return BarComplex(group, max_dim)


# --------------------------------------------------------------------------
# cochains


def _degree_one(bar: BarComplex, pick) -> Cochain:
    support = [i for i, (g,) in enumerate(bar.cells[1]) if pick(g)]
    return Cochain(bar, 1, support)


def cochain_x(bar: BarComplex) -> Cochain:
    """x[x^a y^b] = a mod 2."""
    return _degree_one(bar, lambda g: g.a % 2 == 1)


def cochain_y(bar: BarComplex) -> Cochain:
    """y[x^a y^b] = b."""
    return _degree_one(bar, lambda g: g.b == 1)


def cochain_on_elements(bar: BarComplex, elements: Iterable[GroupElement]) -> Cochain:
    """Degree-one cochain equal to 1 on the listed elements; the identity,
    which is not a cell, is ignored."""
    idx = sorted({bar.group.index(g) - 1 for g in elements if bar.group.index(g) != 0})
    return Cochain(bar, 1, idx)


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Alexander-Whitney product: (a cup b)[g1..g_{p+q}] = a[g1..gp] b[g_{p+1}..]."""
    if a.cx is not b.cx or not isinstance(a.cx, BarComplex):
        raise InvalidParameter("cup product needs two cochains on the same bar complex")
    bar = a.cx
    p, r = a.dim, b.dim
    if p + r > bar.top_dim:
        raise InvalidParameter(f"degree {p + r} exceeds the bar cut-off {bar.top_dim}")
    support = (a.support[:, None] * bar.q ** r + b.support[None, :]).ravel()
    return Cochain(bar, p + r, support)


def cup_all(*cs: Cochain) -> Cochain:
    out = cs[0]
    for c in cs[1:]:
        out = cup(out, c)
    return out


def bockstein(c: Cochain) -> Cochain:
    """Bockstein of a mod-2 cocycle: lift to {0,1}, integer coboundary, halve."""
    cx = c.cx
    if c.dim >= cx.top_dim:
        raise InvalidParameter("Bockstein needs cells one degree up")
    lift = c.to_vector().astype(np.int64)
    d_int = cx.boundary(c.dim + 1).T @ lift
    if np.any(d_int % 2):
        raise InvalidInput("not a mod-2 cocycle: integer coboundary has odd entries")
    return Cochain.from_vector(cx, c.dim + 1, (d_int // 2) % 2)


def is_coboundary(c: Cochain) -> Cochain | None:
    """A witness u with delta u = c, or None when none exists."""
    if coboundary(c):
        raise InvalidInput("is_coboundary expects a cocycle")
    witness, _ = coboundary_witness(c)
    return witness


def cohomology_rank_of(cochains: Sequence[Cochain]) -> int:
    """Dimension of the span of the classes of the given cocycles."""
    if not cochains:
        return 0
    from . import gf2

    cx = cochains[0].cx
    k = cochains[0].dim
    A = cx.coboundary_mod2(k - 1) if k > 0 else gf2.GF2Matrix.zeros(cx.n_cells(0), 0)
    extra = gf2.GF2Matrix.from_columns(cx.n_cells(k), [c.support.tolist() for c in cochains])
    return gf2.rank(A.hstack(extra)) - gf2.rank(A)


def bar_betti_numbers(bar: BarComplex, through: int | None = None) -> list[int]:
    through = bar.top_dim - 1 if through is None else through
    return [betti_F2(bar, k) for k in range(through + 1)]


# --------------------------------------------------------------------------
# the ring relations of H*(BQ8; F2)


def quadratic_relation_witness(bar: BarComplex) -> Cochain:
    """The degree-one cochain equal to 1 on x, y, xy, x^2."""
    G = bar.group
    return cochain_on_elements(bar, [G.word("x"), G.word("y"), G.word("xy"), G.word("xx")])


def ring_relation_witnesses(bar: BarComplex) -> dict:
    """Check the relations x^2 + xy + y^2 = 0, x^3 = 0 and z = x^2 y != 0
    at cochain level, plus the Bockstein facts in degrees 1 and 2."""
    if bar.top_dim < 4:
        raise InvalidParameter("ring relations need the bar complex through degree 4")
    x, y = cochain_x(bar), cochain_y(bar)
    xx, xy, yy = cup(x, x), cup(x, y), cup(y, y)
    quad = xx + xy + yy
    v = quadratic_relation_witness(bar)
    dv = coboundary(v)
    xxx = cup(xx, x)
    z = cup(xx, y)
    w_xxx, _ = coboundary_witness(xxx)
    w_z, out_z = coboundary_witness(z, refute=True)
    refutation = None
    if out_z.refutation is not None:
        refutation = [bar.cell_str(3, int(i)) for i in np.nonzero(out_z.refutation)[0]]
    bx, by = bockstein(x), bockstein(y)
    bbx = bockstein(bx)
    facts = {
        "x_cocycle": not coboundary(x),
        "y_cocycle": not coboundary(y),
        "v_support": v.labels(),
        "dv_equals_quadratic": dv == quad,
        "x3_cocycle": not coboundary(xxx),
        "x3_coboundary": w_xxx is not None,
        "x3_witness": w_xxx.labels() if w_xxx is not None else None,
        "z_cocycle": not coboundary(z),
        "z_coboundary": w_z is not None,
        "z_solve_rank": out_z.rank,
        "z_refuting_cycle": refutation,
        "h3_dimension": betti_F2(bar, 3),
        "bockstein_x_cocycle": not coboundary(bx),
        "bockstein_y_cocycle": not coboundary(by),
        "bockstein_class_rank": cohomology_rank_of([bx, by]),
        "h2_dimension": betti_F2(bar, 2),
        "bockstein_squared_zero": bool(coboundary_witness(bbx)[0] is not None or not bbx),
    }
    facts["passed"] = bool(
        facts["x_cocycle"]
        and facts["y_cocycle"]
        and facts["dv_equals_quadratic"]
        and facts["x3_cocycle"]
        and facts["x3_coboundary"]
        and facts["z_cocycle"]
        and not facts["z_coboundary"]
        and facts["bockstein_x_cocycle"]
        and facts["bockstein_y_cocycle"]
        and facts["bockstein_class_rank"] == 2
        and facts["bockstein_squared_zero"]
    )
    return facts
