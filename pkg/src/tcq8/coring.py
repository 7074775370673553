"""H*(S^3/Q8; F2), its tensor square, and the cup-length lower bounds.

The ring is F2<x, y>/(x^3, y^3, x^2 + y^2 + xy) with x, y in degree one.
Monomials are rewritten to the normal forms 1, x, y, x^2, xy, x^2 y using
y^2 -> x^2 + xy and x^3 -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ConstructionRejected, InvalidParameter

TENSOR = "⊗"


class GradedAlgebra:
    """Finite graded commutative F2 algebra given by structure constants.

    ``basis`` lists ``(degree, label)`` pairs in a fixed order with the unit
    first; ``table[i, j]`` is the coordinate vector of ``b_i * b_j``.
    """

    def __init__(self, basis: list[tuple[int, str]], table: np.ndarray, name: str = ""):
        self.basis = list(basis)
        self.labels = [lab for _, lab in self.basis]
        self.degrees = np.array([d for d, _ in self.basis], dtype=np.int64)
        self.table = np.asarray(table, dtype=np.uint8) % 2
        self.table.setflags(write=False)
        self.name = name
        self.top = int(self.degrees.max())
        n = len(self.basis)
        if self.table.shape != (n, n, n):
            raise InvalidParameter("structure constants must have shape (n, n, n)")
        self._check()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def dims(self) -> list[int]:
        return [int((self.degrees == k).sum()) for k in range(self.top + 1)]

    def degree_indices(self, k: int) -> np.ndarray:
        return np.nonzero(self.degrees == k)[0]

    def _check(self) -> None:
        n, T, deg = self.dim, self.table, self.degrees
        if deg[0] != 0 or self.dims()[0] != 1:
            raise ConstructionRejected("the unit must be the only degree-zero basis element")
        for i, j in product(range(n), repeat=2):
            out = np.nonzero(T[i, j])[0]
            if out.size and np.any(deg[out] != deg[i] + deg[j]):
                raise ConstructionRejected(f"{self.labels[i]}*{self.labels[j]} is not homogeneous of the right degree")
            if not np.array_equal(T[i, j], T[j, i]):
                raise ConstructionRejected(f"{self.labels[i]} and {self.labels[j]} do not commute")
        e = np.eye(n, dtype=np.uint8)
        if not (np.array_equal(T[0], e) and np.array_equal(T[:, 0], e)):
            raise ConstructionRejected("unit law fails")
        # (b_i b_j) b_k == b_i (b_j b_k) for every basis triple
        left = np.einsum("ijm,mkl->ijkl", T.astype(np.int64), T.astype(np.int64)) % 2
        right = np.einsum("jkm,iml->ijkl", T.astype(np.int64), T.astype(np.int64)) % 2
        if not np.array_equal(left, right):
            i, j, k, _ = np.argwhere(left != right)[0]
            raise ConstructionRejected(f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    # -- elements ---------------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def basis_element(self, label: str) -> "AlgebraElement":
        v = np.zeros(self.dim, dtype=np.uint8)
        v[self.labels.index(label)] = 1
        return AlgebraElement(self, v)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.dim, dtype=np.uint8))

    def one(self) -> "AlgebraElement":
        return self.basis_element(self.labels[0])

    def multiply(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return (np.einsum("i,j,ijk->k", u, v, self.table.astype(np.int64)) % 2).astype(np.uint8)

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name!r}, dims={self.dims()})"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: GradedAlgebra, coords):
        c = np.asarray(coords, dtype=np.uint8) % 2
        if c.shape != (algebra.dim,):
            raise InvalidParameter(f"expected {algebra.dim} coordinates")
        c.setflags(write=False)
        self.algebra = algebra
        self.coords = c

    def _same(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise InvalidParameter("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, self.coords ^ other.coords)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, self.algebra.multiply(self.coords, other.coords))

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise InvalidParameter("negative powers are undefined")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((id(self.algebra), self.coords.tobytes()))

    def __bool__(self) -> bool:
        return bool(self.coords.any())

    def terms(self) -> list[str]:
        return [self.algebra.labels[i] for i in np.nonzero(self.coords)[0]]

    def degrees(self) -> set[int]:
        return {int(self.algebra.degrees[i]) for i in np.nonzero(self.coords)[0]}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def by_degree(self) -> dict[int, np.ndarray]:
        """Coordinates split per degree."""
        A = self.algebra
        return {k: self.coords[A.degree_indices(k)] for k in range(A.top + 1)}

    def __str__(self) -> str:
        return " + ".join(self.terms()) or "0"

    def __repr__(self) -> str:
        return f"<{self}>"


# --------------------------------------------------------------------------
# H*(X; F2)

NORMAL_FORMS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1)]


def monomial_label(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def reduce_monomial(a: int, b: int) -> frozenset[tuple[int, int]]:
    """Normal form of x^a y^b as a set of normal monomials (mod 2)."""
    if a >= 3:
        return frozenset()
    if b <= 1:
        return frozenset([(a, b)])
    return reduce_monomial(a + 2, b - 2) ^ reduce_monomial(a + 1, b - 1)


def reduce_monomial_late(a: int, b: int) -> frozenset[tuple[int, int]]:
    """Same normal form, rewriting y^2 all the way down and truncating x^3
    only at the end."""
    poly: dict[tuple[int, int], int] = {(a, b): 1}
    while any(bb >= 2 for _, bb in poly):
        nxt: dict[tuple[int, int], int] = {}
        for (aa, bb), c in poly.items():
            outs = [(aa + 2, bb - 2), (aa + 1, bb - 1)] if bb >= 2 else [(aa, bb)]
            for o in outs:
                nxt[o] = nxt.get(o, 0) ^ c
        poly = {k: v for k, v in nxt.items() if v}
    return frozenset(k for k in poly if k[0] < 3)


def check_confluence(max_degree: int = 6) -> list[tuple[int, int]]:
    """Monomials of degree <= max_degree where the two rewriting orders disagree."""
    return [
        (a, b)
        for t in range(max_degree + 1)
        for a in range(t + 1)
        for b in [t - a]
        if reduce_monomial(a, b) != reduce_monomial_late(a, b)
    ]


@lru_cache(maxsize=None)
def build_HX() -> GradedAlgebra:
    basis = [(a + b, monomial_label(a, b)) for a, b in NORMAL_FORMS]
    n = len(basis)
    T = np.zeros((n, n, n), dtype=np.uint8)
    for i, (a1, b1) in enumerate(NORMAL_FORMS):
        for j, (a2, b2) in enumerate(NORMAL_FORMS):
            for mono in reduce_monomial(a1 + a2, b1 + b2):
                T[i, j, NORMAL_FORMS.index(mono)] ^= 1
    bad = check_confluence()
    if bad:
        raise ConstructionRejected(f"rewriting is not confluent on {bad}")
    return GradedAlgebra(basis, T, name="H*(X;F2)")


def tensor_label(a: str, b: str) -> str:
    return f"{a}{TENSOR}{b}"


@lru_cache(maxsize=None)
def tensor_square(A: GradedAlgebra | None = None) -> GradedAlgebra:
    """A (x) A with (a(x)b)(c(x)d) = ac (x) bd; basis ordered by total degree,
    then by the two factor indices."""
    A = A or build_HX()
    pairs = sorted(product(range(A.dim), repeat=2), key=lambda p: (A.degrees[p[0]] + A.degrees[p[1]], p))
    pos = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    T = np.zeros((n, n, n), dtype=np.uint8)
    for s, (i, j) in enumerate(pairs):
        for t, (k, l) in enumerate(pairs):
            left = np.nonzero(A.table[i, k])[0]
            right = np.nonzero(A.table[j, l])[0]
            for p in left:
                for q in right:
                    T[s, t, pos[(p, q)]] ^= 1
    basis = [(int(A.degrees[i] + A.degrees[j]), tensor_label(A.labels[i], A.labels[j])) for i, j in pairs]
    sq = GradedAlgebra(basis, T, name=f"{A.name} (x) {A.name}")
    sq.factor = A
    sq.pairs = pairs
    return sq


def left(g: AlgebraElement, sq: GradedAlgebra | None = None) -> AlgebraElement:
    """g (x) 1."""
    return _embed(g, sq, first=True)


def right(g: AlgebraElement, sq: GradedAlgebra | None = None) -> AlgebraElement:
    """1 (x) g."""
    return _embed(g, sq, first=False)


def _embed(g: AlgebraElement, sq, first: bool) -> AlgebraElement:
    sq = sq or tensor_square(g.algebra)
    v = np.zeros(sq.dim, dtype=np.uint8)
    for i in np.nonzero(g.coords)[0]:
        v[sq.pairs.index((i, 0) if first else (0, i))] = 1
    return sq.element(v)


def zero_divisor(g: AlgebraElement, sq: GradedAlgebra | None = None) -> AlgebraElement:
    """1 (x) g + g (x) 1."""
    if not g.is_homogeneous():
        raise InvalidParameter("zero_divisor expects a homogeneous element")
    return right(g, sq) + left(g, sq)


def diagonal_restriction(u: AlgebraElement) -> AlgebraElement:
    """Image under a (x) b -> ab, the cup product followed by the diagonal."""
    sq = u.algebra
    A = sq.factor
    out = np.zeros(A.dim, dtype=np.uint8)
    for s in np.nonzero(u.coords)[0]:
        i, j = sq.pairs[s]
        out ^= A.table[i, j]
    return A.element(out)


def cup_length(A: GradedAlgebra) -> int:
    """Largest k with a nonzero product of k positive-degree elements."""
    span = _positive_span(A)
    return _power_length(A, span)


def zero_divisor_cup_length(sq: GradedAlgebra) -> int:
    """Largest k with a nonzero product of k zero divisors."""
    A = sq.factor
    M = np.array([diagonal_restriction(sq.element(np.eye(sq.dim, dtype=np.uint8)[s])).coords for s in range(sq.dim)])
    return _power_length(sq, _kernel_rows(M))


def _positive_span(A: GradedAlgebra) -> np.ndarray:
    return np.eye(A.dim, dtype=np.uint8)[A.degrees > 0]


def _power_length(A: GradedAlgebra, ideal: np.ndarray) -> int:
    """Largest k with I^k != 0 for the subspace I spanned by ``ideal`` rows."""
    k = 0
    cur = np.eye(A.dim, dtype=np.uint8)[:1]  # the unit
    while True:
        prods = [A.multiply(a, b) for a in cur for b in ideal]
        nxt = _row_basis(np.array(prods, dtype=np.uint8)) if prods else np.zeros((0, A.dim), dtype=np.uint8)
        if nxt.shape[0] == 0:
            return k
        cur = nxt
        k += 1


def _row_basis(M: np.ndarray) -> np.ndarray:
    M = M.copy() % 2
    rows = []
    r = 0
    for c in range(M.shape[1]):
        piv = next((i for i in range(r, M.shape[0]) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(M.shape[0]):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        rows.append(M[r].copy())
        r += 1
    return np.array(rows, dtype=np.uint8).reshape(-1, M.shape[1])


def _kernel_rows(M: np.ndarray) -> np.ndarray:
    """Basis of {v : v M = 0} for a 0/1 matrix M (rows are images of basis vectors)."""
    n = M.shape[0]
    aug = np.concatenate([M % 2, np.eye(n, dtype=np.uint8)], axis=1)
    red = _row_basis(aug)
    k = M.shape[1]
    return red[~red[:, :k].any(axis=1), k:]


def poincare_pairing_failures(A: GradedAlgebra) -> list[str]:
    """Nonzero a of degree k with a*b = 0 for every b of degree top - k."""
    bad = []
    for k in range(A.top + 1):
        idx = A.degree_indices(k)
        dual = A.degree_indices(A.top - k)
        for bits in product((0, 1), repeat=idx.size):
            if not any(bits):
                continue
            v = np.zeros(A.dim, dtype=np.uint8)
            v[idx] = bits
            a = A.element(v)
            ok = any(a * A.element(np.eye(A.dim, dtype=np.uint8)[j]) for j in dual)
            if not ok:
                bad.append(str(a))
    return bad


@dataclass
class LowerBounds:
    cat_lb: int
    tc_lb: int
    witnesses: dict

    @property
    def passed(self) -> bool:
        return self.cat_lb >= 3 and self.tc_lb >= 5


def certify_lower_bounds() -> LowerBounds:
    """Check the ring facts behind cat(X) >= 3 and TC(X) >= 5.

    Only the computable premises are checked: the product x*x*y is nonzero,
    and xbar^3 ybar^2 is nonzero with both xbar and ybar restricting to 0 on
    the diagonal.  Turning these into bounds uses weight additivity, which is
    cited rather than computed.
    """
    H = build_HX()
    sq = tensor_square(H)
    x, y = H.basis_element("x"), H.basis_element("y")
    xxy = x * x * y
    xb, yb = zero_divisor(x, sq), zero_divisor(y, sq)
    prod5 = xb ** 3 * yb ** 2
    w = {
        "x*x*y": str(xxy),
        "x*x*y_nonzero": bool(xxy),
        "xbar": str(xb),
        "ybar": str(yb),
        "xbar_diagonal_restriction_zero": not diagonal_restriction(xb),
        "ybar_diagonal_restriction_zero": not diagonal_restriction(yb),
        "xbar^2": str(xb ** 2),
        "xbar^3": str(xb ** 3),
        "ybar^2": str(yb ** 2),
        "xbar^3*ybar^2": str(prod5),
        "xbar^3*ybar^2_nonzero": bool(prod5),
        "xbar^4": str(xb ** 4),
        "xbar^4_zero": not (xb ** 4),
        "cup_length": cup_length(H),
        "zero_divisor_cup_length": zero_divisor_cup_length(sq),
        "dims_HX": H.dims(),
        "dims_HXxX": sq.dims(),
    }
    cat_lb = 3 if w["x*x*y_nonzero"] else 0
    zd = w["xbar_diagonal_restriction_zero"] and w["ybar_diagonal_restriction_zero"]
    tc_lb = 5 if (zd and w["xbar^3*ybar^2_nonzero"]) else 0
    return LowerBounds(cat_lb, tc_lb, w)
