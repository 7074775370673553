"""Generalized quaternion groups H_m with normal-form elements.

Every element is written uniquely as x^a * y^b with 0 <= a < 2^m and
b in {0, 1}.  The defining relations are

    x^(2^m) = y^4 = 1,   y^2 = x^(2^(m-1)),   x y x = y,

so y x^a = x^(-a) y.  H_2 is the quaternion group Q8 with x = i, y = j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidParameter


@dataclass(frozen=True, order=True)
class GroupElement:
    """Normal form x^a * y^b."""

    a: int
    b: int

    def __str__(self) -> str:
        if self.a == 0 and self.b == 0:
            return "e"
        return f"x^{self.a}*y^{self.b}"

    def short(self) -> str:
        """Compact label used inside cell names, e.g. ``x^3*y``."""
        parts = []
        if self.a:
            parts.append("x" if self.a == 1 else f"x^{self.a}")
        if self.b:
            parts.append("y")
        return "*".join(parts) or "e"


_ELEMENT_RE = re.compile(r"^x\^(\d+)\*y\^([01])$")


class Group:
    """Generalized quaternion group of order 2^(m+1) with a full Cayley table.

    Elements are indexed ``0 .. order-1`` with index ``2*a + b``, which is
    also the lexicographic order of normal forms.  All arithmetic after
    construction is table lookup.
    """

    def __init__(self, m: int):
        if not isinstance(m, int) or m < 2:
            raise InvalidParameter(f"generalized quaternion needs m >= 2, got {m!r}")
        self.m = m
        self.exp_order = 2 ** m
        self.order = 2 ** (m + 1)
        self.elements = [GroupElement(a, b) for a in range(self.exp_order) for b in (0, 1)]
        n = self.order
        self.cayley = [[self._index(self._raw_mul(g, h)) for h in self.elements] for g in self.elements]
        self.inverse = [0] * n
        for i in range(n):
            row = self.cayley[i]
            self.inverse[i] = row.index(0)
        self._check_axioms()
        # conjugation table: conj[g][h] = h^-1 g h
        self.conj_table = [
            [self.cayley[self.cayley[self.inverse[h]][g]][h] for h in range(n)] for g in range(n)
        ]

    # -- construction helpers -------------------------------------------------

    def _raw_mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        N = self.exp_order
        if g.b == 0:
            return GroupElement((g.a + h.a) % N, h.b)
        # y x^c = x^-c y
        a = (g.a - h.a) % N
        if h.b == 0:
            return GroupElement(a, 1)
        return GroupElement((a + N // 2) % N, 0)

    def _index(self, g: GroupElement) -> int:
        return 2 * g.a + g.b

    def _check_axioms(self) -> None:
        n = self.order
        c = self.cayley
        for i in range(n):
            if c[0][i] != i or c[i][0] != i:
                raise AssertionError("identity law fails")
            if c[i][self.inverse[i]] != 0:
                raise AssertionError("inverse law fails")
        for i, j, k in product(range(n), repeat=3):
            if c[c[i][j]][k] != c[i][c[j][k]]:
                raise AssertionError(f"associativity fails at {i},{j},{k}")
        x, y = self.x, self.y
        if self.power(x, self.exp_order) != self.identity:
            raise AssertionError("x^(2^m) != e")
        if self.mul(y, y) != self.power(x, self.exp_order // 2):
            raise AssertionError("y^2 != x^(2^(m-1))")
        if self.mul(self.mul(x, y), x) != y:
            raise AssertionError("xyx != y")

    # -- public API -----------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    @property
    def x(self) -> GroupElement:
        return GroupElement(1 % self.exp_order, 0)

    @property
    def y(self) -> GroupElement:
        return GroupElement(0, 1)

    def index(self, g: GroupElement) -> int:
        if not (0 <= g.a < self.exp_order and g.b in (0, 1)):
            raise InvalidParameter(f"{g!r} is not an element of H_{self.m}")
        return self._index(g)

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def non_identity(self) -> list[GroupElement]:
        return self.elements[1:]

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.elements[self.cayley[self.index(g)][self.index(h)]]

    def inv(self, g: GroupElement) -> GroupElement:
        return self.elements[self.inverse[self.index(g)]]

    def power(self, g: GroupElement, k: int) -> GroupElement:
        r = self.identity
        for _ in range(k % self.order if k >= 0 else 0):
            r = self.mul(r, g)
        if k < 0:
            gi = self.inv(g)
            for _ in range(-k):
                r = self.mul(r, gi)
        return r

    def word(self, letters: str) -> GroupElement:
        """Evaluate a word such as ``"XyxY"``; lower case is a generator,
        upper case its inverse."""
        r = self.identity
        gens = {"x": self.x, "y": self.y, "X": self.inv(self.x), "Y": self.inv(self.y)}
        for ch in letters:
            if ch not in gens:
                raise InvalidParameter(f"bad letter {ch!r} in word {letters!r}")
            r = self.mul(r, gens[ch])
        return r

    def conj(self, g: GroupElement, by: GroupElement) -> GroupElement:
        """Return ``by^-1 * g * by``."""
        return self.elements[self.conj_table[self.index(g)][self.index(by)]]

    def conj_tuple(self, gs: Sequence[GroupElement], by: GroupElement) -> tuple[GroupElement, ...]:
        return tuple(self.conj(g, by) for g in gs)

    def center(self) -> list[GroupElement]:
        n = self.order
        return [self.elements[i] for i in range(n) if all(self.conj_table[i][h] == i for h in range(n))]

    def parse(self, s: str) -> GroupElement:
        """Inverse of ``str(GroupElement)``."""
        s = s.strip()
        if s == "e":
            return self.identity
        match = _ELEMENT_RE.match(s)
        if not match:
            raise InvalidParameter(f"cannot parse group element {s!r}")
        g = GroupElement(int(match.group(1)), int(match.group(2)))
        self.index(g)
        return g

    def parse_short(self, s: str) -> GroupElement:
        """Inverse of :meth:`GroupElement.short`."""
        s = s.strip()
        if s == "e":
            return self.identity
        a, b = 0, 0
        for part in s.split("*"):
            if part == "y":
                b = 1
            elif part == "x":
                a = 1
            elif part.startswith("x^"):
                a = int(part[2:])
            else:
                raise InvalidParameter(f"cannot parse group element {s!r}")
        g = GroupElement(a, b)
        self.index(g)
        return g

    def __repr__(self) -> str:
        return f"Group(H_{self.m}, order={self.order})"


def make_generalized_quaternion(m: int) -> Group:
    return Group(m)


def quaternion_group() -> Group:
    """Q8 = H_2."""
    return Group(2)


def elements_str(gs: Iterable[GroupElement]) -> list[str]:
    return [str(g) for g in gs]
