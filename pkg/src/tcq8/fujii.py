"""Fujii's CW structure on N^n(m) = S^(4n+3)/H_m and its (co)homology.

Cells are e^(4k), e^(4k+1)_i, e^(4k+2)_i, e^(4k+3) for 0 <= k <= n and
i = 1, 2, with boundaries

    d e^(4k)     = 2^(m+1) e^(4k-1)
    d e^(4k+1)_i = 0
    d e^(4k+2)_1 = 2^(m-1) e^(4k+1)_1 - 2 e^(4k+1)_2
    d e^(4k+2)_2 = 2 e^(4k+1)_1
    d e^(4k+3)   = 0
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import AbelianGroupDescriptor, ChainComplex, betti_F2, cohomology_Z, homology_Z
from .errors import InvalidParameter


@dataclass(frozen=True, order=True)
class FujiiCell:
    k: int
    residue: int
    branch: int | None = None

    @property
    def dim(self) -> int:
        return 4 * self.k + self.residue

    def __str__(self) -> str:
        if self.branch is None:
            return f"e{self.dim}"
        return f"e{self.dim}_{self.branch}"


def fujii_cells(n: int) -> list[list[FujiiCell]]:
    cells: list[list[FujiiCell]] = []
    for k in range(n + 1):
        cells.append([FujiiCell(k, 0)])
        cells.append([FujiiCell(k, 1, 1), FujiiCell(k, 1, 2)])
        cells.append([FujiiCell(k, 2, 1), FujiiCell(k, 2, 2)])
        cells.append([FujiiCell(k, 3)])
    return cells


def _check_params(n, m) -> None:
    if not isinstance(n, int) or n < 0:
        raise InvalidParameter(f"n must be an integer >= 0, got {n!r}")
    if not isinstance(m, int) or m < 2:
        raise InvalidParameter(f"m must be an integer >= 2, got {m!r}")


def build_fujii_complex(n: int, m: int) -> ChainComplex:
    _check_params(n, m)
    cells = fujii_cells(n)
    bd = {}
    for d in range(1, 4 * n + 4):
        rows, cols = len(cells[d - 1]), len(cells[d])
        M = np.zeros((rows, cols), dtype=np.int64)
        r = d % 4
        if r == 0:
            M[0, 0] = 2 ** (m + 1)
        elif r == 2:
            M[:, 0] = (2 ** (m - 1), -2)
            M[:, 1] = (2, 0)
        bd[d] = M
    return ChainComplex(cells, bd, name=f"N^{n}({m})")


def homology_table(n: int, m: int) -> dict[str, list]:
    """Integral homology, integral cohomology and F2 Betti numbers by degree."""
    cx = build_fujii_complex(n, m)
    top = cx.top_dim
    return {
        "homology": [homology_Z(cx, k) for k in range(top + 1)],
        "cohomology": [cohomology_Z(cx, k) for k in range(top + 1)],
        "cohomology_F2": [betti_F2(cx, k) for k in range(top + 1)],
    }


def closed_form_table(n: int, m: int) -> dict[str, list]:
    """The same three tables written out as a case analysis on k mod 4."""
    _check_params(n, m)
    top = 4 * n + 3
    Z = AbelianGroupDescriptor(1)
    zero = AbelianGroupDescriptor(0)
    order = AbelianGroupDescriptor(0, (2 ** (m + 1),))
    klein = AbelianGroupDescriptor(0, (2, 2))

    def H(k):
        if k in (0, top):
            return Z
        if k % 4 == 1:
            return klein
        if k % 4 == 3:
            return order
        return zero

    def Hc(k):
        if k in (0, top):
            return Z
        if k % 4 == 0:
            return order
        if k % 4 == 2:
            return klein
        return zero

    def F2(k):
        if k % 4 in (1, 2) and 0 < k < top:
            return 2
        if k % 4 in (3, 0) and 0 <= k <= top:
            return 1
        raise AssertionError(f"degree {k} not covered by the closed form")

    degrees = range(top + 1)
    return {
        "homology": [H(k) for k in degrees],
        "cohomology": [Hc(k) for k in degrees],
        "cohomology_F2": [F2(k) for k in degrees],
    }


def table_mismatches(n: int, m: int) -> list[str]:
    """Degrees where the chain-level computation and the closed form differ."""
    got = homology_table(n, m)
    want = closed_form_table(n, m)
    out = []
    for key in got:
        for k, (a, b) in enumerate(zip(got[key], want[key])):
            if a != b:
                out.append(f"{key}[{k}]: computed {a}, closed form {b}")
    return out


def format_table(table: dict[str, list]) -> str:
    lines = [f"{'k':>3}  {'H_k(Z)':<16}{'H^k(Z)':<16}dim H^k(F2)"]
    for k, (h, c, f) in enumerate(zip(table["homology"], table["cohomology"], table["cohomology_F2"])):
        lines.append(f"{k:>3}  {str(h):<16}{str(c):<16}{f}")
    return "\n".join(lines)


def table_to_dict(table: dict[str, list]) -> dict:
    return {
        "homology": [h.to_dict() for h in table["homology"]],
        "cohomology": [c.to_dict() for c in table["cohomology"]],
        "cohomology_F2": list(table["cohomology_F2"]),
    }
