from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcq8.barres import (
    BarCells,
    bar_betti_numbers,
    bockstein,
    cochain_x,
    cochain_y,
    cohomology_rank_of,
    cup,
    cup_all,
    format_bar_cell,
    is_coboundary,
    quadratic_relation_witness,
    ring_relation_witnesses,
)
from tcq8.chains import Cochain, coboundary
from tcq8.errors import InvalidInput, InvalidParameter


def column(bar, d, cell):
    j = bar.cells[d].index(cell)
    M = bar.boundary(d)
    col = M[:, [j]].toarray().ravel()
    return {format_bar_cell(bar.cells[d - 1][i]): int(col[i]) for i in np.nonzero(col)[0]}


def test_cell_counts(bar7):
    assert bar7.cell_counts() == [7 ** d for d in range(8)]
    assert format_bar_cell(bar7.cells[2][0]) == "[y|y]"
    cell = bar7.parse_cell("[x|x^3*y]")
    assert format_bar_cell(bar7.cells[2][bar7.cells[2].index(cell)]) == "[x|x^3*y]"


def test_face_examples(bar4, Q8):
    x, y, xy = Q8.x, Q8.y, Q8.word("xy")
    assert column(bar4, 2, (x, y)) == {"[y]": 1, "[x*y]": -1, "[x]": 1}
    # [x|x^3] has the degenerate middle face x x^3 = e
    assert column(bar4, 2, (x, Q8.word("xxx"))) == {"[x^3]": 1, "[x]": 1}
    # [x|x] : d = [x] - [x^2] + [x]
    assert column(bar4, 2, (x, x)) == {"[x]": 2, "[x^2]": -1}
    assert column(bar4, 3, (x, y, xy)) == {"[y|x*y]": 1, "[x*y|x*y]": -1, "[x|x]": 1, "[x|y]": -1}


def test_mod2_ranks(bar7):
    assert [bar7.rank_mod2(k) for k in range(1, 8)] == [0, 5, 42, 300, 2100, 14705, 102942]


def test_betti_numbers(bar7):
    assert bar_betti_numbers(bar7, 6) == [1, 2, 2, 1, 1, 2, 2]


def test_cells_reject_identity(Q8):
    cells = BarCells(Q8, 2)
    with pytest.raises(InvalidParameter):
        cells.index((Q8.identity, Q8.x))


def random_cochain(bar, d, seed):
    rng = np.random.default_rng(seed)
    return Cochain.from_vector(bar, d, rng.integers(0, 2, bar.n_cells(d)))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2), st.integers(1, 1), st.integers(0, 10**6))
def test_leibniz(p, q, seed):
    bar = _bar4()
    a = random_cochain(bar, p, seed)
    b = random_cochain(bar, q, seed + 1)
    assert coboundary(cup(a, b)) == cup(coboundary(a), b) + cup(a, coboundary(b))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cup_associative(seed):
    bar = _bar4()
    a, b, c = (random_cochain(bar, 1, seed + i) for i in range(3))
    assert cup(cup(a, b), c) == cup(a, cup(b, c))


_BAR = {}


def _bar4():
    if "b" not in _BAR:
        from tcq8.barres import BarComplex
        from tcq8.fingroup import quaternion_group

        _BAR["b"] = BarComplex(quaternion_group(), 4)
    return _BAR["b"]


def test_cup_degree_limit(bar4):
    x = cochain_x(bar4)
    with pytest.raises(InvalidParameter):
        cup_all(x, x, x, x, x)


def test_ring_witnesses(bar4):
    facts = ring_relation_witnesses(bar4)
    assert facts["passed"]
    assert facts["v_support"] == ["[y]", "[x]", "[x*y]", "[x^2]"]
    assert facts["dv_equals_quadratic"]
    assert facts["x3_coboundary"] and not facts["z_coboundary"]
    assert facts["bockstein_class_rank"] == 2
    assert facts["h2_dimension"] == 2 and facts["h3_dimension"] == 1


def test_v_supports(bar4, Q8):
    v = quadratic_relation_witness(bar4)
    x, y = cochain_x(bar4), cochain_y(bar4)
    assert coboundary(v) == cup(x, x) + cup(x, y) + cup(y, y)
    assert v(bar4.cells[1].index((Q8.x,))) == 1
    assert len(cochain_x(bar4)) == 4 and len(cochain_y(bar4)) == 4


def test_x_cubed_witness(bar4):
    x = cochain_x(bar4)
    w = is_coboundary(cup_all(x, x, x))
    assert w is not None and coboundary(w) == cup_all(x, x, x)
    y = cochain_y(bar4)
    assert is_coboundary(cup_all(x, x, y)) is None


def test_bockstein(bar4, Q8):
    x, y = cochain_x(bar4), cochain_y(bar4)
    bx, by = bockstein(x), bockstein(y)
    assert not coboundary(bx) and not coboundary(by)
    assert cohomology_rank_of([bx, by]) == 2
    # the 1-cochain on {x} alone is not a cocycle
    with pytest.raises(InvalidInput):
        bockstein(Cochain(bar4, 1, [bar4.cells[1].index((Q8.x,))]))
