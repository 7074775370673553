from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from tcq8.coring import (
    LowerBounds,
    build_HX,
    certify_lower_bounds,
    check_confluence,
    cup_length,
    diagonal_restriction,
    left,
    poincare_pairing_failures,
    reduce_monomial,
    right,
    tensor_square,
    zero_divisor,
    zero_divisor_cup_length,
)
from tcq8.errors import InvalidParameter
from tcq8.fujii import homology_table


@pytest.fixture(scope="module")
def H():
    return build_HX()


@pytest.fixture(scope="module")
def sq(H):
    return tensor_square(H)


def e(A, label):
    return A.basis_element(label)


def test_basis_and_dims(H):
    assert H.labels == ["1", "x", "y", "x^2", "x*y", "x^2*y"]
    assert H.dims() == [1, 2, 2, 1]
    assert H.dims() == homology_table(0, 2)["cohomology_F2"]


def test_relations(H):
    x, y = e(H, "x"), e(H, "y")
    assert y * y == e(H, "x^2") + e(H, "x*y")
    assert x * (x * y) == e(H, "x^2*y")
    assert x ** 3 == H.zero() and y ** 3 == H.zero()
    assert x * y * y == e(H, "x^2*y")
    assert e(H, "x^2") * e(H, "x^2") == H.zero()
    assert str(y * y) == "x^2 + x*y"


def test_rewriting(H):
    assert reduce_monomial(0, 2) == {(2, 0), (1, 1)}
    assert reduce_monomial(0, 3) == frozenset()
    assert check_confluence(6) == []


def test_products_vanish_above_top(H, sq):
    for A in (H, sq):
        for i, j in product(range(A.dim), repeat=2):
            if A.degrees[i] + A.degrees[j] > A.top:
                assert not A.table[i, j].any()


def test_poincare_pairing(H):
    assert poincare_pairing_failures(H) == []


def test_tensor_square(H, sq):
    assert sq.dims() == [1, 4, 8, 10, 8, 4, 1]
    x, y = e(H, "x"), e(H, "y")
    assert left(x, sq) * right(y, sq) == e(sq, "x⊗y")
    assert sq.labels[sq.degree_indices(6)[0]] == "x^2*y⊗x^2*y"
    assert str(left(e(H, "x^2*y"), sq) * right(e(H, "x^2*y"), sq)) == "x^2*y⊗x^2*y"


def test_zero_divisors(H, sq):
    x, y = e(H, "x"), e(H, "y")
    xb, yb = zero_divisor(x, sq), zero_divisor(y, sq)
    assert not diagonal_restriction(xb) and not diagonal_restriction(yb)
    assert xb ** 2 == e(sq, "x^2⊗1") + e(sq, "1⊗x^2")
    assert xb ** 3 == e(sq, "x⊗x^2") + e(sq, "x^2⊗x")
    assert xb ** 4 == sq.zero()
    assert xb ** 3 * yb ** 2 == e(sq, "x^2*y⊗x^2") + e(sq, "x^2⊗x^2*y")
    with pytest.raises(InvalidParameter):
        zero_divisor(x + e(H, "x^2"), sq)


def test_cup_lengths(H, sq):
    assert cup_length(H) == 3
    assert zero_divisor_cup_length(sq) == 5


def test_certify_lower_bounds():
    lb = certify_lower_bounds()
    assert isinstance(lb, LowerBounds) and lb.passed
    assert (lb.cat_lb, lb.tc_lb) == (3, 5)
    assert lb.witnesses["x*x*y"] == "x^2*y"
    assert set(lb.witnesses["xbar^3*ybar^2"].split(" + ")) == {"x^2*y⊗x^2", "x^2⊗x^2*y"}


def test_element_views(H):
    v = e(H, "x") + e(H, "x^2*y")
    assert not v.is_homogeneous()
    parts = v.by_degree()
    assert parts[1].tolist() == [1, 0] and parts[3].tolist() == [1]
    with pytest.raises(InvalidParameter):
        H.element(np.zeros(3))
