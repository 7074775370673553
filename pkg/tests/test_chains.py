from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from tcq8.chains import (
    AbelianGroupDescriptor,
    ChainComplex,
    Cochain,
    betti_F2,
    coboundary,
    coboundary_witness,
    cohomology_Z,
    homology_Z,
    is_cocycle,
    read_coordinate,
    smith_normal_form,
    write_coordinate,
)
from tcq8.errors import ConstructionRejected, InvalidParameter

small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_matches_sympy(rows):
    diag, rank = smith_normal_form(rows)
    oracle = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]
    assert diag == oracle
    assert rank == Matrix(rows).rank()
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))


def test_snf_examples():
    assert smith_normal_form([[2, 4], [4, 8]]) == ([2], 1)
    assert smith_normal_form([[0, 3, 0], [2, 0, 0]]) == ([1, 6], 2)
    assert smith_normal_form([[0, 0]]) == ([], 0)


def test_descriptor():
    assert str(AbelianGroupDescriptor(0, (2, 2))) == "Z_2 + Z_2"
    assert str(AbelianGroupDescriptor(1)) == "Z"
    assert str(AbelianGroupDescriptor(0)) == "0"
    assert AbelianGroupDescriptor(0).is_zero
    with pytest.raises(InvalidParameter):
        AbelianGroupDescriptor(0, (2, 3))
    with pytest.raises(InvalidParameter):
        AbelianGroupDescriptor(0, (1,))


def rp2():
    # one cell in each degree, d2 = 2
    return ChainComplex([["v"], ["e"], ["f"]], {1: [[0]], 2: [[2]]}, name="RP2")


def test_rp2_homology():
    cx = rp2()
    assert [str(homology_Z(cx, k)) for k in range(3)] == ["Z", "Z_2", "0"]
    assert [str(cohomology_Z(cx, k)) for k in range(3)] == ["Z", "0", "Z_2"]
    assert [betti_F2(cx, k) for k in range(3)] == [1, 1, 1]
    assert cx.euler_characteristic() == 1


def test_circle():
    cx = ChainComplex([["a", "b"], ["p", "q"]], {1: [[-1, 1], [1, -1]]})
    assert str(homology_Z(cx, 0)) == "Z"
    assert str(homology_Z(cx, 1)) == "Z"
    assert betti_F2(cx, 1) == 1


def test_d_squared_rejected():
    with pytest.raises(ConstructionRejected) as exc:
        ChainComplex([["v"], ["e"], ["f"]], {1: [[1]], 2: [[1]]})
    assert exc.value.cell == (2, "f")
    # mod 2 the same matrices with d1 d2 = 2 are fine
    ChainComplex([["v"], ["e"], ["f"]], {1: [[1]], 2: [[2]]}, modulus=2)


def test_shape_mismatch():
    with pytest.raises(ConstructionRejected):
        ChainComplex([["v"], ["e"]], {1: [[0, 0]]})


def test_mod2_complex_has_no_integral_homology():
    cx = ChainComplex([["v"], ["e"]], {1: [[0]]}, modulus=2)
    with pytest.raises(InvalidParameter):
        homology_Z(cx, 0)


def test_range_check():
    with pytest.raises(InvalidParameter):
        homology_Z(rp2(), 5)


def test_cochains_on_rp2():
    cx = rp2()
    a = Cochain(cx, 1, [0])
    assert is_cocycle(a)
    # delta of the 1-cochain is 2 * f, zero mod 2; the class is not a coboundary
    w, out = coboundary_witness(a, refute=True)
    assert w is None and out.refutation is not None
    assert a + a == Cochain(cx, 1)
    assert a(0) == 1 and a("e") == 1
    assert a.labels() == ["e"]
    assert not coboundary(Cochain(cx, 0, [0]))
    with pytest.raises(InvalidParameter):
        Cochain(cx, 1, [3])


def test_coordinate_round_trip():
    import scipy.sparse as sp

    M = sp.csc_array(np.array([[0, 2, 0], [-1, 0, 4]]))
    buf = io.StringIO()
    write_coordinate(M, buf)
    assert buf.getvalue().splitlines()[0] == "2 3 3"
    buf.seek(0)
    back = read_coordinate(buf)
    assert (back.toarray() == M.toarray()).all()
