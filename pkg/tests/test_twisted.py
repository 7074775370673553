from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from tcq8 import gf2
from tcq8 import twisted as tw
from tcq8.barres import BarComplex, format_bar_cell
from tcq8.chains import Cochain, coboundary
from tcq8.errors import ConstructionRejected, InvalidParameter


def test_variant_space():
    variants = tw.rule_variants()
    assert len(variants) == 64
    assert variants[0].label == "verbatim" and variants[0].edits == ()
    assert len({(r.for_cell("e3"), r.for_cell("e2_2"), r.convention) for r in variants}) == 64


def test_verbatim_base_projection():
    rule = tw.printed_rule()
    proj = rule.base_projection()
    assert proj["e3"] == {"e2_1": 1, "e2_2": 1}
    assert proj["e1_1"] == {} and proj["e1_2"] == {} and proj["e2_1"] == {} and proj["e2_2"] == {}
    assert not rule.projects_to_zero()


def test_resolution(resolution):
    assert not resolution.verbatim_passed
    assert not resolution.checks[0].base_projection_zero
    acc = resolution.accepted
    assert acc.projects_to_zero()
    assert acc.edits == ("e3 summand 3 -> e2_2",)
    assert resolution.survivors_identical
    assert len(resolution.survivors) == 4
    assert all(c.passed == (c.rule in resolution.survivors) for c in resolution.checks)


def test_non_conjugation_variant_fails_d_squared():
    rule = tw.printed_rule(("e2_1", "e2_2", "e2_2", "e2_1"), tw.PROOF_E22_CONJ)
    with pytest.raises(ConstructionRejected) as exc:
        tw.TwistedComplex(rule, 2, 5)
    assert exc.value.cell[0] == 4 and str(exc.value.cell[1]) == "[e2_2|y,y]"


def test_cell_counts(twisted5):
    assert twisted5.cell_counts() == [1, 9, 65, 456, 3192, 22344, 38759, 36015]
    assert twisted5.n_cells(4) == 7 + 98 + 686 + 2401


def test_cell_counts_cutoff6(resolution):
    cx = tw.TwistedComplex(resolution.accepted, 6, 7, validate=False)
    assert cx.cell_counts()[6:] == [156408, 271313]


def test_cell_labels(twisted5):
    cell = twisted5.parse_cell("[e2_1|x,x^3*y]")
    i = twisted5.cells[4].index(cell)
    assert twisted5.cell_str(4, i) == "[e2_1|x,x^3*y]"
    assert twisted5.cell_str(0, 0) == "[e0|]"
    assert str(twisted5.cells[3][0]) == "[e0|y,y,y]"
    with pytest.raises(InvalidParameter):
        twisted5.parse_cell("e2_1|x")


@pytest.mark.parametrize("dim", [1, 2, 3, 4, 5, 6, 7])
def test_matrix_agrees_with_cellwise_boundary(twisted5, Q8, dim):
    rng = np.random.default_rng(dim)
    M = twisted5.boundary_mod2(dim)
    lower = twisted5.cells[dim - 1]
    n = twisted5.n_cells(dim)
    for j in rng.choice(n, size=min(n, 60), replace=False):
        cell = twisted5.cells[dim][int(j)]
        expect = sorted(lower.index(c) for c in tw.boundary_of_cell(twisted5.rule, Q8, cell))
        assert M.column(int(j)).tolist() == expect


def test_conjugation_is_a_chain_map(Q8):
    bar = BarComplex(Q8, 4)
    rng = np.random.default_rng(3)
    for d in range(1, 5):
        M = bar.boundary(d).tocsc()
        for j in rng.choice(bar.n_cells(d), size=min(bar.n_cells(d), 30), replace=False):
            w = bar.cells[d][int(j)]
            for g in Q8.elements:
                k = bar.cells[d].index(Q8.conj_tuple(w, g))
                faces = M[:, [int(j)]].toarray().ravel()
                conj_faces = np.zeros_like(faces)
                for i in np.nonzero(faces)[0]:
                    conj_faces[bar.cells[d - 1].index(Q8.conj_tuple(bar.cells[d - 1][i], g))] = faces[i]
                assert np.array_equal(M[:, [k]].toarray().ravel(), conj_faces)


def test_target_cocycle(twisted5, Q8):
    w = tw.target_cocycle_w(twisted5)
    assert len(w) == 64
    assert w(twisted5.parse_cell("[e3|x,x,y]")) == 1
    assert w(twisted5.parse_cell("[e3|x,y,y]")) == 0
    e21 = twisted5.block_table[6][[tw.BASE_NAMES[s] for s, _, _ in twisted5.block_table[6]].index("e2_1")]
    assert not np.any((w.support >= e21[2]) & (w.support < e21[2] + 7 ** e21[1]))
    assert not coboundary(w)


def test_target_needs_degree7(resolution):
    cx = tw.TwistedComplex(resolution.accepted, 5, 6)
    with pytest.raises(InvalidParameter):
        tw.target_cocycle_w(cx)


def test_main_solve(twisted5, main5):
    assert main5.solvable
    assert main5.verified
    assert main5.n_equations == 38759 and main5.n_unknowns == 22344
    assert coboundary(main5.u) == main5.w


def test_direct_verification_catches_errors(twisted5, main5):
    broken = main5.u + Cochain(twisted5, 5, [int(main5.u.support[0])])
    assert not tw.verify_coboundary_directly(twisted5, broken, main5.w)


def test_parallel_verification_agrees(twisted5, main5, monkeypatch):
    monkeypatch.setenv(gf2.WORKERS_ENV, "2")
    assert tw.verify_coboundary_directly(twisted5, main5.u, main5.w)


def test_zero_rhs_accepted(twisted5):
    A = twisted5.coboundary_mod2(5)
    out = gf2.solve(A, np.zeros(A.rows, dtype=np.uint8))
    assert out.solvable and not out.solution.any()


def test_eqA_shape(resolution):
    cx = tw.TwistedComplex(resolution.accepted, 5, 4)
    sysA = tw.eqA_system(cx)
    assert sysA.augmented.rows == 3192
    assert sysA.augmented.cols - 1 <= 456
    rhs = [cx.cell_str(4, int(i)) for i in np.nonzero(sysA.rhs)[0]]
    assert rhs == ["[e3|x]", "[e3|x*y]", "[e3|x^3]", "[e3|x^3*y]"]


def test_eqA_reflects_rule_validity(resolution):
    # valid rules: the x-pullback class is nonzero, with a checked refuting 4-cycle
    out = tw.solve_eqA(tw.TwistedComplex(resolution.accepted, 5, 4))
    assert out["status"] == "inconsistent" and out["refutation_verified"]
    # the verbatim rule, which fails the gates, makes the system solvable
    out = tw.solve_eqA(tw.TwistedComplex(tw.printed_rule(), 5, 4, validate=False))
    assert out["status"] == "solvable" and out["witness_verified"]


def test_rule_round_trip_through_dict(resolution):
    from tcq8.certificate import _rule_from_dict

    rule = resolution.accepted
    assert _rule_from_dict(rule.to_dict()) == rule
