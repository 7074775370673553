from __future__ import annotations

import pytest

from tcq8.chains import AbelianGroupDescriptor as AG
from tcq8.errors import InvalidParameter
from tcq8.fujii import (
    build_fujii_complex,
    closed_form_table,
    format_table,
    fujii_cells,
    homology_table,
    table_mismatches,
    table_to_dict,
)


@pytest.mark.parametrize("n,m", [(0, 2), (1, 2), (1, 3), (2, 2), (0, 4), (2, 3)])
def test_tables_match_closed_form(n, m):
    assert table_mismatches(n, m) == []


def test_n0_m2_values():
    t = homology_table(0, 2)
    assert [str(h) for h in t["homology"]] == ["Z", "Z_2 + Z_2", "0", "Z"]
    assert [str(h) for h in t["cohomology"]] == ["Z", "0", "Z_2 + Z_2", "Z"]
    assert t["cohomology_F2"] == [1, 2, 2, 1]


def test_n1_m2_values():
    t = homology_table(1, 2)
    assert t["homology"][3] == AG(0, (8,))
    assert t["cohomology"][4] == AG(0, (8,))
    assert t["homology"][7] == AG(1)


def test_boundaries():
    cx = build_fujii_complex(1, 3)
    assert cx.boundary(2).toarray().tolist() == [[4, 2], [-2, 0]]
    assert cx.boundary(4).toarray().tolist() == [[16]]
    assert cx.boundary(1).nnz == cx.boundary(3).nnz == 0
    assert cx.cell_counts() == [1, 2, 2, 1] * 2
    assert [str(c) for c in fujii_cells(0)[2]] == ["e2_1", "e2_2"]


def test_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        build_fujii_complex(0, 1)
    with pytest.raises(InvalidParameter):
        closed_form_table(-1, 2)


def test_formatting():
    text = format_table(homology_table(0, 2))
    assert "Z_2 + Z_2" in text
    d = table_to_dict(homology_table(0, 2))
    assert d["homology"][1] == {"free_rank": 0, "torsion": [2, 2]}
