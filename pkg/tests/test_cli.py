from __future__ import annotations

import json

import pytest

from tcq8 import gf2
from tcq8.chains import read_coordinate
from tcq8.cli import main


def test_homology(capsys):
    assert main(["homology", "--n", "0", "--m", "2"]) == 0
    out = capsys.readouterr().out
    assert "Z_2 + Z_2" in out
    assert main(["homology", "--n", "1", "--m", "2", "--coeff", "F2"]) == 0
    assert "dim H^k(F2) = 2" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["homology", "--m", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    assert main([]) == 2
    assert main(["export-matrix", "--target", "fujii", "--dim", "9"]) == 2


def test_lower_bound(capsys):
    assert main(["lower-bound"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["cat_lower_bound"] == 3 and data["tc_lower_bound"] == 5


def test_export_matrix(tmp_path, capsys):
    path = tmp_path / "d2.coo"
    assert main(["export-matrix", "--target", "bar", "--dim", "2", "--out", str(path)]) == 0
    with open(path) as fh:
        M = read_coordinate(fh)
    assert M.shape == (7, 49)
    path = tmp_path / "t4.coo"
    assert main(["export-matrix", "--target", "twisted", "--dim", "4", "--out", str(path)]) == 0
    with open(path) as fh:
        assert fh.readline().split()[:2] == ["456", "3192"]


def test_skip_solve_is_partial(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["verify-all", "--skip-solve", "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["partial"] is True
    assert cert["stages"]["main_solve_cutoff_5"]["skipped"]
    assert cert["logic_chain"]["conclusion"] == "undetermined"
    assert main(["--revalidate", str(out)]) == 0


def test_revalidate_detects_tampering(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["verify-all", "--skip-solve", "--out", str(out)])
    cert = json.loads(out.read_text())
    cert["stages"]["ring_relations"]["data"]["v_support"] = ["[y]", "[x]"]
    out.write_text(json.dumps(cert))
    assert main(["--revalidate", str(out)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_revalidate_missing_file(tmp_path):
    assert main(["--revalidate", str(tmp_path / "nope.json")]) == 2
