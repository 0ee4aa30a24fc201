import json
from pathlib import Path

import pytest

import ribbonkh
from conftest import TREFOIL3
from ribbonkh.cli import RunConfig, UsageError, main

DATA = Path(ribbonkh.__file__).parent / "data"
SIGMA_FILE = str(DATA / "trefoil4.sigma")
PD_FILE = str(DATA / "trefoil4.pd")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_from_permutation_file(capsys):
    code, out, _ = run(capsys, "info", SIGMA_FILE)
    assert code == 0
    assert "V=1 E=4 F=3 g=1" in out
    assert "sigma2 = (1 4)(2 8 3 5)(6 7)" in out
    assert "quasi-trees: 5" in out


def test_info_json_is_stable(capsys):
    _, first, _ = run(capsys, "info", PD_FILE, "--format", "json")
    _, second, _ = run(capsys, "info", PD_FILE, "--format", "json")
    assert first == second
    rec = json.loads(first)
    assert rec["writhe"] == -4
    assert rec["tait"] == {"V": 3, "E+": 2, "E-": 2}
    assert rec["spanning_trees"] == rec["quasitrees"] == 5


def test_inline_pd_and_tsv(capsys):
    code, out, _ = run(capsys, "info", TREFOIL3, "--format", "tsv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.split("\t")[0] == "name"
    assert row.split("\t")[1] == "3"


def test_gradings_text_and_json(capsys):
    code, out, _ = run(capsys, "gradings", PD_FILE)
    assert code == 0
    assert "thickness 2" in out
    _, js, _ = run(capsys, "gradings", PD_FILE, "--format", "json")
    rec = json.loads(js)
    assert {(t["u"], t["v"]) for t in rec["table"]} == {(-1, -1), (0, -1), (1, -1), (2, -1), (2, 0)}
    assert all("i" in r and "j" in r for r in rec["rows"])


def test_quasitrees_tsv_pairs_trees(capsys):
    code, out, _ = run(capsys, "quasitrees", PD_FILE, "--format", "tsv")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
    assert len(rows) == 5
    assert sorted(r[2] for r in rows) == sorted(["LLd'd'", "lDD'd'", "LdD'd'", "lDl'D'", "Ldl'D'"])


def test_quasitrees_from_sigma_has_no_tree_column(capsys):
    code, out, _ = run(capsys, "quasitrees", SIGMA_FILE, "--format", "json")
    assert code == 0
    rows = json.loads(out)["quasitrees"]
    assert {r["word"] for r in rows} == {"LdDd", "LdlD", "lDDd", "lDlD", "lldd"}
    assert all("tree" not in r for r in rows)


def test_jones_pass(capsys):
    code, out, _ = run(capsys, "jones", TREFOIL3)
    assert code == 0
    assert "PASS" in out


def test_jones_wrong_calibration_fails(capsys):
    code, out, _ = run(capsys, "jones", TREFOIL3, "--shift", "0")
    assert code == 1
    assert "FAIL" in out


def test_jones_needs_pd(capsys):
    code, _, err = run(capsys, "jones", SIGMA_FILE)
    assert code == 2
    assert "PD" in err


def test_link_rejected_for_jones(capsys):
    code, _, err = run(capsys, "jones", "X(4,1,3,2) X(2,3,1,4)")
    assert code == 2
    assert "knot" in err


def test_chords_svg(capsys):
    code, out, _ = run(capsys, "chords", SIGMA_FILE, "--index", "2")
    assert code == 0
    assert out.startswith("<?xml")
    assert out.count('class="mark"') == 8
    assert out.count('class="chord"') == 4


def test_chords_grid_and_out_dir(capsys, tmp_path):
    _, grid, _ = run(capsys, "chords", SIGMA_FILE)
    assert grid.count('class="mark"') == 40
    code, out, _ = run(capsys, "chords", SIGMA_FILE, "--out", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.glob("*.svg"))) == 5


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", PD_FILE)
    assert code == 0
    assert "FAIL" not in out
    assert "constant=2" in out


def test_corrupted_sigma2_fails_verify(capsys, tmp_path):
    bad = tmp_path / "bad.sigma"
    bad.write_text("sigma0 = (15724863)\nsigma2 = (14)(2853)(67)\n")
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "(2 8 5 3)" in out


def test_corpus_file(capsys, tmp_path):
    f = tmp_path / "small.tsv"
    f.write_text("3_1\t" + TREFOIL3 + "\n4_1\tX(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n")
    code, out, _ = run(capsys, "corpus", str(f))
    assert code == 0
    assert "2/2 diagrams passed" in out


def test_max_crossings_guard(capsys):
    code, _, err = run(capsys, "info", TREFOIL3, "--max-crossings", "2")
    assert code == 2
    assert "exceeds" in err
    with pytest.raises(UsageError):
        RunConfig("info", TREFOIL3, max_crossings=21)


def test_malformed_input(capsys):
    code, _, err = run(capsys, "info", "X(1,2,3)")
    assert code == 2
    assert err.startswith("error:")


def test_corpus_env_variable(capsys, tmp_path, monkeypatch):
    f = tmp_path / "env.tsv"
    f.write_text("3_1\t" + TREFOIL3 + "\n")
    monkeypatch.setenv("RIBBONKH_CORPUS", str(f))
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert "1/1 diagrams passed" in out
