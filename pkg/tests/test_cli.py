import json

import pytest
from rich.console import Console

from toric_invariants import cli, corpus
from toric_invariants.cli import main
from toric_invariants.configuration import Configuration


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for name in Configuration.model_fields:
        monkeypatch.delenv(name.upper(), raising=False)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(cli, "console", Console(width=200))
    monkeypatch.setattr(cli, "error_console", Console(stderr=True, width=400))
    return monkeypatch


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_betti_json(capsys):
    code, data = run_json(capsys, "betti", "pentagon")
    assert code == 0
    assert data["method"] == "koszul"
    assert data["total_degrees"] == [1, 0, 0, 5, 5, 0, 0, 1]
    entries = {(e["i"], e["j"]): e["rank"] for e in data["table"]["entries"]}
    assert entries == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


def test_betti_cross_check(capsys):
    code, data = run_json(capsys, "betti", "polygon4", "--method", "both", "--jobs", "2")
    assert code == 0
    assert data["method"] == "both"
    assert data["total_degrees"] == [1, 0, 0, 2, 0, 0, 1]


def test_betti_text(capsys):
    assert main(["betti", "pentagon"]) == 0
    out = capsys.readouterr().out
    assert "Bigraded Betti numbers of pentagon" in " ".join(out.split())
    assert "(1, 0, 0, 5, 5, 0, 0, 1)" in out


def test_info_on_the_torus(capsys):
    code, data = run_json(capsys, "info", "torus9")
    assert code == 0
    assert data["f_vector"] == [9, 27, 18]
    assert data["h_vector"] == [1, 6, 12, -1]
    assert data["euler_characteristic"] == 0
    assert data["cohen_macaulay"]["cohen_macaulay"] is False
    assert data["dehn_sommerville"]["defect"] == [-2, 6, -6, 2]
    assert data["g_theorem"]["symmetric"] is False


def test_info_text(capsys):
    assert main(["info", "pentagon", "--text"]) == 0
    out = capsys.readouterr().out
    assert "Complex pentagon" in out
    assert "Gorenstein*" in out


def test_genus_with_a_given_vector(capsys):
    code, data = run_json(capsys, "genus", "cp2-alt", "--nu", "1,2")
    assert code == 0
    assert data["chi_y"]["coefficients"] == [0, 1]
    assert data["signature"] == 1
    assert data["todd"] == 0
    assert data["top_chern"] == -1


def test_genus_searches_for_a_vector(capsys):
    code, data = run_json(capsys, "genus", "cp2-standard")
    assert code == 0
    assert data["nu"] == [-1, 1]
    assert data["chi_y"]["coefficients"] == [1, -1, 1]


def test_genus_text(capsys):
    assert main(["genus", "cp2-standard", "--nu", "1,2"]) == 0
    assert "chi_y = 1 - y + y^2" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["genus", "pentagon"], "characteristic pair"),
        (["genus", "cp2-standard", "--nu", "1,1"], "orthogonal"),
        (["genus", "cp2-standard", "--nu", "a,b"], "comma-separated"),
        (["betti", "no-such-entry"], "no bundled corpus entry"),
        (["reproduce", "--filter", "nonsense"], "Unknown check groups"),
    ],
)
def test_input_errors_exit_with_two(capsys, argv, fragment):
    assert main(argv) == 2
    assert fragment in capsys.readouterr().err


def test_invalid_environment_configuration(capsys, clean_environment):
    clean_environment.setenv("BETTI_METHOD", "spectral")
    assert main(["betti", "pentagon"]) == 2
    assert "Invalid configuration" in capsys.readouterr().err


def test_corrupted_corpus_entry(capsys, clean_environment, tmp_path):
    directory = tmp_path / "corpus"
    directory.mkdir()
    (directory / "broken.json").write_text('{\n  "m": 3,\n  "facets": [[1, 2],\n}\n', encoding="utf-8")
    clean_environment.setattr(corpus, "corpus_dir", lambda: directory)
    assert main(["info", "broken"]) == 2
    assert "broken.json:4:1" in capsys.readouterr().err


def test_undecodable_document_exits_with_two(capsys, tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe")
    assert main(["info", str(path), "--json"]) == 2
    assert "not valid UTF-8" in capsys.readouterr().err


@pytest.mark.parametrize(
    "name, kind, expected",
    [
        ("three-points", "coord", [1, 0, 0, 3, 2]),
        ("three-points", "real", [1, 5]),
        ("three-points", "diag", [6, 0, 0]),
        ("origin-in-c3", "coord", [1, 0, 0, 0, 0, 1]),
        ("codim-two-in-c3", "diag", [6, 0, 0]),
    ],
)
def test_arrangement_complements(capsys, name, kind, expected):
    code, data = run_json(capsys, "arrangement", name, "--kind", kind)
    assert code == 0
    assert data["kind"] == kind
    assert data["betti"] == expected


def test_reproduce_selected_group(capsys):
    code, data = run_json(capsys, "reproduce", "--filter", "g-theorem")
    assert code == 0
    assert data["checks"]
    assert all(check["passed"] for check in data["checks"])
    assert {check["group"] for check in data["checks"]} == {"g-theorem"}


def test_corpus_listing(capsys):
    code, data = run_json(capsys, "corpus")
    assert code == 0
    kinds = {entry["name"]: entry["kind"] for entry in data}
    assert kinds["pentagon"] == "complex"
    assert kinds["cp2-standard"] == "pair"
    assert kinds["origin-in-c3"] == "arrangement"
