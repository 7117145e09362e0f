import pytest

from toric_invariants.corpus import (
    corpus_complexes,
    corpus_names,
    corpus_spheres,
    load_corpus,
    random_complexes,
    resolve_document_path,
)
from toric_invariants.documents import (
    ArrangementDocument,
    BigradedBettiTable,
    ComplexDocument,
    GradedPolynomial,
    PairDocument,
    load_document,
    parse_document,
)
from toric_invariants.exceptions import DocumentError


##########################
# Graded polynomials and tables
##########################
def test_polynomial_arithmetic():
    square = GradedPolynomial.one_minus_power(2)
    assert square.coefficients == (1, -2, 1)
    assert str(square) == "1 - 2t^2 + t^4"
    assert (square * 3).coefficients == (3, -6, 3)
    assert (square - square).coefficients == ()
    assert str(square - square) == "0"
    assert square.coefficient(7) == 0
    assert square.evaluate(1) == 0


def test_trailing_zeros_are_trimmed():
    assert GradedPolynomial(coefficients=(0, 1, 0, 0), variable="y").coefficients == (0, 1)


def test_polynomials_in_different_variables_do_not_mix():
    y = GradedPolynomial(coefficients=(1, -1, 1), variable="y")
    assert str(y) == "1 - y + y^2"
    with pytest.raises(ValueError):
        y + GradedPolynomial.one_minus_power(1)


def test_table_layout():
    table = BigradedBettiTable.from_ranks(3, 2, {(1, 3): 1, (0, 0): 1, (2, 2): 0})
    assert table.as_dict() == {(0, 0): 1, (1, 3): 1}
    assert table.total_degrees() == (1, 0, 0, 0, 0, 1)
    assert table.real_degrees() == (1, 0, 1)
    columns, rows, cells = table.grid()
    assert columns == [-1, 0]
    assert rows == [6, 4, 2, 0]
    assert cells == [[1, 0], [0, 0], [0, 0], [0, 1]]


def test_table_mismatches():
    left = BigradedBettiTable.from_ranks(3, 2, {(0, 0): 1, (1, 2): 3})
    right = BigradedBettiTable.from_ranks(3, 2, {(0, 0): 1, (2, 3): 2})
    assert left.mismatches(right) == [(1, 2, 3, 0), (2, 3, 0, 2)]
    assert left.mismatches(left) == []


##########################
# Documents
##########################
def test_schema_is_picked_from_keys():
    assert isinstance(parse_document({"m": 2, "facets": [[1], [2]]}), ComplexDocument)
    assert isinstance(parse_document({"m": 2, "generators": [[1, 2]]}), ArrangementDocument)
    pair = parse_document({"complex": {"m": 3, "facets": [[1, 2], [2, 3], [1, 3]]}, "lambda": [[1, 0, -1], [0, 1, -1]]})
    assert isinstance(pair, PairDocument)
    assert pair.lambda_ == [[1, 0, -1], [0, 1, -1]]


@pytest.mark.parametrize(
    "data, fragment",
    [
        ([1, 2], "JSON object"),
        ({"name": "nothing"}, "Unrecognised document"),
        ({"m": 3, "facets": [[1, 4]]}, "ComplexDocument"),
        ({"m": -1, "facets": []}, "ComplexDocument field 'm'"),
        ({"m": 3, "generators": [[0]]}, "ArrangementDocument"),
    ],
)
def test_invalid_documents(data, fragment):
    with pytest.raises(DocumentError) as excinfo:
        parse_document(data, path="inline.json")
    assert fragment in str(excinfo.value)
    assert str(excinfo.value).startswith("inline.json: ")


def test_json_errors_report_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "m": 3,\n  "facets": [[1, 2],\n}\n', encoding="utf-8")
    with pytest.raises(DocumentError) as excinfo:
        load_document(path)
    assert excinfo.value.line == 4
    assert excinfo.value.column == 1
    assert str(excinfo.value).startswith(f"{path}:4:1: ")


def test_missing_file_is_a_document_error(tmp_path):
    with pytest.raises(DocumentError):
        load_document(tmp_path / "absent.json")


def test_undecodable_file_is_a_document_error(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe")
    with pytest.raises(DocumentError) as excinfo:
        load_document(path)
    assert "not valid UTF-8" in str(excinfo.value)


##########################
# Corpus
##########################
def test_corpus_names(corpus_directory):
    names = corpus_names(corpus_directory)
    for expected in ("pentagon", "torus9", "cp2-standard", "three-points", "origin-in-c3"):
        assert expected in names


def test_resolve_prefers_existing_files(tmp_path, corpus_directory):
    local = tmp_path / "pentagon.json"
    local.write_text('{"m": 2, "facets": [[1], [2]]}', encoding="utf-8")
    assert resolve_document_path(local, corpus_directory) == local
    assert resolve_document_path("pentagon", corpus_directory) == corpus_directory / "pentagon.json"
    assert load_corpus("pentagon", corpus_directory).m == 5


def test_unknown_corpus_entry(corpus_directory):
    with pytest.raises(DocumentError) as excinfo:
        resolve_document_path("no-such-entry", corpus_directory)
    assert "Bundled entries" in str(excinfo.value)


def test_corpus_complexes_and_spheres(corpus_directory):
    complexes = corpus_complexes(corpus_directory)
    assert complexes["torus9"].f_vector == (9, 27, 18)
    assert complexes["cp2-standard"].m == 3
    spheres = corpus_spheres(corpus_directory)
    assert "pentagon" in spheres
    assert "torus9" not in spheres
    assert "cp2-standard" not in spheres
    assert "origin-in-c3" not in spheres


def test_random_complexes_are_reproducible():
    first = random_complexes(5, seed=7)
    assert first == random_complexes(5, seed=7)
    assert len(first) == 5
    assert all(2 <= K.m <= 7 for K in first)
    assert all(K.verify_closure() for K in first)
