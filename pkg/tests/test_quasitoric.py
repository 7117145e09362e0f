import pytest

from toric_invariants.corpus import load_corpus
from toric_invariants.exact_linalg import IntegerMatrix
from toric_invariants.exceptions import (
    CharacteristicMatrixError,
    DimensionError,
    NonGenericVectorError,
    NotDirectSummandError,
)
from toric_invariants.face_enumeration import h_vector, toric_signature
from toric_invariants.quasitoric import (
    characteristic_kernel,
    check_generic,
    chi_y_genus,
    chromatic_lower_bound,
    diagonal_subgroup,
    find_generic_vector,
    genus_report,
    graded_quotient_dims,
    greedy_colouring,
    min_missing_face,
    pair_from_document,
    projective_space_pair,
    quasitoric_betti,
    signature,
    subtorus_free,
    todd,
    top_chern,
    torus_rank_bounds,
    validate_pair,
    vertex_genus_data,
)
from toric_invariants.simplicial import generator_boundary_simplex, generator_cyclic_sphere, generator_simplex


def load_pair(name):
    return pair_from_document(load_corpus(name))


@pytest.fixture
def cp2():
    return load_pair("cp2-standard")


@pytest.fixture
def cp2_alt():
    return load_pair("cp2-alt")


def test_vertex_signs(cp2, cp2_alt):
    assert [data.sigma for data in vertex_genus_data(cp2)] == [1, 1, 1]
    assert sorted(data.sigma for data in vertex_genus_data(cp2_alt)) == [-1, -1, 1]
    assert all(data.index is None for data in vertex_genus_data(cp2))


def test_vertex_indices(cp2):
    vertices = vertex_genus_data(cp2, nu=(1, 2))
    assert sorted(data.index for data in vertices) == [0, 1, 2]
    first = next(data for data in vertices if data.facet == (1, 2))
    assert first.edge_matrix == [[1, 0], [0, 1]]
    assert first.index == 0


def test_chi_y_of_projective_plane(cp2, cp2_alt):
    assert chi_y_genus(cp2, (1, 2)).coefficients == (1, -1, 1)
    assert str(chi_y_genus(cp2, (1, 2))) == "1 - y + y^2"
    assert chi_y_genus(cp2_alt, (1, 2)).coefficients == (0, 1)
    assert signature(cp2, (1, 2)) == 1
    assert todd(cp2, (1, 2)) == 1
    assert top_chern(cp2) == 3
    assert top_chern(cp2_alt) == -1


@pytest.mark.parametrize("nu", [(1, 2), (2, -3), (3, 1), (-1, 1)])
def test_chi_y_does_not_depend_on_the_generic_vector(cp2, nu):
    assert chi_y_genus(cp2, nu) == chi_y_genus(cp2, (1, 2))


def test_column_signs_change_the_omniorientation(cp2, cp2_alt):
    flipped = cp2.with_column_signs([3])
    assert flipped.lam == cp2_alt.lam
    assert chi_y_genus(flipped, (1, 2)) == chi_y_genus(cp2_alt, (1, 2))


def test_reversed_orientation_negates_the_genus(cp2):
    reversed_pair = cp2.reversed()
    assert chi_y_genus(reversed_pair, (1, 2)).coefficients == (-1, 1, -1)
    assert top_chern(reversed_pair) == -3


def test_generic_vector_search(cp2):
    assert find_generic_vector(cp2) == (-1, 1)
    with pytest.raises(NonGenericVectorError):
        check_generic(cp2, (1, 1))
    with pytest.raises(DimensionError):
        check_generic(cp2, (1, 2, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projective_spaces(n):
    pair = projective_space_pair(n)
    report = genus_report(pair)
    assert report.chi_y.coefficients == tuple((-1) ** k for k in range(n + 1))
    assert report.todd == 1
    assert report.top_chern == n + 1
    assert report.signature == (1 if n % 2 == 0 else 0)


@pytest.mark.parametrize("name, facets", [("cp1xcp1", 4), ("pentagon-pair", 5)])
def test_toric_surfaces(name, facets):
    pair = load_pair(name)
    report = genus_report(pair)
    assert [data.sigma for data in report.vertices] == [1] * facets
    assert report.top_chern == facets
    assert report.todd == 1
    assert report.signature == toric_signature(h_vector(pair.sphere.base))


def test_validate_pair_rejects_bad_minors():
    triangle = generator_boundary_simplex(2)
    with pytest.raises(CharacteristicMatrixError) as excinfo:
        validate_pair(triangle, IntegerMatrix.from_rows([[1, 0, 1], [0, 1, 2]]))
    assert excinfo.value.facet == (1, 3)
    assert excinfo.value.determinant == 2
    with pytest.raises(DimensionError):
        validate_pair(triangle, IntegerMatrix.from_rows([[1, 0, -1]]))


@pytest.mark.parametrize("name", ["cp2-standard", "cp1xcp1", "pentagon-pair", "cp3"])
def test_cohomology_dimensions_follow_the_h_vector(name):
    pair = load_pair(name)
    assert graded_quotient_dims(pair) == quasitoric_betti(pair.sphere.base)


def test_graded_quotient_vanishes_past_the_top(cp2):
    assert graded_quotient_dims(cp2, up_to=4) == (1, 1, 1, 0, 0)


def test_diagonal_subtorus_acts_freely_on_spheres():
    triangle = generator_boundary_simplex(2)
    assert subtorus_free(triangle, diagonal_subgroup(3)).free
    verdict = subtorus_free(triangle, IntegerMatrix.from_rows([[1], [0], [0]]))
    assert not verdict.free
    assert verdict.failing_facet == (1, 2)
    assert verdict.invariants == ()
    assert not subtorus_free(triangle, IntegerMatrix.identity(3)).free
    with pytest.raises(NotDirectSummandError):
        subtorus_free(triangle, IntegerMatrix.from_rows([[2], [2], [2]]))
    with pytest.raises(DimensionError):
        subtorus_free(triangle, diagonal_subgroup(4))


@pytest.mark.parametrize("name", ["cp2-standard", "cp1xcp1", "pentagon-pair"])
def test_characteristic_kernel_acts_freely(name):
    pair = load_pair(name)
    kernel = characteristic_kernel(pair)
    assert kernel.shape == (pair.m, pair.m - pair.n)
    assert not any((pair.lam @ kernel).entries)
    assert subtorus_free(pair, kernel).free


def test_kernel_of_projective_plane(cp2):
    assert characteristic_kernel(cp2).to_rows() == [[1], [1], [1]]


def test_torus_rank_bounds(pentagon):
    assert chromatic_lower_bound(pentagon) == (2, 3)
    bounds = torus_rank_bounds(pentagon)
    assert bounds.colouring_lower == 2
    assert bounds.upper == 3
    assert bounds.diagonal_lower == 1


def test_greedy_colouring_is_proper(pentagon):
    colours = greedy_colouring(pentagon)
    assert colours == {1: 0, 2: 1, 3: 0, 4: 1, 5: 2}
    assert all(colours[u] != colours[v] for u, v in pentagon.faces(2))
    neighbourly = generator_cyclic_sphere(4, 7)
    assert len(set(greedy_colouring(neighbourly).values())) == 7
    assert chromatic_lower_bound(neighbourly) == (0, 7)


def test_min_missing_face(pentagon):
    assert min_missing_face(pentagon) == 2
    assert min_missing_face(generator_boundary_simplex(3)) == 4
    assert min_missing_face(generator_simplex(3)) == 5


def test_min_missing_face_of_a_neighbourly_sphere():
    assert min_missing_face(generator_cyclic_sphere(4, 8)) == 3
