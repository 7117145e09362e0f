import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_invariants.documents import GradedPolynomial
from toric_invariants.exceptions import DimensionError, InputError
from toric_invariants.face_enumeration import (
    binomial_upper,
    charney_davis_quantity,
    chi_poly_rel,
    chi_poly_wk,
    chi_poly_wk_from_cells,
    chi_poly_zk,
    connected_sum_h,
    cubical_counts,
    cubical_counts_polytope,
    dehn_sommerville_defect,
    f_to_h,
    face_ring_poincare_series,
    g_theorem_verdict,
    g_vector,
    h_to_f,
    h_vector,
    is_m_vector,
    neighbourliness,
    product_h,
    toric_signature,
    ubt_check,
)
from toric_invariants.simplicial import (
    build_complex,
    generator_boundary_simplex,
    generator_cyclic_sphere,
    generator_polygon,
    generator_simplex,
    join,
    suspension,
)

TORUS_H = (1, 6, 12, -1)


def test_h_vectors_of_small_spheres(pentagon):
    assert h_vector(pentagon) == (1, 3, 1)
    assert h_vector(generator_boundary_simplex(3)) == (1, 1, 1, 1)
    assert h_vector(generator_cyclic_sphere(4, 7)) == (1, 3, 6, 3, 1)
    assert f_to_h((9, 27, 18), 3) == TORUS_H


def test_h_to_f_inverts_f_to_h():
    assert h_to_f(TORUS_H) == (9, 27, 18)
    with pytest.raises(DimensionError):
        f_to_h((1, 2, 3), 2)


@given(st.lists(st.integers(min_value=-20, max_value=20), max_size=6))
@settings(max_examples=80, deadline=None)
def test_f_h_round_trip(tail):
    h = (1, *tail)
    assert f_to_h(h_to_f(h), len(h) - 1) == h


def test_g_vector():
    assert g_vector((1, 3, 6, 3, 1)) == (1, 2, 3)
    assert g_vector((1, 3, 1)) == (1, 2)


def test_dehn_sommerville_on_spheres_and_torus(pentagon):
    assert dehn_sommerville_defect(pentagon).is_zero
    defect = dehn_sommerville_defect(TORUS_H)
    assert defect.defect == [-2, 6, -6, 2]
    assert defect.predicted == [-2, 6, -6, 2]
    assert defect.euler_characteristic == 0
    assert defect.matches_prediction


@pytest.mark.parametrize("a, i, expected", [(3, 1, 6), (5, 2, 7), (0, 3, 0), (1, 1, 1), (6, 2, 10)])
def test_binomial_upper(a, i, expected):
    assert binomial_upper(a, i) == expected


def test_binomial_upper_rejects_bad_arguments():
    with pytest.raises(InputError):
        binomial_upper(3, 0)
    with pytest.raises(InputError):
        binomial_upper(-1, 2)


@pytest.mark.parametrize(
    "k, verdict, failing",
    [
        ((1, 3, 6), True, None),
        ((1, 3, 7), False, 2),
        ((1, 0, 1), False, 2),
        ((2, 1), False, 0),
        ((1, -1), False, 1),
        ((1,), True, None),
    ],
)
def test_is_m_vector(k, verdict, failing):
    result = is_m_vector(k)
    assert result.is_m_vector is verdict
    assert result.failing_index == failing


@pytest.mark.parametrize(
    "K",
    [generator_cyclic_sphere(4, 7), generator_cyclic_sphere(4, 8), generator_polygon(6), generator_boundary_simplex(5)],
    ids=lambda K: K.name,
)
def test_g_theorem_passes_on_polytopal_spheres(K):
    assert g_theorem_verdict(K).passes


def test_g_theorem_fails_on_torus_vector():
    verdict = g_theorem_verdict(TORUS_H)
    assert not verdict.symmetric
    assert verdict.symmetry_failures == [0, 1, 2, 3]
    assert not verdict.nonnegative
    assert 3 in verdict.nonnegativity_failures
    assert not verdict.passes


def test_upper_bound_theorem_equalities_for_neighbourly_spheres():
    for m in (7, 8):
        K = generator_cyclic_sphere(4, m)
        report = ubt_check(h_vector(K), K.m, K.n)
        assert report.holds
        assert report.equal_through == 2
    report = ubt_check((1, 2, 1), 4, 2)
    assert report.holds
    assert report.equalities == [True, True]
    assert not ubt_check((1, 5, 1), 4, 2).holds
    with pytest.raises(DimensionError):
        ubt_check((1, 1), 4, 2)


@pytest.mark.parametrize(
    "K",
    [
        generator_boundary_simplex(3),
        suspension(generator_polygon(4)),
        suspension(generator_polygon(5)),
        join(generator_boundary_simplex(2), generator_boundary_simplex(2)),
        join(generator_polygon(5), generator_polygon(5)),
        join(generator_boundary_simplex(1), generator_boundary_simplex(3)),
        join(generator_boundary_simplex(3), generator_boundary_simplex(3)),
    ],
    ids=["tetrahedron", "octahedron", "suspended-pentagon", "triangle-join", "pentagon-join", "suspended-tetrahedron", "tetrahedron-join"],
)
def test_upper_bound_equality_exactly_through_neighbourliness(K):
    report = ubt_check(h_vector(K), K.m, K.n)
    assert report.holds
    q = neighbourliness(K)
    for i in range(K.n // 2 + 1):
        assert report.equalities[i] == (i <= q)


@st.composite
def small_complexes(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    generators = draw(
        st.lists(
            st.lists(st.integers(min_value=1, max_value=m), min_size=1, max_size=m, unique=True),
            min_size=1,
            max_size=m + 1,
        )
    )
    return build_complex(m, generators)


@given(small_complexes(), small_complexes())
@settings(max_examples=40, deadline=None)
def test_join_multiplies_h_polynomials(K1, K2):
    assert h_vector(join(K1, K2)) == product_h(h_vector(K1), h_vector(K2))


def test_h_vector_arithmetic():
    assert product_h((1, 1), (1, 1)) == (1, 2, 1)
    assert connected_sum_h((1, 1, 1), (1, 1, 1)) == (1, 2, 1)
    with pytest.raises(DimensionError):
        connected_sum_h((1, 1, 1), (1, 1))
    with pytest.raises(InputError):
        connected_sum_h((1, 1, 2), (1, 1, 1))


def test_signatures():
    assert toric_signature((1, 1, 1)) == 1
    assert toric_signature((1, 2, 1)) == 0
    assert toric_signature((1, 3, 1)) == -1
    assert charney_davis_quantity((1, 3, 1)) == 1
    assert charney_davis_quantity((1, 1, 1, 1)) is None


def test_face_ring_poincare_series(pentagon):
    series = face_ring_poincare_series(pentagon)
    assert series.numerator.coefficients == (1, 3, 1)
    assert series.denominator_exponent == 2
    assert face_ring_poincare_series(build_complex(4, [[1, 2, 3], [3, 4]])).denominator_exponent == 3


def test_chi_polynomials(pentagon):
    chi = chi_poly_zk(pentagon)
    assert chi.coefficients == (1, 0, -5, 5, 0, -1)
    assert str(chi) == "1 - 5t^4 + 5t^6 - t^10"
    assert chi.evaluate(1) == 0
    assert chi_poly_rel(pentagon) == chi - GradedPolynomial.one_minus_power(5)


@pytest.mark.parametrize(
    "K",
    [
        build_complex(1, [[1]]),
        build_complex(2, [[1], [2]]),
        build_complex(3, [[1], [2], [3]]),
        generator_polygon(5),
        generator_boundary_simplex(3),
        build_complex(5, [[1, 2, 3], [3, 4], [5]]),
    ],
)
def test_chi_wk_from_cells_matches_formula(K):
    assert chi_poly_wk_from_cells(K) == chi_poly_wk(K)


def test_cubical_counts(pentagon):
    assert cubical_counts(pentagon, "cc") == (11, 15, 5)
    assert cubical_counts(pentagon, "cub") == (10, 10)
    assert cubical_counts_polytope(pentagon.f_vector, 2) == cubical_counts(pentagon, "cc")
    cube = generator_boundary_simplex(3)
    assert cubical_counts_polytope(cube.f_vector, 3) == cubical_counts(cube, "cc")


def test_neighbourliness(pentagon):
    assert neighbourliness(pentagon) == 1
    assert neighbourliness(generator_cyclic_sphere(4, 7)) == 2
    assert neighbourliness(generator_boundary_simplex(3)) == 3
    assert neighbourliness(generator_simplex(3)) == 4


def test_small_cubical_complex_and_neighbourliness(triangle):
    assert cubical_counts(triangle, "cc")[0] == 7
    assert neighbourliness(generator_cyclic_sphere(4, 8)) == 2
    assert binomial_upper(2, 1) == 3
