import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_invariants.exact_linalg import (
    IntegerMatrix,
    det_integer,
    nullspace_basis,
    pivot_columns,
    rank_rational,
    smith_invariants,
    solve_columns,
    sparse_rank,
    unimodular_inverse,
)
from toric_invariants.exceptions import DimensionError, NotUnimodularError

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-3, max_value=3), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def test_shape_and_access():
    matrix = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert matrix.shape == (2, 3)
    assert matrix[1, 2] == 6
    assert matrix.column(1) == (2, 5)
    assert matrix.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]
    assert matrix.select_columns([2, 0]).to_rows() == [[3, 1], [6, 4]]
    assert matrix.delete_rows([0]).to_rows() == [[4, 5, 6]]
    assert matrix.negate_columns([1]).row(0) == (1, -2, 3)


def test_ragged_rows_are_rejected():
    with pytest.raises(DimensionError):
        IntegerMatrix.from_rows([[1, 2], [3]])


def test_product_checks_shapes():
    a = IntegerMatrix.from_rows([[1, 1], [0, 1]])
    assert (a @ a).to_rows() == [[1, 2], [0, 1]]
    with pytest.raises(DimensionError):
        a @ IntegerMatrix.from_rows([[1, 2, 3]])


def test_determinant_and_rank():
    assert det_integer(IntegerMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert det_integer(IntegerMatrix.identity(0)) == 1
    assert rank_rational(IntegerMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank_rational(IntegerMatrix.zeros(3, 2)) == 0
    with pytest.raises(DimensionError):
        det_integer(IntegerMatrix.zeros(2, 3))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[2, 4], [6, 8]], (2, 4)),
        ([[2, 0], [0, 3]], (1, 6)),
        ([[1, 1, 1]], (1,)),
        ([[1], [1], [1]], (1,)),
        ([[0, 0], [0, 0]], ()),
        ([[2], [2]], (2,)),
    ],
)
def test_smith_invariants(rows, expected):
    assert smith_invariants(IntegerMatrix.from_rows(rows)) == expected


def test_unimodular_inverse():
    matrix = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    inverse = unimodular_inverse(matrix)
    assert inverse.to_rows() == [[1, -1], [-1, 2]]
    assert (matrix @ inverse).to_rows() == IntegerMatrix.identity(2).to_rows()
    with pytest.raises(NotUnimodularError):
        unimodular_inverse(IntegerMatrix.from_rows([[2, 0], [0, 1]]))


def test_sparse_rank_ignores_empty_rows():
    assert sparse_rank({0: {0: 1, 1: 1}, 1: {}, 2: {0: 2, 1: 2}}, (3, 2)) == 1
    assert sparse_rank({}, (4, 4)) == 0


def test_nullspace_basis_has_one_vector_per_free_column():
    basis = nullspace_basis({0: {0: 1, 1: 1}}, (1, 2))
    assert len(basis) == 1
    assert basis[0][1] == 1
    assert basis[0][0] == -1


def test_solve_columns():
    columns = [{0: 1}, {1: 1}]
    assert solve_columns(columns, {0: 2, 1: 3}, 2) == [2, 3]
    assert solve_columns([{0: 1}], {1: 1}, 2) is None
    assert solve_columns(columns, {}, 2) == [0, 0]


def test_pivot_columns_are_greedy():
    assert pivot_columns([{0: 1}, {0: 2}, {1: 1}], 2) == (0, 2)


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_rank_is_invariant_under_transposition(rows):
    matrix = IntegerMatrix.from_rows(rows)
    assert rank_rational(matrix) == rank_rational(matrix.transpose())
    assert len(smith_invariants(matrix)) == rank_rational(matrix)


@given(small_matrices, st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_rank_is_invariant_under_column_permutation(rows, rng):
    matrix = IntegerMatrix.from_rows(rows)
    order = list(range(matrix.cols))
    rng.shuffle(order)
    assert rank_rational(matrix.select_columns(order)) == rank_rational(matrix)
