from dgql import linalg

from corpus import F5, QQ


def test_rank_and_nullspace():
    rows = [{0: QQ(1), 1: QQ(2)}, {0: QQ(2), 1: QQ(4)}, {2: QQ(1)}]

    assert linalg.rank(rows, 3, QQ) == 2

    kernel = linalg.nullspace(rows, 3, QQ)
    assert len(kernel) == 1
    (vector,) = kernel
    assert linalg.apply(rows, vector) == {}


def test_nullspace_of_zero_rows_is_everything():
    assert linalg.nullspace([{}, {}], 2, F5) == [{0: F5.one}, {1: F5.one}]
    assert linalg.nullspace([], 0, F5) == []


def test_rref_pivots():
    rows = [{1: F5(2)}, {0: F5(1), 1: F5(1)}]
    reduced, pivots = linalg.rref(rows, 2, F5)

    assert pivots == (0, 1)
    assert reduced == [{0: F5.one}, {1: F5.one}]


def test_solve_consistent_and_inconsistent():
    rows = [{0: QQ(1), 1: QQ(1)}, {0: QQ(1), 1: QQ(-1)}]

    assert linalg.solve(rows, 2, [QQ(2), QQ(0)], QQ) == {0: QQ(1), 1: QQ(1)}

    singular = [{0: QQ(1)}, {0: QQ(2)}]
    assert linalg.solve(singular, 1, [QQ(1), QQ(1)], QQ) is None


def test_determinant():
    assert linalg.determinant([[QQ(1), QQ(2)], [QQ(3), QQ(4)]], QQ) == QQ(-2)
    assert linalg.determinant([], F5) == F5.one


def test_extend_basis_skips_dependent_candidates():
    spanned = [{0: QQ(1)}]
    candidates = [{0: QQ(3)}, {1: QQ(1)}, {0: QQ(1), 1: QQ(1)}, {2: QQ(1)}]

    assert linalg.extend_basis(spanned, candidates, 3, QQ) == [1, 3]


def test_block_matrix_places_blocks():
    one = linalg.identity(1, QQ)
    matrix = linalg.block_matrix({(0, 1): one, (1, 0): one}, [1, 1], [1, 1], QQ)

    assert linalg.sparse_rows(matrix) == [{1: QQ(1)}, {0: QQ(1)}]
    assert linalg.entry(matrix, 0, 0, QQ) == QQ(0)


def test_from_columns():
    matrix = linalg.from_columns([{0: QQ(1)}, {1: QQ(2)}, {}], 2, QQ)

    assert matrix.shape == (2, 3)
    assert linalg.sparse_columns(matrix) == [{0: QQ(1)}, {1: QQ(2)}, {}]
