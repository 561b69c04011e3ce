"""Exact linear algebra over a ``BaseField`` on top of sympy's ``DomainMatrix``.

Vectors are sparse: ``dict[int, Scalar]`` without zero entries. Matrices are
sequences of such rows plus an explicit column count, so shapes with a zero
dimension need no special casing at the call sites.
"""

from typing import Mapping, Sequence

from sympy.polys.matrices import DomainMatrix

from .field import BaseField, Scalar

SparseVector = dict[int, Scalar]


def _clean(row: Mapping[int, Scalar]) -> SparseVector:
    return {col: value for col, value in row.items() if value}


def to_matrix(
    rows: Sequence[Mapping[int, Scalar]], ncols: int, field: BaseField
) -> DomainMatrix:
    data = {}
    for index, row in enumerate(rows):
        cleaned = _clean(row)
        if cleaned:
            data[index] = cleaned

    return DomainMatrix(data, (len(rows), ncols), field.domain)


def _rows_of(matrix: DomainMatrix) -> list[SparseVector]:
    sdm = matrix.to_sparse().rep
    return [dict(sdm.get(index, {})) for index in range(matrix.shape[0])]


def rref(
    rows: Sequence[Mapping[int, Scalar]], ncols: int, field: BaseField
) -> tuple[list[SparseVector], tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns"""
    if not rows or ncols == 0:
        return [], ()

    reduced, pivots = to_matrix(rows, ncols, field).rref()
    return _rows_of(reduced)[: len(pivots)], tuple(pivots)


def rank(
    rows: Sequence[Mapping[int, Scalar]], ncols: int, field: BaseField
) -> int:
    if not rows or ncols == 0:
        return 0

    return to_matrix(rows, ncols, field).rank()


def nullspace(
    rows: Sequence[Mapping[int, Scalar]], ncols: int, field: BaseField
) -> list[SparseVector]:
    """Basis of ``{v : row . v = 0 for every row}``"""
    if ncols == 0:
        return []

    if not any(_clean(row) for row in rows):
        return [{col: field.one} for col in range(ncols)]

    kernel = to_matrix(rows, ncols, field).nullspace()
    return [row for row in _rows_of(kernel) if row]


def solve(
    rows: Sequence[Mapping[int, Scalar]],
    ncols: int,
    rhs: Sequence[Scalar],
    field: BaseField,
) -> SparseVector | None:
    """One solution of ``rows . x = rhs`` (free variables zero), or None"""
    augmented = []
    for row, value in zip(rows, rhs):
        extended = dict(_clean(row))
        if value:
            extended[ncols] = value
        augmented.append(extended)

    reduced, pivots = rref(augmented, ncols + 1, field)

    if ncols in pivots:
        return None

    return {
        pivot: row[ncols]
        for pivot, row in zip(pivots, reduced)
        if ncols in row
    }


def determinant(matrix: Sequence[Sequence[Scalar]], field: BaseField) -> Scalar:
    if len(matrix) == 0:
        return field.one

    rows = [list(row) for row in matrix]
    return DomainMatrix(rows, (len(rows), len(rows)), field.domain).det()


def apply(rows: Sequence[Mapping[int, Scalar]], vector: Mapping[int, Scalar]):
    """Matrix-vector product, result indexed by row"""
    result: SparseVector = {}
    for index, row in enumerate(rows):
        value = sum(
            (coefficient * vector[col] for col, coefficient in row.items() if col in vector),
        )
        if value:
            result[index] = value

    return result


def extend_basis(
    spanned: Sequence[Mapping[int, Scalar]],
    candidates: Sequence[Mapping[int, Scalar]],
    ncols: int,
    field: BaseField,
) -> list[int]:
    """Indices of candidates that extend ``spanned`` to a basis of the sum"""
    chosen: list[int] = []
    current = [dict(row) for row in spanned]
    current_rank = rank(current, ncols, field)

    for index, candidate in enumerate(candidates):
        trial = current + [dict(candidate)]
        trial_rank = rank(trial, ncols, field)

        if trial_rank > current_rank:
            chosen.append(index)
            current, current_rank = trial, trial_rank

    return chosen


def zeros(nrows: int, ncols: int, field: BaseField) -> DomainMatrix:
    return DomainMatrix({}, (nrows, ncols), field.domain)


def identity(n: int, field: BaseField) -> DomainMatrix:
    return DomainMatrix({index: {index: field.one} for index in range(n)}, (n, n), field.domain)


def sparse_rows(matrix: DomainMatrix) -> list[SparseVector]:
    return _rows_of(matrix)


def sparse_columns(matrix: DomainMatrix) -> list[SparseVector]:
    return _rows_of(matrix.transpose())


def from_columns(
    columns: Sequence[Mapping[int, Scalar]], nrows: int, field: BaseField
) -> DomainMatrix:
    """Matrix whose columns are the given sparse vectors"""
    return to_matrix(columns, nrows, field).transpose()


def entry(matrix: DomainMatrix, row: int, col: int, field: BaseField) -> Scalar:
    return _rows_of(matrix)[row].get(col, field.zero)


def block_matrix(
    blocks: Mapping[tuple[int, int], DomainMatrix],
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    field: BaseField,
) -> DomainMatrix:
    """Assemble blocks keyed by (block row, block column); missing blocks are zero"""
    row_offsets = [sum(row_sizes[:index]) for index in range(len(row_sizes))]
    col_offsets = [sum(col_sizes[:index]) for index in range(len(col_sizes))]

    data: dict[int, dict[int, Scalar]] = {}
    for (block_row, block_col), block in blocks.items():
        for index, row in enumerate(_rows_of(block)):
            for col, value in row.items():
                if value:
                    data.setdefault(row_offsets[block_row] + index, {})[
                        col_offsets[block_col] + col
                    ] = value

    return DomainMatrix(data, (sum(row_sizes), sum(col_sizes)), field.domain)
