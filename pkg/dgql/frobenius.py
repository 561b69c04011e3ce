"""Finite-dimensional modules over self-injective algebras and their stable Homs.

Modules are right modules given as representations: a vector space per
vertex and, for an arrow ``a: s -> t``, a matrix of shape ``dim_t x dim_s``.
A path ``a b`` then acts as ``M_b M_a``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence
from logging import getLogger

from sympy.polys.matrices import DomainMatrix

from . import config, linalg
from .error import IncompatibleError, InternalError, PreconditionError
from .field import BaseField, Scalar
from .quiver import GradedQuiver, Path
from .response import HomReport, SelfInjectivityReport
from .series import (
    PathSeries,
    TruncatedQuotient,
    TwoSidedIdeal,
    groebner_truncated,
    zero_ideal_quotient,
)

Element = dict[int, Scalar]


@dataclass(frozen=True)
class AlgebraBasis:
    name: str
    source: str
    target: str
    idempotent: bool = False


@dataclass(frozen=True, eq=False)
class Presentation:
    quiver: GradedQuiver
    relations: tuple[PathSeries, ...]
    quotient: TruncatedQuotient
    monomials: tuple[Path, ...]
    """Normal monomials in algebra basis order"""


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    field: BaseField
    vertices: tuple[str, ...]
    basis: tuple[AlgebraBasis, ...]
    table: Mapping[tuple[int, int], Mapping[int, Scalar]]
    """Structure constants of nonzero basis products"""
    presentation: Presentation | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "basis", tuple(self.basis))

        for vertex in self.vertices:
            units = [
                vector
                for vector in self.basis
                if vector.idempotent and vector.source == vertex
            ]
            if len(units) != 1 or units[0].target != vertex:
                raise ValueError(f"Vertex {vertex} needs exactly one idempotent")

    @classmethod
    def from_relations(
        cls,
        quiver: GradedQuiver,
        relations: Sequence[PathSeries],
        field: BaseField,
    ) -> "FiniteAlgebra":
        """Path algebra modulo relations, certified finite by rewriting.

        The truncation doubles until every dimension in the top half of the
        weights vanishes, up to ``config.FINITENESS_BOUND``.
        """
        log = getLogger("dgql.frobenius")
        bound = config.FINITENESS_BOUND
        N = min(4, bound)

        while True:
            generators = [
                relation.truncate(N) for relation in relations if relation.truncate(N)
            ]
            if generators:
                quotient = groebner_truncated(TwoSidedIdeal(tuple(generators), N), N)
            else:
                quotient = zero_ideal_quotient(quiver, field, N)

            dims = quotient.dims()
            if dims.finite:
                break

            if N >= bound:
                raise PreconditionError(
                    f"Presentation does not look finite-dimensional up to weight {bound}"
                )

            N = min(2 * N, bound)

        log.debug(
            f"Certified finite algebra of dimension {dims.total} at weight {N}",
            extra={"dim": dims.total, "truncation": N},
        )

        monomials = tuple(quotient.normal_monomials())
        position = {path: index for index, path in enumerate(monomials)}

        table: dict[tuple[int, int], Element] = {}
        for i, p in enumerate(monomials):
            for j, q in enumerate(monomials):
                if p.target != q.source or p.weight + q.weight > N:
                    continue

                product = quotient.reduce(
                    PathSeries.monomial(quiver, field, N, p * q)
                )
                if product:
                    table[(i, j)] = {
                        position[path]: value for path, value in product.terms.items()
                    }

        return cls(
            field,
            quiver.vertices,
            tuple(
                AlgebraBasis(str(path), path.source, path.target, path.is_trivial)
                for path in monomials
            ),
            table,
            Presentation(quiver, tuple(relations), quotient, monomials),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idempotent(self, vertex: str) -> int:
        for index, vector in enumerate(self.basis):
            if vector.idempotent and vector.source == vertex:
                return index

        raise KeyError(f"Unknown vertex {vertex!r}")

    @cached_property
    def radical(self) -> tuple[int, ...]:
        return tuple(index for index, vector in enumerate(self.basis) if not vector.idempotent)

    def block(self, source: str | None = None, target: str | None = None) -> list[int]:
        """Basis indices of e_source A e_target, either side optional"""
        return [
            index
            for index, vector in enumerate(self.basis)
            if (source is None or vector.source == source)
            and (target is None or vector.target == target)
        ]

    def multiply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Element:
        result: Element = {}
        zero = self.field.zero
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    result[k] = result.get(k, zero) + a * b * c

        return {k: value for k, value in result.items() if value}

    def arrow_element(self, name: str) -> Element:
        presentation = self._presented()
        arrow = presentation.quiver.arrow(name)
        reduced = presentation.quotient.reduce(
            PathSeries.monomial(
                presentation.quiver, self.field, presentation.quotient.truncation, Path.of(arrow)
            )
        )
        position = {path: index for index, path in enumerate(presentation.monomials)}
        return {position[path]: value for path, value in reduced.terms.items()}

    def _presented(self) -> Presentation:
        if self.presentation is None:
            raise PreconditionError(
                "Module computations need an algebra given by a quiver with relations"
            )

        return self.presentation


@dataclass(frozen=True, eq=False)
class SelfInjectiveAlgebra:
    algebra: FiniteAlgebra
    nakayama: Mapping[str, str]
    """Vertex i -> vertex of the socle of P_i"""
    socle: Mapping[str, Element]
    """Spanning vector of soc P_i inside e_i A e_nakayama(i)"""

    @property
    def field(self) -> BaseField:
        return self.algebra.field

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.algebra.vertices


def _socle_of_projective(A: FiniteAlgebra, vertex: str) -> list[Element]:
    columns = A.block(source=vertex)
    local = {index: position for position, index in enumerate(columns)}

    rows = []
    for r in A.radical:
        images: dict[int, Element] = {}
        for index in columns:
            for k, value in A.multiply({index: A.field.one}, {r: A.field.one}).items():
                images.setdefault(k, {})[local[index]] = value
        rows.extend(images.values())

    return [
        {columns[position]: value for position, value in vector.items()}
        for vector in linalg.nullspace(rows, len(columns), A.field)
    ]


def check_self_injective(A: FiniteAlgebra) -> SelfInjectivityReport:
    """Every P_i has a simple socle S_pi(i), pi is a bijection and P_i = I_pi(i)"""
    nakayama: dict[str, str] = {}

    def reject(vertex: str, message: str) -> SelfInjectivityReport:
        getLogger("dgql.frobenius").debug(
            f"Rejected at P_{vertex}: {message}", extra={"vertex": vertex}
        )
        return SelfInjectivityReport(
            accepted=False,
            permutation=None,
            failing_projective=vertex,
            message=f"P_{vertex}: {message}",
        )

    for vertex in A.vertices:
        socle = _socle_of_projective(A, vertex)
        if len(socle) != 1:
            return reject(vertex, f"socle has dimension {len(socle)}")

        targets = {A.basis[index].target for index in socle[0]}
        if len(targets) != 1:
            return reject(vertex, "socle is not concentrated at one vertex")

        target = targets.pop()
        if target in nakayama.values():
            return reject(vertex, f"socle S_{target} is already the socle of another projective")

        if len(A.block(source=vertex)) != len(A.block(target=target)):
            return reject(vertex, f"not isomorphic to the injective hull of S_{target}")

        nakayama[vertex] = target

    return SelfInjectivityReport(
        accepted=True,
        permutation=nakayama,
        failing_projective=None,
        message="every projective is injective",
    )


def certify(A: FiniteAlgebra) -> SelfInjectiveAlgebra:
    report = check_self_injective(A)
    if not report.accepted:
        raise PreconditionError(f"Algebra is not self-injective: {report.message}")

    return SelfInjectiveAlgebra(
        A,
        dict(report.permutation),
        {vertex: _socle_of_projective(A, vertex)[0] for vertex in A.vertices},
    )


@dataclass(frozen=True, eq=False)
class FDModule:
    algebra: FiniteAlgebra
    dims: Mapping[str, int]
    maps: Mapping[str, DomainMatrix] = field(default_factory=dict)
    """Arrow -> matrix of shape (dim target, dim source); missing arrows act by 0"""
    name: str = "M"

    def __post_init__(self):
        presentation = self.algebra._presented()
        quiver = presentation.quiver
        field = self.algebra.field

        for vertex in self.dims:
            if vertex not in quiver.vertices:
                raise ValueError(f"Module {self.name} has a dimension at unknown vertex {vertex}")

        dims = {vertex: self.dims.get(vertex, 0) for vertex in quiver.vertices}
        for vertex, dim in dims.items():
            if dim < 0:
                raise ValueError(f"Negative dimension at vertex {vertex}")

        maps = {}
        for arrow in quiver.arrows:
            shape = (dims[arrow.target], dims[arrow.source])
            matrix = self.maps.get(arrow.name)
            if matrix is None:
                matrix = linalg.zeros(*shape, field)
            elif matrix.shape != shape:
                raise ValueError(
                    f"Matrix of {arrow.name} in {self.name} has shape {matrix.shape}, "
                    f"expected {shape}"
                )
            maps[arrow.name] = matrix

        for name in self.maps:
            quiver.arrow(name)

        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

        for relation in presentation.relations:
            for (source, target), block in relation.blocks().items():
                value = linalg.zeros(dims[target], dims[source], field)
                for path, coefficient in block.terms.items():
                    value = value + self.path_matrix(path) * coefficient
                if not value.is_zero_matrix:
                    raise ValueError(
                        f"Module {self.name} violates the relation {relation.format()}"
                    )

    @property
    def quiver(self) -> GradedQuiver:
        return self.algebra._presented().quiver

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, path: Path) -> DomainMatrix:
        matrix = linalg.identity(self.dims[path.source], self.algebra.field)
        for arrow in path.arrows:
            matrix = self.maps[arrow.name] * matrix
        return matrix

    def action(self, element: Mapping[int, Scalar], source: str, target: str) -> DomainMatrix:
        """Right action of the e_source A e_target part of an algebra element"""
        monomials = self.algebra._presented().monomials
        value = linalg.zeros(self.dims[target], self.dims[source], self.algebra.field)
        for index, coefficient in element.items():
            path = monomials[index]
            if path.source == source and path.target == target:
                value = value + self.path_matrix(path) * coefficient
        return value

    def renamed(self, name: str) -> "FDModule":
        return FDModule(self.algebra, self.dims, self.maps, name)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FDModule
    target: FDModule
    components: Mapping[str, DomainMatrix]
    """Vertex -> matrix of shape (target dim, source dim)"""

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise IncompatibleError("Module map between modules over different algebras")

        field = self.source.algebra.field
        components = {}
        for vertex in self.source.quiver.vertices:
            shape = (self.target.dims[vertex], self.source.dims[vertex])
            matrix = self.components.get(vertex)
            if matrix is None:
                matrix = linalg.zeros(*shape, field)
            elif matrix.shape != shape:
                raise ValueError(f"Component at {vertex} has shape {matrix.shape}, expected {shape}")
            components[vertex] = matrix

        object.__setattr__(self, "components", components)

        for arrow in self.source.quiver.arrows:
            lhs = self.target.maps[arrow.name] * components[arrow.source]
            rhs = components[arrow.target] * self.source.maps[arrow.name]
            if not (lhs - rhs).is_zero_matrix:
                raise ValueError(f"Map does not intertwine the action of {arrow.name}")

    def vector(self) -> linalg.SparseVector:
        """Entries of all components, vertex by vertex in row-major order"""
        vector: linalg.SparseVector = {}
        offset = 0
        for vertex in self.source.quiver.vertices:
            matrix = self.components[vertex]
            ncols = matrix.shape[1]
            for row, values in enumerate(linalg.sparse_rows(matrix)):
                for col, value in values.items():
                    vector[offset + row * ncols + col] = value
            offset += matrix.shape[0] * ncols
        return vector

    def is_zero(self) -> bool:
        return all(matrix.is_zero_matrix for matrix in self.components.values())


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f"""
    if f.target is not g.source:
        raise IncompatibleError("Maps are not composable")

    return ModuleMap(
        f.source,
        g.target,
        {vertex: g.components[vertex] * f.components[vertex] for vertex in f.components},
    )


def identity_map(M: FDModule) -> ModuleMap:
    return ModuleMap(
        M, M, {vertex: linalg.identity(dim, M.algebra.field) for vertex, dim in M.dims.items()}
    )


def hom_dimension_size(M: FDModule, N: FDModule) -> int:
    return sum(N.dims[vertex] * M.dims[vertex] for vertex in M.quiver.vertices)


def hom_space(M: FDModule, N: FDModule) -> list[ModuleMap]:
    """Basis of Hom(M, N)"""
    if M.algebra is not N.algebra:
        raise IncompatibleError("Modules over different algebras")

    field = M.algebra.field
    vertices = M.quiver.vertices

    offsets = {}
    total = 0
    for vertex in vertices:
        offsets[vertex] = total
        total += N.dims[vertex] * M.dims[vertex]

    def variable(vertex: str, row: int, col: int) -> int:
        return offsets[vertex] + row * M.dims[vertex] + col

    rows = []
    for arrow in M.quiver.arrows:
        s, t = arrow.source, arrow.target
        n_rows = linalg.sparse_rows(N.maps[arrow.name])
        m_cols = linalg.sparse_columns(M.maps[arrow.name])

        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                equation: dict[int, Scalar] = {}
                for k, value in n_rows[r].items():
                    key = variable(s, k, c)
                    equation[key] = equation.get(key, field.zero) + value
                for k, value in m_cols[c].items():
                    key = variable(t, r, k)
                    equation[key] = equation.get(key, field.zero) - value
                rows.append(equation)

    maps = []
    for solution in linalg.nullspace(rows, total, field):
        components = {}
        for vertex in vertices:
            data = {}
            for row in range(N.dims[vertex]):
                values = {
                    col: solution[variable(vertex, row, col)]
                    for col in range(M.dims[vertex])
                    if variable(vertex, row, col) in solution
                }
                if values:
                    data[row] = values
            components[vertex] = linalg.to_matrix(
                [data.get(row, {}) for row in range(N.dims[vertex])], M.dims[vertex], field
            )
        maps.append(ModuleMap(M, N, components))

    return maps


def direct_sum(modules: Sequence[FDModule], name: str = "M") -> FDModule:
    if not modules:
        raise ValueError("Direct sum of no modules needs an explicit algebra")

    algebra = modules[0].algebra
    quiver = modules[0].quiver
    field = algebra.field

    dims = {vertex: sum(M.dims[vertex] for M in modules) for vertex in quiver.vertices}
    maps = {
        arrow.name: linalg.block_matrix(
            {(index, index): M.maps[arrow.name] for index, M in enumerate(modules)},
            [M.dims[arrow.target] for M in modules],
            [M.dims[arrow.source] for M in modules],
            field,
        )
        for arrow in quiver.arrows
    }
    return FDModule(algebra, dims, maps, name)


def _stacked_map(
    source: FDModule, target: FDModule, parts: Sequence[ModuleMap], vertical: bool
) -> ModuleMap:
    """Map into (vertical) or out of a direct sum assembled from its summand maps"""
    field = source.algebra.field
    components = {}
    for vertex in source.quiver.vertices:
        if vertical:
            components[vertex] = linalg.block_matrix(
                {(index, 0): part.components[vertex] for index, part in enumerate(parts)},
                [part.target.dims[vertex] for part in parts],
                [source.dims[vertex]],
                field,
            )
        else:
            components[vertex] = linalg.block_matrix(
                {(0, index): part.components[vertex] for index, part in enumerate(parts)},
                [target.dims[vertex]],
                [part.source.dims[vertex] for part in parts],
                field,
            )
    return ModuleMap(source, target, components)


def kernel(f: ModuleMap) -> tuple[FDModule, ModuleMap]:
    M = f.source
    field = M.algebra.field

    bases = {
        vertex: linalg.nullspace(
            linalg.sparse_rows(f.components[vertex]), M.dims[vertex], field
        )
        for vertex in M.quiver.vertices
    }
    inclusions = {
        vertex: linalg.from_columns(vectors, M.dims[vertex], field)
        for vertex, vectors in bases.items()
    }

    maps = {}
    for arrow in M.quiver.arrows:
        s, t = arrow.source, arrow.target
        images = M.maps[arrow.name] * inclusions[s]
        basis_rows = linalg.sparse_rows(inclusions[t])
        columns = []
        for image in linalg.sparse_columns(images):
            rhs = [image.get(row, field.zero) for row in range(M.dims[t])]
            solution = linalg.solve(basis_rows, len(bases[t]), rhs, field)
            if solution is None:
                raise InternalError(f"Kernel is not closed under {arrow.name}")
            columns.append(solution)
        maps[arrow.name] = linalg.from_columns(columns, len(bases[t]), field)

    K = FDModule(
        M.algebra,
        {vertex: len(vectors) for vertex, vectors in bases.items()},
        maps,
        f"ker({M.name})",
    )
    return K, ModuleMap(K, M, inclusions)


def _complement(spanned: list[linalg.SparseVector], dim: int, field: BaseField) -> list[int]:
    standard = [{index: field.one} for index in range(dim)]
    return linalg.extend_basis(spanned, standard, dim, field)


def cokernel(f: ModuleMap) -> tuple[FDModule, ModuleMap]:
    N = f.target
    field = N.algebra.field

    projections = {}
    lifts = {}
    for vertex in N.quiver.vertices:
        dim = N.dims[vertex]
        image, _ = linalg.rref(
            linalg.sparse_columns(f.components[vertex]), dim, field
        )
        chosen = _complement(image, dim, field)

        # coordinates in the basis (image | chosen standard vectors)
        basis = image + [{index: field.one} for index in chosen]
        basis_rows = linalg.sparse_rows(linalg.from_columns(basis, dim, field))
        columns = []
        for index in range(dim):
            rhs = [field.one if row == index else field.zero for row in range(dim)]
            coordinates = linalg.solve(basis_rows, len(basis), rhs, field)
            columns.append(
                {
                    position - len(image): value
                    for position, value in coordinates.items()
                    if position >= len(image)
                }
            )

        projections[vertex] = linalg.from_columns(columns, len(chosen), field)
        lifts[vertex] = linalg.from_columns(
            [{index: field.one} for index in chosen], dim, field
        )

    maps = {
        arrow.name: projections[arrow.target] * N.maps[arrow.name] * lifts[arrow.source]
        for arrow in N.quiver.arrows
    }

    C = FDModule(
        N.algebra,
        {vertex: projections[vertex].shape[0] for vertex in N.quiver.vertices},
        maps,
        f"coker({N.name})",
    )
    return C, ModuleMap(N, C, projections)


def simple(A: FiniteAlgebra, vertex: str) -> FDModule:
    return FDModule(A, {vertex: 1}, {}, f"S_{vertex}")


def projective(A: FiniteAlgebra, vertex: str) -> FDModule:
    """P_v = e_v A with arrows acting by right multiplication"""
    presentation = A._presented()
    field = A.field

    spaces = {target: A.block(source=vertex, target=target) for target in A.vertices}

    maps = {}
    for arrow in presentation.quiver.arrows:
        element = A.arrow_element(arrow.name)
        rows_at = {index: row for row, index in enumerate(spaces[arrow.target])}
        columns = []
        for index in spaces[arrow.source]:
            product = A.multiply({index: field.one}, element)
            columns.append({rows_at[k]: value for k, value in product.items()})
        maps[arrow.name] = linalg.from_columns(columns, len(spaces[arrow.target]), field)

    return FDModule(
        A,
        {target: len(indices) for target, indices in spaces.items()},
        maps,
        f"P_{vertex}",
    )


def injective(A: FiniteAlgebra, vertex: str) -> FDModule:
    """I_v = D(A e_v) with (phi . a)(q) = phi(a q)"""
    presentation = A._presented()
    field = A.field

    spaces = {source: A.block(source=source, target=vertex) for source in A.vertices}

    maps = {}
    for arrow in presentation.quiver.arrows:
        element = A.arrow_element(arrow.name)
        columns_at = {index: col for col, index in enumerate(spaces[arrow.source])}
        rows = []
        for index in spaces[arrow.target]:
            product = A.multiply(element, {index: field.one})
            rows.append({columns_at[k]: value for k, value in product.items()})
        maps[arrow.name] = linalg.to_matrix(rows, len(spaces[arrow.source]), field)

    return FDModule(
        A,
        {source: len(indices) for source, indices in spaces.items()},
        maps,
        f"I_{vertex}",
    )


def uniserial(A: FiniteAlgebra, length: int) -> FDModule:
    """The module k[x]/(x^length) over an algebra with one vertex and one loop"""
    quiver = A._presented().quiver
    if len(quiver.vertices) != 1 or len(quiver.arrows) != 1:
        raise PreconditionError("Uniserial modules are built over one loop only")

    vertex = quiver.vertices[0]
    loop = quiver.arrows[0].name
    if length < 0:
        raise ValueError("Length must be non-negative")

    shift = linalg.to_matrix(
        [{row - 1: A.field.one} if row else {} for row in range(length)], length, A.field
    )
    return FDModule(A, {vertex: length}, {loop: shift}, f"U_{length}")


def _socle_vectors(M: FDModule, vertex: str) -> list[linalg.SparseVector]:
    rows = []
    for arrow in M.quiver.arrows_from(vertex):
        rows.extend(linalg.sparse_rows(M.maps[arrow.name]))
    return linalg.nullspace(rows, M.dims[vertex], M.algebra.field)


def _radical_vectors(M: FDModule, vertex: str) -> list[linalg.SparseVector]:
    vectors = []
    for arrow in M.quiver.arrows_to(vertex):
        vectors.extend(linalg.sparse_columns(M.maps[arrow.name]))
    return [vector for vector in vectors if vector]


def _generated_map(A: FiniteAlgebra, M: FDModule, vertex: str, x: linalg.SparseVector) -> ModuleMap:
    """P_vertex -> M sending e_vertex to x"""
    P = projective(A, vertex)
    monomials = A._presented().monomials
    field = A.field
    column = linalg.from_columns([x], M.dims[vertex], field)

    components = {}
    for target in A.vertices:
        images = [
            linalg.sparse_columns(M.path_matrix(monomials[index]) * column)[0]
            for index in A.block(source=vertex, target=target)
        ]
        components[target] = linalg.from_columns(images, M.dims[target], field)

    return ModuleMap(P, M, components)


def _cogenerated_map(
    A: FiniteAlgebra, M: FDModule, vertex: str, functional: linalg.SparseVector
) -> ModuleMap:
    """M -> I_vertex sending m to (q -> functional(m q))"""
    I = injective(A, vertex)
    monomials = A._presented().monomials
    field = A.field
    row = linalg.to_matrix([functional], M.dims[vertex], field)

    components = {}
    for source in A.vertices:
        rows = [
            linalg.sparse_rows(row * M.path_matrix(monomials[index]))[0]
            for index in A.block(source=source, target=vertex)
        ]
        components[source] = linalg.to_matrix(rows, M.dims[source], field)

    return ModuleMap(M, I, components)


def _check_module(Lam: SelfInjectiveAlgebra, M: FDModule) -> None:
    if M.algebra is not Lam.algebra:
        raise IncompatibleError(f"Module {M.name} lives over another algebra")


def injective_envelope(Lam: SelfInjectiveAlgebra, M: FDModule) -> tuple[FDModule, ModuleMap]:
    """M -> I, one indecomposable injective per socle basis vector"""
    _check_module(Lam, M)
    A = Lam.algebra
    field = A.field

    parts = []
    for vertex in A.vertices:
        socle = _socle_vectors(M, vertex)
        for position in range(len(socle)):
            rhs = [field.one if index == position else field.zero for index in range(len(socle))]
            functional = linalg.solve(socle, M.dims[vertex], rhs, field)
            parts.append(_cogenerated_map(A, M, vertex, functional))

    getLogger("dgql.frobenius").debug(
        f"Injective envelope of {M.name} has {len(parts)} summands",
        extra={"module": M.name, "summands": len(parts)},
    )

    if not parts:
        I = FDModule(A, {}, {}, "0")
        return I, ModuleMap(M, I, {})

    I = direct_sum([part.target for part in parts], f"I({M.name})")
    return I, _stacked_map(M, I, parts, vertical=True)


def projective_cover(Lam: SelfInjectiveAlgebra, M: FDModule) -> tuple[FDModule, ModuleMap]:
    """P -> M, one indecomposable projective per basis vector of the top"""
    _check_module(Lam, M)
    A = Lam.algebra
    field = A.field

    parts = []
    for vertex in A.vertices:
        radical, _ = linalg.rref(_radical_vectors(M, vertex), M.dims[vertex], field)
        for index in _complement(radical, M.dims[vertex], field):
            parts.append(_generated_map(A, M, vertex, {index: field.one}))

    if not parts:
        P = FDModule(A, {}, {}, "0")
        return P, ModuleMap(P, M, {})

    P = direct_sum([part.source for part in parts], f"P({M.name})")
    return P, _stacked_map(P, M, parts, vertical=False)


def strip_projectives(Lam: SelfInjectiveAlgebra, M: FDModule) -> FDModule:
    """Remove projective summands one indecomposable at a time"""
    _check_module(Lam, M)
    A = Lam.algebra
    field = A.field
    name = M.name

    while True:
        split = _projective_summand(Lam, M)
        if split is None:
            return M.renamed(name)

        vertex, x = split
        inclusion = _generated_map(A, M, vertex, x)
        unit = A.block(source=vertex, target=vertex).index(A.idempotent(vertex))

        for retraction in hom_space(M, inclusion.source):
            value = linalg.apply(
                linalg.sparse_rows(retraction.components[vertex]), x
            )
            if value.get(unit):
                M = kernel(retraction)[0]
                break
        else:
            raise InternalError(f"No retraction onto the summand P_{vertex}")


def _projective_summand(
    Lam: SelfInjectiveAlgebra, M: FDModule
) -> tuple[str, linalg.SparseVector] | None:
    field = Lam.field
    for vertex in Lam.vertices:
        omega = M.action(Lam.socle[vertex], vertex, Lam.nakayama[vertex])
        for index in range(M.dims[vertex]):
            x = {index: field.one}
            if linalg.apply(linalg.sparse_rows(omega), x):
                return vertex, x

    return None


def syzygy(Lam: SelfInjectiveAlgebra, M: FDModule, n: int = 1) -> FDModule:
    if n < 0:
        raise ValueError("Syzygy order must be non-negative")

    name = M.name
    M = strip_projectives(Lam, M)
    for _ in range(n):
        _, cover = projective_cover(Lam, M)
        M = strip_projectives(Lam, kernel(cover)[0])

    return M.renamed(f"Omega^{n}({name})" if n else name)


def cosyzygy(Lam: SelfInjectiveAlgebra, M: FDModule, n: int = 1) -> FDModule:
    if n < 0:
        raise ValueError("Cosyzygy order must be non-negative")

    name = M.name
    M = strip_projectives(Lam, M)
    for _ in range(n):
        _, envelope = injective_envelope(Lam, M)
        M = strip_projectives(Lam, cokernel(envelope)[0])

    return M.renamed(f"Omega^-{n}({name})" if n else name)


@dataclass(frozen=True)
class StableHom:
    dimension: int
    basis: tuple[ModuleMap, ...]
    """Maps whose classes form a basis of the stable Hom space"""


def stable_hom(Lam: SelfInjectiveAlgebra, M: FDModule, N: FDModule) -> StableHom:
    """Hom(M, N) modulo maps factoring through the injective envelope of M"""
    _check_module(Lam, M)
    _check_module(Lam, N)

    homs = hom_space(M, N)
    I, envelope = injective_envelope(Lam, M)
    trivial = [compose(g, envelope).vector() for g in hom_space(I, N)]

    size = hom_dimension_size(M, N)
    chosen = linalg.extend_basis(
        trivial, [hom.vector() for hom in homs], size, Lam.field
    )

    getLogger("dgql.frobenius").debug(
        f"Stable Hom({M.name}, {N.name}): {len(chosen)} of {len(homs)} maps survive",
        extra={"source": M.name, "target": N.name, "hom": len(homs)},
    )

    return StableHom(len(chosen), tuple(homs[index] for index in chosen))


def shifted_hom(Lam: SelfInjectiveAlgebra, M: FDModule, N: FDModule, n: int) -> HomReport:
    """Stable Hom(M, Sigma^n N) in the silting quotient: zero for n > 0"""
    if n > 0:
        return HomReport(source=M.name, target=N.name, shift=n, dimension=0, cross_checked=False)

    if n == 0:
        dimension = stable_hom(Lam, M, N).dimension
        return HomReport(
            source=M.name, target=N.name, shift=0, dimension=dimension, cross_checked=False
        )

    first = stable_hom(Lam, cosyzygy(Lam, M, -n), N).dimension
    second = stable_hom(Lam, M, syzygy(Lam, N, -n)).dimension
    if first != second:
        raise InternalError(
            f"Shifted Hom({M.name}, {N.name}, {n}) disagrees: "
            f"{first} via cosyzygies, {second} via syzygies"
        )

    return HomReport(source=M.name, target=N.name, shift=n, dimension=first, cross_checked=True)


@dataclass(frozen=True, eq=False)
class CoresolutionComplex:
    module: FDModule
    terms: tuple[FDModule, ...]
    """I^0, ..., I^(l-1)"""
    alpha: ModuleMap | None
    """M -> I^0"""
    differentials: tuple[ModuleMap, ...]
    """d^i: I^i -> I^(i+1)"""
    cosyzygies: tuple[FDModule, ...]
    """K^1, ..., K^l"""

    def __post_init__(self):
        composites = []
        if self.alpha is not None and self.differentials:
            composites.append(compose(self.differentials[0], self.alpha))
        for first, second in zip(self.differentials, self.differentials[1:]):
            composites.append(compose(second, first))

        if any(not composite.is_zero() for composite in composites):
            raise InternalError("Coresolution has a nonzero composite")

    @property
    def length(self) -> int:
        return len(self.terms)


def coresolution_complex(
    Lam: SelfInjectiveAlgebra, M: FDModule, l: int
) -> CoresolutionComplex:
    if l < 0:
        raise ValueError("Coresolution length must be non-negative")

    _check_module(Lam, M)

    terms, iotas, projections, cosyzygies = [], [], [], []
    current = M
    for _ in range(l):
        I, iota = injective_envelope(Lam, current)
        C, projection = cokernel(iota)
        terms.append(I)
        iotas.append(iota)
        projections.append(projection)
        cosyzygies.append(C)
        current = C

    differentials = tuple(
        compose(iotas[index + 1], projections[index]) for index in range(l - 1)
    )

    return CoresolutionComplex(
        M,
        tuple(terms),
        iotas[0] if iotas else None,
        differentials,
        tuple(cosyzygies),
    )
