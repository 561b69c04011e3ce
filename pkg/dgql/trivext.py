"""Trivial extensions of radical square zero tree algebras by twisted duals.

Dual basis actions follow ``(a.f)(x) = f(xa)`` and ``(f.a)(x) = f(ax)``. For an
arrow ``alpha: s -> t`` this gives ``alpha . alpha* = e_s*`` and
``alpha* . alpha = e_t*``, and ``beta*`` lies in ``e_t(beta) B e_s(beta)``.
"""

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product
from typing import Literal, Mapping
from logging import getLogger
import random

from . import linalg
from .error import PreconditionError, VerificationError
from .field import BaseField, Scalar
from .frobenius import AlgebraBasis, FiniteAlgebra
from .quiver import GradedQuiver, is_tree, unique_walk
from .response import IsoReport, SymmetryEntry, SymmetryReport

Kind = Literal["vertex", "arrow", "vertex_dual", "arrow_dual"]

Element = dict[int, Scalar]


@dataclass(frozen=True)
class BasisVector:
    index: int
    name: str
    kind: Kind
    label: str
    """Vertex or arrow the vector belongs to"""
    source: str
    target: str
    degree: int | None = None

    @property
    def is_idempotent(self) -> bool:
        return self.kind == "vertex"


@dataclass(frozen=True, eq=False)
class RadSquareZeroAlgebra:
    """Path algebra of Q modulo all paths of length two"""

    quiver: GradedQuiver
    field: BaseField

    @cached_property
    def tree(self) -> bool:
        return is_tree(self.quiver)

    @property
    def dim(self) -> int:
        return len(self.quiver.vertices) + len(self.quiver.arrows)

    def product(
        self, left: tuple[str, str], right: tuple[str, str]
    ) -> tuple[str, str] | None:
        """Product of basis elements given as (kind, label)"""
        match left, right:
            case ("vertex", i), ("vertex", j):
                return left if i == j else None
            case ("vertex", i), ("arrow", beta):
                return right if self.quiver.arrow(beta).source == i else None
            case ("arrow", beta), ("vertex", j):
                return left if self.quiver.arrow(beta).target == j else None
            case _:
                return None

    def elements(self) -> list[tuple[str, str]]:
        return [("vertex", vertex) for vertex in self.quiver.vertices] + [
            ("arrow", arrow.name) for arrow in self.quiver.arrows
        ]


@dataclass(frozen=True, eq=False)
class TwistedDualBimodule:
    algebra: RadSquareZeroAlgebra
    lam: Mapping[str, Scalar]
    mu: Mapping[str, Scalar]

    def __post_init__(self):
        for name, twist in (("lambda", self.lam), ("mu", self.mu)):
            if set(twist) != {arrow.name for arrow in self.algebra.quiver.arrows}:
                raise ValueError(f"Twist {name} must be given on every arrow")

            for arrow, value in twist.items():
                if not value:
                    raise ValueError(f"Twist {name}({arrow}) must be nonzero")

        if not self.algebra.tree:
            getLogger("dgql.trivext").warning(
                "Twisted dual over a quiver that is not a tree; "
                "the rescaling isomorphism is unavailable",
                extra={"vertices": len(self.algebra.quiver.vertices)},
            )

        failure = self._axiom_failure()
        if failure is not None:
            raise VerificationError(f"Bimodule axiom fails on {failure}")

    def left(
        self, a: tuple[str, str], m: tuple[str, str]
    ) -> tuple[Scalar, tuple[str, str]] | None:
        Q = self.algebra.quiver
        match a, m:
            case ("vertex", i), ("vertex", j):
                return (self.algebra.field.one, m) if i == j else None
            case ("vertex", i), ("arrow", beta):
                if Q.arrow(beta).target == i:
                    return self.algebra.field.one, m
                return None
            case ("arrow", alpha), ("arrow", beta):
                if alpha == beta:
                    return self.lam[alpha], ("vertex", Q.arrow(alpha).source)
                return None
            case _:
                return None

    def right(
        self, m: tuple[str, str], a: tuple[str, str]
    ) -> tuple[Scalar, tuple[str, str]] | None:
        Q = self.algebra.quiver
        match m, a:
            case ("vertex", j), ("vertex", i):
                return (self.algebra.field.one, m) if i == j else None
            case ("arrow", beta), ("vertex", i):
                if Q.arrow(beta).source == i:
                    return self.algebra.field.one, m
                return None
            case ("arrow", beta), ("arrow", alpha):
                if alpha == beta:
                    return self.mu[alpha], ("vertex", Q.arrow(alpha).target)
                return None
            case _:
                return None

    def _axiom_failure(self) -> str | None:
        R = self.algebra
        elements = R.elements()

        def then(result, act):
            if result is None:
                return None
            inner = act(result[1])
            return None if inner is None else (result[0] * inner[0], inner[1])

        for a, m, b in product(elements, elements, elements):
            lhs = then(self.left(a, m), lambda n: self.right(n, b))
            rhs = then(self.right(m, b), lambda n: self.left(a, n))
            if lhs != rhs:
                return f"({a[1]} . {m[1]}*) . {b[1]}"

            ab = R.product(a, b)
            lhs = None if ab is None else self.left(ab, m)
            rhs = then(self.left(b, m), lambda n: self.left(a, n))
            if lhs != rhs:
                return f"({a[1]} {b[1]}) . {m[1]}*"

            lhs = None if ab is None else self.right(m, ab)
            rhs = then(self.right(m, a), lambda n: self.right(n, b))
            if lhs != rhs:
                return f"{m[1]}* . ({a[1]} {b[1]})"

        return None


def twisted_dual(
    R: RadSquareZeroAlgebra,
    lam: Mapping[str, Scalar] | None = None,
    mu: Mapping[str, Scalar] | None = None,
) -> TwistedDualBimodule:
    """The dual bimodule with arrow actions rescaled; missing twists are 1"""
    ones = {arrow.name: R.field.one for arrow in R.quiver.arrows}
    return TwistedDualBimodule(R, {**ones, **(lam or {})}, {**ones, **(mu or {})})


@dataclass(frozen=True, eq=False)
class TrivialExtensionAlgebra:
    bimodule: TwistedDualBimodule
    basis: tuple[BasisVector, ...]
    table: Mapping[tuple[int, int], Element]
    """Nonzero products of basis vectors"""
    d: int | None = None
    """Calabi-Yau parameter of the attached grading"""

    @property
    def quiver(self) -> GradedQuiver:
        return self.bimodule.algebra.quiver

    @property
    def field(self) -> BaseField:
        return self.bimodule.algebra.field

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def by_name(self) -> dict[str, BasisVector]:
        return {vector.name: vector for vector in self.basis}

    def multiply_basis(self, i: int, j: int) -> Element:
        return self.table.get((i, j), {})

    def multiply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Element:
        result: Element = {}
        zero = self.field.zero
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    result[k] = result.get(k, zero) + a * b * c

        return {k: value for k, value in result.items() if value}

    def unit(self) -> Element:
        return {vector.index: self.field.one for vector in self.basis if vector.is_idempotent}

    def regraded(self, degrees: Mapping[str, int]) -> "TrivialExtensionAlgebra":
        """Copy with the degrees of the named basis vectors replaced"""
        return replace(
            self,
            basis=tuple(
                replace(vector, degree=degrees.get(vector.name, vector.degree))
                for vector in self.basis
            ),
        )

    def forget_grading(self) -> FiniteAlgebra:
        return FiniteAlgebra(
            self.field,
            self.quiver.vertices,
            tuple(
                AlgebraBasis(vector.name, vector.source, vector.target, vector.is_idempotent)
                for vector in self.basis
            ),
            self.table,
        )


def _basis(R: RadSquareZeroAlgebra, d: int | None) -> tuple[BasisVector, ...]:
    Q = R.quiver
    vectors: list[BasisVector] = []

    def add(name: str, kind: Kind, label: str, source: str, target: str, degree):
        vectors.append(
            BasisVector(len(vectors), name, kind, label, source, target, degree)
        )

    graded = d is not None
    for vertex in Q.vertices:
        add(f"e_{vertex}", "vertex", vertex, vertex, vertex, 0 if graded else None)
    for arrow in Q.arrows:
        add(arrow.name, "arrow", arrow.name, arrow.source, arrow.target, 1 if graded else None)
    for vertex in Q.vertices:
        add(f"e_{vertex}star", "vertex_dual", vertex, vertex, vertex, d + 1 if graded else None)
    for arrow in Q.arrows:
        add(f"{arrow.name}star", "arrow_dual", arrow.name, arrow.target, arrow.source, d if graded else None)

    names = [vector.name for vector in vectors]
    if len(set(names)) != len(names):
        raise ValueError("Arrow names collide with generated basis names")

    return tuple(vectors)


def trivial_extension(
    R: RadSquareZeroAlgebra, M: TwistedDualBimodule, d: int | None = None
) -> TrivialExtensionAlgebra:
    """R + M with (a, m)(a', m') = (aa', am' + ma'); graded when ``d`` is given"""
    if M.algebra is not R:
        raise ValueError("Bimodule lives over another algebra")

    if d is not None and d < 2:
        raise ValueError("Calabi-Yau parameter must be at least 2")

    basis = _basis(R, d)
    index = {(vector.kind, vector.label): vector.index for vector in basis}

    def position(element: tuple[str, str], dual: bool) -> int:
        kind = f"{element[0]}_dual" if dual else element[0]
        return index[(kind, element[1])]

    table: dict[tuple[int, int], Element] = {}
    one = R.field.one
    elements = R.elements()

    for a, b in product(elements, elements):
        result = R.product(a, b)
        if result is not None:
            table[(position(a, False), position(b, False))] = {position(result, False): one}

    for a, m in product(elements, elements):
        result = M.left(a, m)
        if result is not None:
            table[(position(a, False), position(m, True))] = {position(result[1], True): result[0]}

        result = M.right(m, a)
        if result is not None:
            table[(position(m, True), position(a, False))] = {position(result[1], True): result[0]}

    B = TrivialExtensionAlgebra(M, basis, table, d)

    failure = _associativity_failure(B)
    if failure is not None:
        raise VerificationError(f"Trivial extension is not associative at {failure}")

    getLogger("dgql.trivext").debug(
        f"Trivial extension of dimension {B.dim}",
        extra={"dim": B.dim, "d": d},
    )

    return B


def _associativity_failure(B: TrivialExtensionAlgebra) -> str | None:
    for x in B.basis:
        for y in B.basis:
            xy = B.multiply_basis(x.index, y.index)
            for z in B.basis:
                lhs = B.multiply(xy, {z.index: B.field.one})
                rhs = B.multiply({x.index: B.field.one}, B.multiply_basis(y.index, z.index))
                if lhs != rhs:
                    return f"({x.name}, {y.name}, {z.name})"

    return None


@dataclass(frozen=True)
class RescalingMap:
    """Diagonal map fixing R and rescaling the dual basis"""

    vertex_scale: Mapping[str, Scalar]
    arrow_scale: Mapping[str, Scalar]

    def image(self, vector: BasisVector, field: BaseField) -> Element:
        match vector.kind:
            case "vertex_dual":
                return {vector.index: self.vertex_scale[vector.label]}
            case "arrow_dual":
                return {vector.index: self.arrow_scale[vector.label]}
            case _:
                return {vector.index: field.one}


def walk_factor(
    Q: GradedQuiver,
    lam: Mapping[str, Scalar],
    mu: Mapping[str, Scalar],
    field: BaseField,
    j: str,
    i: str,
) -> Scalar:
    """``f(j)`` for the stage at ``i``, read from the last step of the walk ``j -> i``.

    ``lam`` of the arrow for a forward step, ``mu`` for an inverse step, one
    for the trivial walk or a walk across components.
    """
    walk = unique_walk(Q, j, i)
    step = None if walk is None else walk.final_step
    if step is None:
        return field.one
    if step.inverse:
        return mu[step.arrow.name]
    return lam[step.arrow.name]


def walk_rescale_iso(
    Q: GradedQuiver,
    lam: Mapping[str, Scalar],
    mu: Mapping[str, Scalar],
    field: BaseField,
) -> RescalingMap:
    """Isomorphism A(Q, lambda, mu) -> A(Q, 1, 1) by iterated vertex normalization.

    The dual basis pairs by ``(a.f)(x) = f(xa)`` and ``(f.a)(x) = f(ax)``.
    Stages run in vertex order and compose. The stage at vertex ``i`` takes
    ``g(j) = 1 / walk_factor(j, i)`` and, for every arrow ``b: s -> t``, the
    arrow factor ``h(b) = 1`` when ``i`` is an endpoint of ``b`` and ``g(t)``
    otherwise. It rescales ``e_j*`` by ``g(j)`` and ``b*`` by ``h(b)``; the
    twists become ``lambda(b) g(s) / h(b)`` and ``mu(b) g(t) / h(b)``.

    Afterwards the twists on the arrows at ``i`` are trivial and stay trivial.
    The four-case arrow factor taken as a closed formula is not multiplicative
    under this pairing; ``h`` is.
    """
    if not is_tree(Q):
        raise PreconditionError("The rescaling isomorphism needs a tree quiver")

    lam = dict(lam)
    mu = dict(mu)
    for name, value in list(lam.items()) + list(mu.items()):
        if not value:
            raise ValueError(f"Twist on {name} must be nonzero")

    one = field.one
    vertex_scale = {vertex: one for vertex in Q.vertices}
    arrow_scale = {arrow.name: one for arrow in Q.arrows}

    for i in Q.vertices:
        g = {j: one / walk_factor(Q, lam, mu, field, j, i) for j in Q.vertices}

        for arrow in Q.arrows:
            if i in (arrow.source, arrow.target):
                h = one
            else:
                h = g[arrow.target]

            lam[arrow.name] = lam[arrow.name] * g[arrow.source] / h
            mu[arrow.name] = mu[arrow.name] * g[arrow.target] / h
            arrow_scale[arrow.name] = arrow_scale[arrow.name] * h

        for vertex in Q.vertices:
            vertex_scale[vertex] = vertex_scale[vertex] * g[vertex]

    return RescalingMap(vertex_scale, arrow_scale)


def verify_iso(
    phi: RescalingMap | Mapping[int, Element],
    A: TrivialExtensionAlgebra,
    B: TrivialExtensionAlgebra,
) -> IsoReport:
    """Bijective, unital and multiplicative on all basis pairs"""
    if A.dim != B.dim:
        return IsoReport(
            passed=False,
            bijective=False,
            unital=False,
            multiplicative=False,
            message=f"dimensions differ ({A.dim} vs {B.dim})",
        )

    if isinstance(phi, RescalingMap):
        images = {vector.index: phi.image(vector, A.field) for vector in A.basis}
    else:
        images = {index: dict(phi.get(index, {})) for index in range(A.dim)}

    def apply(x: Mapping[int, Scalar]) -> Element:
        result: Element = {}
        for i, a in x.items():
            for k, c in images[i].items():
                result[k] = result.get(k, A.field.zero) + a * c
        return {k: value for k, value in result.items() if value}

    matrix = [
        [images[column].get(row, A.field.zero) for column in range(A.dim)]
        for row in range(A.dim)
    ]
    bijective = bool(linalg.determinant(matrix, A.field))
    unital = apply(A.unit()) == B.unit()

    failure = None
    for x in A.basis:
        for y in A.basis:
            lhs = apply(A.multiply_basis(x.index, y.index))
            rhs = B.multiply(images[x.index], images[y.index])
            if lhs != rhs:
                failure = (x.name, y.name)
                break
        if failure is not None:
            break

    multiplicative = failure is None
    passed = bijective and unital and multiplicative

    if passed:
        message = f"all {A.dim * A.dim} basis pairs"
    elif not bijective:
        message = "map is not bijective"
    elif not unital:
        message = "map does not preserve the unit"
    else:
        message = "map is not multiplicative"

    return IsoReport(
        passed=passed,
        bijective=bijective,
        unital=unital,
        multiplicative=multiplicative,
        message=message,
        failure=failure,
    )


def rescaling_oracle(
    Q: GradedQuiver,
    lam: Mapping[str, Scalar],
    mu: Mapping[str, Scalar],
    field: BaseField,
) -> RescalingMap | None:
    """Exhaustive search for a diagonal dual-basis rescaling over a finite field"""
    R = RadSquareZeroAlgebra(Q, field)
    A = trivial_extension(R, twisted_dual(R, lam, mu))
    B = trivial_extension(R, twisted_dual(R))

    nonzero = [value for value in field.elements() if value]
    labels = list(Q.vertices) + [arrow.name for arrow in Q.arrows]

    for values in product(nonzero, repeat=len(labels)):
        scales = dict(zip(labels, values))
        phi = RescalingMap(
            {vertex: scales[vertex] for vertex in Q.vertices},
            {arrow.name: scales[arrow.name] for arrow in Q.arrows},
        )
        if verify_iso(phi, A, B).passed:
            return phi

    return None


def graded_dims(B: TrivialExtensionAlgebra) -> dict[tuple[str, str, int], int]:
    """dim e_i B^p e_j keyed by (i, j, p)"""
    if B.d is None:
        raise PreconditionError("Algebra carries no grading")

    dims: dict[tuple[str, str, int], int] = {}
    for vector in B.basis:
        key = (vector.source, vector.target, vector.degree)
        dims[key] = dims.get(key, 0) + 1

    return dims


def cy_symmetry_check(B: TrivialExtensionAlgebra) -> SymmetryReport:
    """dim e_i B^p e_j = dim e_j B^(d+1-p) e_i for all i, j, p"""
    dims = graded_dims(B)
    d = B.d
    degrees = sorted({key[2] for key in dims} | {d + 1 - key[2] for key in dims})

    table = []
    for i in B.quiver.vertices:
        for j in B.quiver.vertices:
            for p in degrees:
                dim = dims.get((i, j, p), 0)
                dual_dim = dims.get((j, i, d + 1 - p), 0)
                if dim or dual_dim:
                    table.append(SymmetryEntry(i=i, j=j, degree=p, dim=dim, dual_dim=dual_dim))

    violations = tuple(entry for entry in table if entry.dim != entry.dual_dim)
    return SymmetryReport(
        passed=not violations, d=d, table=tuple(table), violations=violations
    )


def random_twists(
    Q: GradedQuiver, field: BaseField, rng: random.Random
) -> tuple[dict[str, Scalar], dict[str, Scalar]]:
    lam = {arrow.name: field.random_nonzero(rng) for arrow in Q.arrows}
    mu = {arrow.name: field.random_nonzero(rng) for arrow in Q.arrows}
    return lam, mu


def twisted_pair(
    Q: GradedQuiver,
    lam: Mapping[str, Scalar],
    mu: Mapping[str, Scalar],
    field: BaseField,
    d: int | None = None,
) -> tuple[TrivialExtensionAlgebra, TrivialExtensionAlgebra]:
    """A(Q, lambda, mu) and A(Q, 1, 1)"""
    R = RadSquareZeroAlgebra(Q, field)
    return (
        trivial_extension(R, twisted_dual(R, lam, mu), d),
        trivial_extension(R, twisted_dual(R), d),
    )
