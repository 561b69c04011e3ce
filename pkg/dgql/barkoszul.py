"""Bar and dual bar constructions of augmented algebras over K = k^r.

Signs follow the shifted convention: every basis element ``x`` of the
augmentation ideal enters tensors with degree ``|x| = deg x - 1``, and the
operations ``m_n`` become degree one maps

    b_n(x_1, ..., x_n) = (-1)^n (-1)^(sum_i (n - i)|x_i|) s m_n(x_1, ..., x_n)

extended to the tensor coalgebra as a coderivation.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping
from logging import getLogger

from .dgalg import DGQuiverAlgebra, check_d_squared
from .error import InternalError, PreconditionError, VerificationError
from .field import BaseField, Scalar
from .quiver import Arrow, GradedQuiver, Path
from .response import BarReport, BlockDimension, VerificationReport
from .series import PathSeries
from .trivext import RadSquareZeroAlgebra, trivial_extension, twisted_dual

Combination = dict[str, Scalar]


@dataclass(frozen=True)
class BasisElement:
    name: str
    degree: int
    source: str
    """Idempotent e_s with e_s x = x"""
    target: str
    """Idempotent e_t with x e_t = x"""

    @property
    def shifted(self) -> int:
        return self.degree - 1


@dataclass(frozen=True)
class Chain:
    """Composable tensor of basis elements, or the idempotent at ``start``"""

    start: str
    end: str
    elements: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        if not self.elements:
            return f"e_{self.start}"

        return "|".join(self.elements)


@dataclass(frozen=True, eq=False)
class AugmentedFiniteAlgebra:
    field: BaseField
    idempotents: tuple[str, ...]
    basis: tuple[BasisElement, ...]
    """Basis of the augmentation ideal"""
    operations: Mapping[tuple[str, ...], Combination] = field(default_factory=dict)
    """m_n on basis chains; missing chains map to zero"""

    def __post_init__(self):
        object.__setattr__(self, "idempotents", tuple(self.idempotents))
        object.__setattr__(self, "basis", tuple(self.basis))

        if not self.idempotents:
            raise ValueError("At least one idempotent is required")

        if len(set(self.idempotents)) != len(self.idempotents):
            raise ValueError("Idempotent names must be pairwise distinct")

        names = [element.name for element in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("Basis names must be pairwise distinct")

        for element in self.basis:
            if element.source not in self.idempotents or element.target not in self.idempotents:
                raise ValueError(
                    f"Basis element {element.name} uses an unknown idempotent"
                )

        cleaned = {}
        for key, value in self.operations.items():
            key = tuple(key)
            value = {name: coefficient for name, coefficient in value.items() if coefficient}
            self._check_operation(key, value)
            if value:
                cleaned[key] = value

        object.__setattr__(self, "operations", cleaned)

        report = relations_check(self)
        if not report.passed:
            raise VerificationError(report.message)

    def _check_operation(self, key: tuple[str, ...], value: Combination) -> None:
        if not key:
            raise ValueError("Operations need at least one argument")

        for name in key + tuple(value):
            if name not in self.by_name:
                raise ValueError(f"Unknown basis element {name!r}")

        chain = [self.by_name[name] for name in key]
        for left, right in zip(chain, chain[1:]):
            if left.target != right.source:
                raise ValueError(
                    f"m_{len(key)} is given on the non-composable chain {'|'.join(key)}"
                )

        degree = sum(element.degree for element in chain) + 2 - len(key)
        for name in value:
            output = self.by_name[name]
            if output.source != chain[0].source or output.target != chain[-1].target:
                raise ValueError(
                    f"m_{len(key)}({', '.join(key)}) leaves its idempotent block"
                )

            if output.degree != degree:
                raise ValueError(
                    f"m_{len(key)}({', '.join(key)}) must have degree {degree}, "
                    f"{name} has degree {output.degree}"
                )

    @cached_property
    def by_name(self) -> dict[str, BasisElement]:
        return {element.name: element for element in self.basis}

    @cached_property
    def arities(self) -> tuple[int, ...]:
        return tuple(sorted({len(key) for key in self.operations}))

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=2)

    @property
    def is_positive_minimal(self) -> bool:
        return 1 not in self.arities and all(element.degree >= 1 for element in self.basis)

    def chains(self, length: int) -> Iterator[Chain]:
        """All composable chains of the given length, in basis order"""
        if length == 0:
            for vertex in self.idempotents:
                yield Chain(vertex, vertex)
            return

        def extend(prefix: tuple[BasisElement, ...]) -> Iterator[Chain]:
            if len(prefix) == length:
                yield Chain(
                    prefix[0].source,
                    prefix[-1].target,
                    tuple(element.name for element in prefix),
                )
                return

            for element in self.basis:
                if not prefix or prefix[-1].target == element.source:
                    yield from extend(prefix + (element,))

        yield from extend(())

    def shifted_degree(self, chain: Chain) -> int:
        return sum(self.by_name[name].shifted for name in chain.elements)


def bar_operation(A: AugmentedFiniteAlgebra, elements: tuple[str, ...]) -> Combination:
    """b_n on a chain of basis elements"""
    value = A.operations.get(elements)
    if not value:
        return {}

    n = len(elements)
    exponent = n + sum(
        (n - index) * A.by_name[name].shifted
        for index, name in enumerate(elements, start=1)
    )
    sign = A.field.sign(exponent)
    return {name: sign * coefficient for name, coefficient in value.items()}


def bar_differential(A: AugmentedFiniteAlgebra, chain: Chain) -> dict[Chain, Scalar]:
    terms: dict[Chain, Scalar] = {}
    zero = A.field.zero
    elements = chain.elements
    prefix_degree = 0

    for j in range(len(elements)):
        sign = A.field.sign(prefix_degree)
        for k in A.arities:
            if j + k > len(elements):
                continue

            for name, coefficient in bar_operation(A, elements[j : j + k]).items():
                image = Chain(
                    chain.start,
                    chain.end,
                    elements[:j] + (name,) + elements[j + k :],
                )
                terms[image] = terms.get(image, zero) + sign * coefficient

        prefix_degree += A.by_name[elements[j]].shifted

    return {image: value for image, value in terms.items() if value}


def coproduct(chain: Chain, A: AugmentedFiniteAlgebra) -> list[tuple[Chain, Chain]]:
    """Splittings of a tensor, the idempotent at both ends included"""
    splits = []
    for index in range(chain.length + 1):
        left = chain.elements[:index]
        right = chain.elements[index:]
        middle = A.by_name[left[-1]].target if left else chain.start
        splits.append(
            (
                Chain(chain.start, middle, left),
                Chain(middle, chain.end, right),
            )
        )

    return splits


def _apply(A: AugmentedFiniteAlgebra, vector: Mapping[Chain, Scalar]) -> dict[Chain, Scalar]:
    terms: dict[Chain, Scalar] = {}
    zero = A.field.zero
    for chain, coefficient in vector.items():
        for image, value in bar_differential(A, chain).items():
            terms[image] = terms.get(image, zero) + coefficient * value

    return {image: value for image, value in terms.items() if value}


def _first_square_failure(A: AugmentedFiniteAlgebra, length: int) -> tuple[Chain, dict] | None:
    for n in range(1, length + 1):
        for chain in A.chains(n):
            square = _apply(A, bar_differential(A, chain))
            if square:
                return chain, square

    return None


def relations_check(A: AugmentedFiniteAlgebra) -> VerificationReport:
    """A-infinity relations of arity up to 2 n_max - 1, read off D^2 on chains"""
    length = max(3, 2 * A.max_arity - 1)
    failure = _first_square_failure(A, length)

    if failure is None:
        return VerificationReport(
            subject="A-infinity relations",
            passed=True,
            message=f"chains of length <= {length}",
        )

    chain, square = failure
    return VerificationReport(
        subject="A-infinity relations",
        passed=False,
        message=f"relation fails on the chain {chain}",
        remainder=" + ".join(
            f"{A.field.format(value)} {image}" for image, value in sorted(
                square.items(), key=lambda item: item[0].elements
            )
        ),
    )


@dataclass(frozen=True, eq=False)
class BarComplex:
    algebra: AugmentedFiniteAlgebra
    length: int
    chains: tuple[tuple[Chain, ...], ...]
    """Chains per tensor length 0..L"""
    differential: Mapping[Chain, Mapping[Chain, Scalar]]

    def degree(self, chain: Chain) -> int:
        return self.algebra.shifted_degree(chain)

    def apply(self, vector: Mapping[Chain, Scalar]) -> dict[Chain, Scalar]:
        terms: dict[Chain, Scalar] = {}
        zero = self.algebra.field.zero
        for chain, coefficient in vector.items():
            for image, value in self.differential[chain].items():
                terms[image] = terms.get(image, zero) + coefficient * value

        return {image: value for image, value in terms.items() if value}

    def coproduct(self, chain: Chain) -> list[tuple[Chain, Chain]]:
        return coproduct(chain, self.algebra)


def bar_complex(A: AugmentedFiniteAlgebra, L: int) -> BarComplex:
    if L < 1:
        raise ValueError("Bar length must be at least 1")

    chains = tuple(tuple(A.chains(n)) for n in range(L + 1))
    differential = {
        chain: bar_differential(A, chain) for level in chains for chain in level
    }

    getLogger("dgql.barkoszul").debug(
        f"Bar complex up to length {L} has {len(differential)} chains",
        extra={"length": L, "chains": len(differential)},
    )

    return BarComplex(A, L, chains, differential)


def d_squared_check(B: BarComplex) -> VerificationReport:
    for level in B.chains:
        for chain in level:
            square = B.apply(B.differential[chain])
            if square:
                return VerificationReport(
                    subject="bar d^2 = 0",
                    passed=False,
                    message=f"d^2 does not vanish on {chain}",
                )

    return VerificationReport(
        subject="bar d^2 = 0",
        passed=True,
        message=f"chains of length <= {B.length}",
    )


def coderivation_check(B: BarComplex) -> VerificationReport:
    """Delta d = (d x 1 + 1 x d) Delta on every chain"""
    field = B.algebra.field
    zero = field.zero

    for level in B.chains:
        for chain in level:
            left: dict[tuple[Chain, Chain], Scalar] = {}
            for image, value in B.differential[chain].items():
                for pair in B.coproduct(image):
                    left[pair] = left.get(pair, zero) + value

            right: dict[tuple[Chain, Chain], Scalar] = {}
            for u, v in B.coproduct(chain):
                for image, value in B.differential[u].items():
                    right[(image, v)] = right.get((image, v), zero) + value

                sign = field.sign(B.degree(u))
                for image, value in B.differential[v].items():
                    right[(u, image)] = right.get((u, image), zero) + sign * value

            left = {pair: value for pair, value in left.items() if value}
            right = {pair: value for pair, value in right.items() if value}
            if left != right:
                return VerificationReport(
                    subject="coderivation",
                    passed=False,
                    message=f"Delta d and (d x 1 + 1 x d) Delta differ on {chain}",
                )

    return VerificationReport(
        subject="coderivation",
        passed=True,
        message=f"chains of length <= {B.length}",
    )


def bar_dims(B: BarComplex) -> dict[tuple[int, int], int]:
    """Number of chains per (tensor length, shifted degree)"""
    dims: dict[tuple[int, int], int] = {}
    for n, level in enumerate(B.chains):
        for chain in level:
            key = (n, B.degree(chain))
            dims[key] = dims.get(key, 0) + 1

    return dict(sorted(dims.items()))


def bar_report(A: AugmentedFiniteAlgebra, L: int) -> BarReport:
    B = bar_complex(A, L)

    dims: dict[tuple[int, int, str, str], int] = {}
    for n, level in enumerate(B.chains):
        for chain in level:
            key = (n, B.degree(chain), chain.start, chain.end)
            dims[key] = dims.get(key, 0) + 1

    return BarReport(
        length=L,
        dims=tuple(
            BlockDimension(source=source, target=target, weight=n, degree=degree, dim=dim)
            for (n, degree, source, target), dim in sorted(dims.items())
        ),
        d_squared=d_squared_check(B),
        coderivation=coderivation_check(B),
    )


def dual_name(element: str) -> str:
    return f"xi_{element}"


def _dual_quiver(A: AugmentedFiniteAlgebra) -> GradedQuiver:
    return GradedQuiver(
        A.idempotents,
        tuple(
            Arrow(dual_name(element.name), element.source, element.target, -element.shifted)
            for element in A.basis
        ),
    )


def dual_bar_quiver(A: AugmentedFiniteAlgebra) -> GradedQuiver:
    """Quiver of E(A): an arrow of degree 1 - p per basis element of degree p.

    ``xi_c`` runs from the source to the target of ``c``, the direction of the
    element itself rather than of its dual.
    """
    if not A.is_positive_minimal:
        raise PreconditionError(
            "The dual bar quiver is read off positive minimal input only"
        )

    return _dual_quiver(A)


def dual_bar(A: AugmentedFiniteAlgebra, L: int) -> DGQuiverAlgebra:
    """E(A) as a complete dg quiver algebra truncated at tensor length L.

    The differential of the arrow dual to ``c`` collects every chain whose
    bar operation hits ``c``, with the Koszul sign of dualizing the tensor.
    """
    if L < 1:
        raise ValueError("Truncation must be at least 1")

    quiver = _dual_quiver(A)
    field = A.field
    zero = field.zero

    terms: dict[str, dict[Path, Scalar]] = {}
    for n in A.arities:
        if n > L:
            continue

        for chain in A.chains(n):
            image = bar_operation(A, chain.elements)
            if not image:
                continue

            degrees = [A.by_name[name].shifted for name in chain.elements]
            koszul = sum(
                degrees[i] * degrees[j]
                for i in range(len(degrees))
                for j in range(i + 1, len(degrees))
            )
            path = Path.of(*(quiver.arrow(dual_name(name)) for name in chain.elements))

            for name, coefficient in image.items():
                # -(-1)^{|xi_c|} with |xi_c| = -|c|
                sign = -field.sign(koszul + A.by_name[name].shifted)
                block = terms.setdefault(dual_name(name), {})
                block[path] = block.get(path, zero) + sign * coefficient

    differential = {
        name: PathSeries(quiver, field, L, value) for name, value in terms.items()
    }

    E = DGQuiverAlgebra(quiver, field, L, differential, verify=False)
    report = check_d_squared(E)
    if not report.passed:
        raise InternalError(
            f"Dual bar differential fails d^2 = 0: {report.message}",
            arrow=report.arrow,
        )

    return E


def graded_trivial_extension_algebra(
    Q: GradedQuiver, d: int, field: BaseField
) -> AugmentedFiniteAlgebra:
    """B* = A(Q^op, 1, 1) graded with arrows in degree 1 and duals in d, d + 1"""
    R = RadSquareZeroAlgebra(Q.opposite(), field)
    B = trivial_extension(R, twisted_dual(R), d)

    radical = [vector for vector in B.basis if not vector.is_idempotent]
    operations = {}
    for left in radical:
        for right in radical:
            product = B.multiply_basis(left.index, right.index)
            if product:
                operations[(left.name, right.name)] = {
                    B.basis[index].name: value for index, value in product.items()
                }

    return AugmentedFiniteAlgebra(
        field,
        Q.vertices,
        tuple(
            BasisElement(vector.name, vector.degree, vector.source, vector.target)
            for vector in radical
        ),
        operations,
    )
