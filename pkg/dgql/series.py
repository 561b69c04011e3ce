"""Truncated elements of complete path algebras and their quotients.

Every computation here happens in the complete path algebra modulo paths of
weight above the truncation order, so results are exact in weights up to it.
"""

from dataclasses import dataclass, field
from typing import Iterator, Mapping
from logging import getLogger
import math

from . import linalg
from .error import IncompatibleError
from .field import BaseField, Scalar
from .quiver import GradedQuiver, Path, compose_paths
from .response import BlockDimension, QuotientReport

Block = tuple[str, str]


def _sort_key(path: Path):
    return path.order_key, path.source, path.target


@dataclass(frozen=True, eq=False)
class PathSeries:
    quiver: GradedQuiver
    field: BaseField
    truncation: int
    terms: Mapping[Path, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("'truncation' must be at least 1")

        cleaned = {}
        for path, coefficient in self.terms.items():
            if path.weight > self.truncation or not coefficient:
                continue

            if not self.quiver.arrow_set.issuperset(path.arrows):
                raise IncompatibleError(
                    f"Path {path} uses arrows outside the quiver"
                )

            if path.source not in self.quiver.vertices:
                raise IncompatibleError(
                    f"Path {path} starts outside the quiver"
                )

            cleaned[path] = coefficient

        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def zero(
        cls, quiver: GradedQuiver, field: BaseField, truncation: int
    ) -> "PathSeries":
        return cls(quiver, field, truncation, {})

    @classmethod
    def monomial(
        cls,
        quiver: GradedQuiver,
        field: BaseField,
        truncation: int,
        path: Path,
        coefficient: Scalar | None = None,
    ) -> "PathSeries":
        if coefficient is None:
            coefficient = field.one

        return cls(quiver, field, truncation, {path: coefficient})

    def like(self, terms: Mapping[Path, Scalar]) -> "PathSeries":
        """Series over the same quiver, field and truncation"""
        return PathSeries(self.quiver, self.field, self.truncation, terms)

    def check_compatible(self, other: "PathSeries") -> None:
        if (
            self.quiver != other.quiver
            or self.field != other.field
            or self.truncation != other.truncation
        ):
            raise IncompatibleError(
                "Series live over different quivers, fields or truncations"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathSeries):
            return NotImplemented

        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.truncation == other.truncation
            and self.terms == other.terms
        )

    def __add__(self, other: "PathSeries") -> "PathSeries":
        self.check_compatible(other)

        terms = dict(self.terms)
        for path, coefficient in other.terms.items():
            terms[path] = terms.get(path, self.field.zero) + coefficient

        return self.like(terms)

    def __neg__(self) -> "PathSeries":
        return self.like({path: -value for path, value in self.terms.items()})

    def __sub__(self, other: "PathSeries") -> "PathSeries":
        return self + (-other)

    def scale(self, coefficient: Scalar) -> "PathSeries":
        return self.like(
            {path: coefficient * value for path, value in self.terms.items()}
        )

    def __mul__(self, other: "PathSeries") -> "PathSeries":
        return series_mul(self, other)

    def truncate(self, truncation: int) -> "PathSeries":
        return PathSeries(self.quiver, self.field, truncation, self.terms)

    def coefficient(self, path: Path) -> Scalar:
        return self.terms.get(path, self.field.zero)

    def sorted_terms(self) -> list[tuple[Path, Scalar]]:
        """Terms in monomial order"""
        return sorted(self.terms.items(), key=lambda item: _sort_key(item[0]))

    def blocks(self) -> dict[Block, "PathSeries"]:
        """Split into pieces with one (source, target) pair each"""
        pieces: dict[Block, dict[Path, Scalar]] = {}
        for path, coefficient in self.terms.items():
            pieces.setdefault((path.source, path.target), {})[path] = coefficient

        return {
            block: self.like(terms) for block, terms in sorted(pieces.items())
        }

    def min_weight(self) -> int | None:
        if not self.terms:
            return None

        return min(path.weight for path in self.terms)

    def degrees(self) -> set[int]:
        return {path.degree for path in self.terms}

    def homogeneous_degree(self) -> int | None:
        degrees = self.degrees()
        return degrees.pop() if len(degrees) == 1 else None

    def format(self) -> str:
        """Grammar form: ``<coeff> <arrow>... + <coeff> <arrow>...``"""
        if not self.terms:
            return "0"

        return " + ".join(
            f"{self.field.format(coefficient)} {path}"
            for path, coefficient in self.sorted_terms()
        )

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PathSeries({self.format()!r}, truncation={self.truncation})"


def series_mul(f: PathSeries, g: PathSeries) -> PathSeries:
    """Continuous bilinear product, terms above the truncation dropped"""
    f.check_compatible(g)

    terms: dict[Path, Scalar] = {}
    zero = f.field.zero
    for left, a in f.terms.items():
        for right, b in g.terms.items():
            if left.target != right.source:
                continue

            if left.weight + right.weight > f.truncation:
                continue

            product = compose_paths(left, right)
            terms[product] = terms.get(product, zero) + a * b

    return f.like(terms)


@dataclass(frozen=True)
class TwoSidedIdeal:
    generators: tuple[PathSeries, ...]
    truncation: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

        if self.truncation < 1:
            raise ValueError("'truncation' must be at least 1")

        for generator in self.generators:
            if generator.is_zero():
                raise ValueError("Ideal generators must be nonzero")

        for generator in self.generators[1:]:
            if (
                generator.quiver != self.generators[0].quiver
                or generator.field != self.generators[0].field
            ):
                raise IncompatibleError(
                    "Ideal generators live over different quivers or fields"
                )


@dataclass(frozen=True, eq=False)
class TruncatedQuotient:
    """Complete rewriting system for an ideal, valid in weights up to N.

    Leading monomials are the smallest terms in monomial order, so every rule
    rewrites a monomial into heavier or later ones, as the completion needs.
    """

    quiver: GradedQuiver
    field: BaseField
    truncation: int
    rules: Mapping[Path, PathSeries]
    """Leading monomial -> the series it is congruent to"""
    normal: Mapping[Block, tuple[Path, ...]]
    """Normal monomials per (source, target) block, in monomial order"""

    def reduce(self, series: PathSeries) -> PathSeries:
        """Normal form of ``series``"""
        terms = {}
        zero = self.field.zero
        for path, coefficient in series.truncate(self.truncation).terms.items():
            rule = self.rules.get(path)
            if rule is None:
                terms[path] = terms.get(path, zero) + coefficient
                continue

            for image, value in rule.terms.items():
                terms[image] = terms.get(image, zero) + coefficient * value

        return PathSeries(self.quiver, self.field, self.truncation, terms)

    def normal_monomials(self) -> list[Path]:
        return [path for block in sorted(self.normal) for path in self.normal[block]]

    def dims(self) -> "QuotientDims":
        return quotient_dims(self)


@dataclass(frozen=True)
class QuotientDims:
    truncation: int
    blocks: Mapping[tuple[str, str, int], int]
    """(source, target, weight) -> dimension, zero entries omitted"""
    by_weight: tuple[int, ...]
    """Dimension per weight 0..N"""
    total: int
    finite: bool
    """All dimensions vanished in the top ceil(N/2) weights; a heuristic"""

    def report(self) -> QuotientReport:
        return QuotientReport(
            truncation=self.truncation,
            by_weight=self.by_weight,
            blocks=tuple(
                BlockDimension(source=source, target=target, weight=weight, dim=dim)
                for (source, target, weight), dim in self.blocks.items()
            ),
            total=self.total,
            finite=self.finite,
        )


def _block_rows(
    paths_from: Mapping[str, list[Path]],
    generators: list[PathSeries],
    source: str,
    target: str,
    truncation: int,
    column: Mapping[Path, int],
) -> Iterator[dict[int, Scalar]]:
    for generator in generators:
        (start, end), = {(path.source, path.target) for path in generator.terms}
        lightest = generator.min_weight()

        budget = truncation - lightest
        prefixes = [
            path
            for path in paths_from[source]
            if path.target == start and path.weight <= budget
        ]
        suffixes = [
            path
            for path in paths_from[end]
            if path.target == target and path.weight <= budget
        ]

        for prefix in prefixes:
            for suffix in suffixes:
                if prefix.weight + lightest + suffix.weight > truncation:
                    continue

                row: dict[int, Scalar] = {}
                for path, coefficient in generator.terms.items():
                    if prefix.weight + path.weight + suffix.weight > truncation:
                        continue

                    index = column[compose_paths(compose_paths(prefix, path), suffix)]
                    row[index] = row.get(index, generator.field.zero) + coefficient

                if any(row.values()):
                    yield row


def groebner_truncated(I: TwoSidedIdeal, N: int) -> TruncatedQuotient:
    """Complete rewriting system of ``I`` in weights up to ``N``.

    Blocks (source, target) are reduced independently: the ideal spanned in a
    block is generated by ``u g v`` for paths ``u``, ``v`` and block pieces
    ``g`` of the generators.
    """
    log = getLogger("dgql.series")

    if not I.generators:
        raise ValueError("Use an explicit quiver for the zero ideal")

    quiver = I.generators[0].quiver
    field = I.generators[0].field

    return _groebner(quiver, field, list(I.generators), N, log)


def zero_ideal_quotient(
    quiver: GradedQuiver, field: BaseField, N: int
) -> TruncatedQuotient:
    return _groebner(quiver, field, [], N, getLogger("dgql.series"))


def _groebner(
    quiver: GradedQuiver,
    field: BaseField,
    generators: list[PathSeries],
    N: int,
    log,
) -> TruncatedQuotient:
    pieces = [
        piece
        for generator in generators
        for piece in generator.truncate(N).blocks().values()
    ]

    rules: dict[Path, PathSeries] = {}
    normal: dict[Block, tuple[Path, ...]] = {}

    all_paths = quiver.paths(N)
    paths_from = {
        vertex: [path for path in all_paths if path.source == vertex]
        for vertex in quiver.vertices
    }
    for source in quiver.vertices:
        for target in quiver.vertices:
            columns = [
                path
                for path in all_paths
                if path.source == source and path.target == target
            ]
            if not columns:
                continue

            column = {path: index for index, path in enumerate(columns)}
            rows = list(_block_rows(paths_from, pieces, source, target, N, column))
            reduced, pivots = linalg.rref(rows, len(columns), field)

            for pivot, row in zip(pivots, reduced):
                tail = {
                    columns[index]: -value
                    for index, value in row.items()
                    if index != pivot
                }
                rules[columns[pivot]] = PathSeries(quiver, field, N, tail)

            pivot_set = set(pivots)
            normal[(source, target)] = tuple(
                path for index, path in enumerate(columns) if index not in pivot_set
            )

            log.debug(
                f"Reduced block {source}->{target}: {len(rows)} relations, "
                f"{len(columns) - len(pivots)} normal monomials",
                extra={
                    "source": source,
                    "target": target,
                    "relations": len(rows),
                    "rank": len(pivots),
                },
            )

    return TruncatedQuotient(quiver, field, N, rules, normal)


def quotient_dims(Qt: TruncatedQuotient) -> QuotientDims:
    blocks: dict[tuple[str, str, int], int] = {}
    by_weight = [0] * (Qt.truncation + 1)

    for (source, target), paths in sorted(Qt.normal.items()):
        for path in paths:
            key = (source, target, path.weight)
            blocks[key] = blocks.get(key, 0) + 1
            by_weight[path.weight] += 1

    top = math.ceil(Qt.truncation / 2)
    finite = all(
        value == 0 for value in by_weight[Qt.truncation - top + 1 :]
    )

    return QuotientDims(
        truncation=Qt.truncation,
        blocks=dict(sorted(blocks.items())),
        by_weight=tuple(by_weight),
        total=sum(by_weight),
        finite=finite,
    )
