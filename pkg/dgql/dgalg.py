from dataclasses import dataclass, field
from typing import Mapping
from logging import getLogger

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from . import linalg
from .error import IncompatibleError, PreconditionError, VerificationError
from .field import BaseField, Scalar
from .quiver import GradedQuiver, Path
from .response import BlockDimension, CohomologyReport, VerificationReport
from .series import PathSeries


def transport(
    series: PathSeries,
    quiver: GradedQuiver,
    names: Mapping[str, str] | None = None,
) -> PathSeries:
    """Rebuild ``series`` over a quiver with the same shape (renamed or reweighted).

    No term is dropped: the truncation grows to the heaviest transported path.
    """
    names = names or {}
    terms = {}
    for path, coefficient in series.terms.items():
        if path.is_trivial:
            terms[path] = coefficient
            continue

        arrows = (quiver.arrow(names.get(arrow.name, arrow.name)) for arrow in path.arrows)
        terms[Path.of(*arrows)] = coefficient

    heaviest = max((path.weight for path in terms), default=1)
    return PathSeries(quiver, series.field, max(series.truncation, heaviest), terms)


@dataclass(frozen=True, eq=False)
class DGQuiverAlgebra:
    """Complete dg quiver algebra worked with in weights up to ``truncation``.

    The values of d on arrows are kept whole; ``d()`` and the Leibniz
    extension cut at ``truncation`` for the current weights only.
    """

    quiver: GradedQuiver
    field: BaseField
    truncation: int
    differential: Mapping[str, PathSeries] = field(default_factory=dict)
    """d on arrows; arrows without an entry are cycles"""
    verify: bool = True
    """Check d^2 = 0 on arrows at construction"""

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("'truncation' must be at least 1")

        cleaned = {}
        for name, value in self.differential.items():
            arrow = self.quiver.arrow(name)

            if (
                value.quiver != self.quiver
                or value.field != self.field
            ):
                raise IncompatibleError(
                    f"d({name}) lives over another quiver or field"
                )

            for path in value.terms:
                if path.source != arrow.source or path.target != arrow.target:
                    raise ValueError(
                        f"d({name}) contains {path}, which is not parallel to {name}"
                    )

                if path.degree != arrow.degree + 1:
                    raise ValueError(
                        f"d({name}) contains {path} of degree {path.degree}, "
                        f"expected {arrow.degree + 1}"
                    )

            if value:
                cleaned[name] = value

        object.__setattr__(self, "differential", cleaned)

        if self.verify:
            report = check_d_squared(self)
            if not report.passed:
                raise VerificationError(report.message, arrow=report.arrow)

    def d(self, name: str) -> PathSeries:
        value = self.differential.get(name)
        if value is None:
            self.quiver.arrow(name)
            return PathSeries.zero(self.quiver, self.field, self.truncation)

        return value.truncate(self.truncation)

    def series(self, terms: Mapping[Path, Scalar]) -> PathSeries:
        return PathSeries(self.quiver, self.field, self.truncation, terms)

    def is_minimal(self) -> bool:
        """No d(arrow) has a term of length one"""
        return all(
            path.length != 1
            for value in self.differential.values()
            for path in value.terms
        )

    def rebuilt(
        self,
        quiver: GradedQuiver,
        names: Mapping[str, str] | None = None,
        truncation: int | None = None,
    ) -> "DGQuiverAlgebra":
        names = names or {}
        truncation = self.truncation if truncation is None else truncation
        return DGQuiverAlgebra(
            quiver,
            self.field,
            truncation,
            {
                names.get(name, name): transport(value, quiver, names)
                for name, value in self.differential.items()
            },
            verify=False,
        )

    def reweighted(
        self, weights: Mapping[str, int], truncation: int | None = None
    ) -> "DGQuiverAlgebra":
        return self.rebuilt(self.quiver.reweighted(weights), truncation=truncation)

    def renamed(self, names: Mapping[str, str]) -> "DGQuiverAlgebra":
        return self.rebuilt(self.quiver.renamed(names), names=names)


def _d_path(A: DGQuiverAlgebra, path: Path) -> dict[Path, Scalar]:
    """Leibniz expansion of d on one path"""
    terms: dict[Path, Scalar] = {}
    zero = A.field.zero
    degree = 0
    for index, arrow in enumerate(path.arrows):
        value = A.differential.get(arrow.name)
        if value is not None:
            sign = A.field.sign(degree)
            prefix = path.arrows[:index]
            suffix = path.arrows[index + 1 :]
            rest = path.weight - arrow.weight

            for middle, coefficient in value.terms.items():
                if rest + middle.weight > A.truncation:
                    continue

                arrows = prefix + middle.arrows + suffix
                image = (
                    Path(path.source, path.target, arrows)
                    if arrows
                    else Path.trivial(path.source)
                )
                terms[image] = terms.get(image, zero) + sign * coefficient

        degree += arrow.degree

    return terms


def extend_leibniz(A: DGQuiverAlgebra, f: PathSeries) -> PathSeries:
    """d(f) by the graded Leibniz rule, truncated at A's order"""
    if f.quiver != A.quiver or f.field != A.field or f.truncation != A.truncation:
        raise IncompatibleError(
            "Series and dg algebra differ in quiver, field or truncation"
        )

    terms: dict[Path, Scalar] = {}
    zero = A.field.zero
    for path, coefficient in f.terms.items():
        for image, value in _d_path(A, path).items():
            terms[image] = terms.get(image, zero) + coefficient * value

    return A.series(terms)


def check_d_squared(A: DGQuiverAlgebra) -> VerificationReport:
    for arrow in A.quiver.arrows:
        if arrow.name not in A.differential:
            continue

        square = extend_leibniz(A, A.d(arrow.name))
        if square.is_zero():
            continue

        lightest = square.min_weight()
        block = {
            path: coefficient
            for path, coefficient in square.terms.items()
            if path.weight == lightest
        }
        path = min(block, key=lambda item: item.order_key)

        getLogger("dgql.dgalg").debug(
            f"d^2({arrow.name}) does not vanish in weight {lightest}",
            extra={"arrow": arrow.name, "weight": lightest},
        )

        return VerificationReport(
            subject="d^2 = 0",
            passed=False,
            message=f"d^2({arrow.name}) = {square.format()}",
            arrow=arrow.name,
            weight=lightest,
            block=f"{path.source}->{path.target}",
            remainder=A.series(block).format(),
        )

    return VerificationReport(
        subject="d^2 = 0",
        passed=True,
        message=f"all arrows, weights <= {A.truncation}",
    )


@dataclass(frozen=True)
class WeightAssignment:
    weights: Mapping[str, int]

    def __post_init__(self):
        for name, weight in self.weights.items():
            if not isinstance(weight, int) or weight < 1:
                raise ValueError(f"Weight of {name} must be a positive integer")

    def __getitem__(self, name: str) -> int:
        return self.weights[name]

    def is_homogeneous_for(self, A: DGQuiverAlgebra) -> bool:
        return all(
            sum(self.weights[arrow.name] for arrow in path.arrows)
            == self.weights[name]
            for name, value in A.differential.items()
            for path in value.terms
        )


def solve_weights(A: DGQuiverAlgebra) -> WeightAssignment | None:
    """Minimal positive weights making d weight-homogeneous.

    Returns None for an inhomogeneous differential. Among minimal-total
    solutions the one lexicographically smallest in arrow-name order wins.
    """
    log = getLogger("dgql.dgalg")
    names = sorted(arrow.name for arrow in A.quiver.arrows)
    if not names:
        return WeightAssignment({})

    column = {name: index for index, name in enumerate(names)}

    rows = []
    for name, value in sorted(A.differential.items()):
        for path in value.terms:
            row = np.zeros(len(names))
            row[column[name]] += 1
            for arrow in path.arrows:
                row[column[arrow.name]] -= 1
            rows.append(row)

    if not rows:
        return WeightAssignment({name: 1 for name in names})

    equations = LinearConstraint(np.array(rows), 0, 0)
    integrality = np.ones(len(names))
    bounds = Bounds(np.ones(len(names)), np.full(len(names), np.inf))

    result = milp(
        np.ones(len(names)),
        constraints=[equations],
        integrality=integrality,
        bounds=bounds,
    )
    if result.status != 0:
        log.debug(
            "Differential admits no positive weight assignment",
            extra={"status": int(result.status)},
        )
        return None

    constraints = [equations, LinearConstraint(np.ones(len(names)), result.fun, result.fun)]
    values = np.rint(result.x)
    for index in range(len(names)):
        objective = np.zeros(len(names))
        objective[index] = 1
        step = milp(
            objective,
            constraints=constraints,
            integrality=integrality,
            bounds=bounds,
        )
        if step.status != 0:
            break

        values = np.rint(step.x)
        pinned = np.zeros(len(names))
        pinned[index] = 1
        constraints.append(LinearConstraint(pinned, values[index], values[index]))

    assignment = WeightAssignment(
        {name: int(values[column[name]]) for name in names}
    )

    if not assignment.is_homogeneous_for(A):
        return None

    log.debug(
        "Solved weight assignment",
        extra={"weights": dict(assignment.weights)},
    )

    return assignment


def _cohomology_blocks(
    A: DGQuiverAlgebra,
    p_min: int,
    p_max: int,
    N: int,
    by_weight: bool,
) -> list[BlockDimension]:
    paths = A.quiver.paths(N, min_degree=p_min - 1, max_degree=p_max + 1)

    def key(path: Path):
        return path.degree, path.weight if by_weight else None, path.source, path.target

    spaces: dict[tuple, list[Path]] = {}
    for path in paths:
        spaces.setdefault(key(path), []).append(path)

    ranks: dict[tuple, int] = {}

    def rank_from(block: tuple) -> int:
        if block in ranks:
            return ranks[block]

        domain = spaces.get(block, [])
        degree, weight, source, target = block
        codomain = spaces.get((degree + 1, weight, source, target), [])
        index = {path: position for position, path in enumerate(codomain)}

        # columns: codomain paths; one row per domain path
        rows = []
        for path in domain:
            row = {}
            for image, value in _d_path(A, path).items():
                if image in index:
                    row[index[image]] = value
            rows.append(row)

        ranks[block] = linalg.rank(rows, len(codomain), A.field)
        return ranks[block]

    entries = []
    for block in sorted(spaces, key=lambda item: (item[0], item[1] or 0, item[2], item[3])):
        degree, weight, source, target = block
        if not p_min <= degree <= p_max:
            continue

        dim = (
            len(spaces[block])
            - rank_from(block)
            - rank_from((degree - 1, weight, source, target))
        )
        if dim:
            entries.append(
                BlockDimension(
                    source=source, target=target, weight=weight, degree=degree, dim=dim
                )
            )

    return entries


def cohomology_dims(
    A: DGQuiverAlgebra, degrees: tuple[int, int], N: int
) -> CohomologyReport:
    """dim H^p per (degree, weight, source, target) block.

    Exact when a weight assignment makes d homogeneous: d then preserves
    weight and the completion splits weightwise. Otherwise the truncated
    complex is used as a whole and the table is marked approximate.
    """
    log = getLogger("dgql.dgalg")
    p_min, p_max = degrees

    if p_min > p_max:
        raise ValueError("Degree window must be nonempty")

    report = check_d_squared(A)
    if not report.passed:
        raise PreconditionError(
            f"Refusing cohomology: {report.message}", arrow=report.arrow
        )

    assignment = solve_weights(A)
    if assignment is not None:
        B = A.reweighted(assignment.weights, truncation=N)
        entries = _cohomology_blocks(B, p_min, p_max, N, by_weight=True)
        weights = dict(sorted(assignment.weights.items()))
    else:
        log.warning(
            "Differential is not weight-homogeneous; "
            f"cohomology is approximate at truncation {N}",
            extra={"truncation": N},
        )
        B = A.rebuilt(A.quiver, truncation=N)
        entries = _cohomology_blocks(B, p_min, p_max, N, by_weight=False)
        weights = None

    return CohomologyReport(
        truncation=N,
        degrees=(p_min, p_max),
        exact=assignment is not None,
        weights=weights,
        entries=tuple(entries),
    )


@dataclass(frozen=True)
class HereditaryShadow:
    hypothesis: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return not self.hypothesis or self.conclusion


def hereditary_shadow(A: DGQuiverAlgebra, m: int, N: int) -> HereditaryShadow:
    """Hereditary H^0 and vanishing H^-m..H^-1 force no arrows in degrees -m..-1.

    The hypothesis is checked in its truncated form: minimal, non-positive,
    degree -1 arrows are cycles (zero relations for H^0) and the cohomology
    vanishes in weights up to ``N``.
    """
    nonpositive = all(arrow.degree <= 0 for arrow in A.quiver.arrows)
    free_zero = all(
        not A.differential.get(arrow.name)
        for arrow in A.quiver.arrows
        if arrow.degree == -1
    )

    hypothesis = A.is_minimal() and nonpositive and free_zero
    if hypothesis and m >= 1:
        table = cohomology_dims(A, (-m, -1), N)
        hypothesis = all(table.total(degree) == 0 for degree in range(-m, 0))

    conclusion = not any(-m <= arrow.degree <= -1 for arrow in A.quiver.arrows)
    return HereditaryShadow(hypothesis=hypothesis, conclusion=conclusion)
