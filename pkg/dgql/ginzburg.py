from dataclasses import dataclass
from logging import getLogger

from .dgalg import DGQuiverAlgebra, check_d_squared, cohomology_dims
from .error import IncompatibleError, InternalError, PreconditionError
from .field import BaseField, Scalar
from .quiver import Arrow, GradedQuiver, Path
from .series import (
    PathSeries,
    QuotientDims,
    TruncatedQuotient,
    TwoSidedIdeal,
    groebner_truncated,
    zero_ideal_quotient,
)


def dual_name(arrow: str) -> str:
    return f"{arrow}star"


def loop_name(vertex: str) -> str:
    return f"t_{vertex}"


def rotate(path: Path, steps: int = 1) -> Path:
    """Cyclic rotation of a cycle, moving the first ``steps`` arrows to the end"""
    if not path.is_cycle:
        raise ValueError(f"Only cycles can be rotated, got {path}")

    if path.is_trivial:
        return path

    steps %= path.length
    return Path.of(*(path.arrows[steps:] + path.arrows[:steps]))


@dataclass(frozen=True)
class Potential:
    quiver: GradedQuiver
    field: BaseField
    truncation: int
    terms: tuple[tuple[Scalar, Path], ...] = ()
    """Cycles with coefficients; rotations of one cycle may repeat"""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

        for _, path in self.terms:
            if path.is_trivial:
                raise ValueError("Potential terms must have at least one arrow")

            if not path.is_cycle:
                raise ValueError(f"Potential term {path} is not a cycle")

            if not self.quiver.arrow_set.issuperset(path.arrows):
                raise ValueError(f"Potential term {path} leaves the quiver")

            if path.weight > self.truncation:
                raise ValueError(
                    f"Potential term {path} is heavier than the truncation "
                    f"{self.truncation}"
                )

    @property
    def max_length(self) -> int:
        return max((path.length for _, path in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({path.length for _, path in self.terms}) <= 1


def cyclic_derivative(W: Potential, a: str) -> PathSeries:
    """Sum of ``v u`` over every decomposition ``c = u a v`` of each term"""
    arrow = W.quiver.arrow(a)

    terms: dict[Path, Scalar] = {}
    zero = W.field.zero
    for coefficient, path in W.terms:
        for index, current in enumerate(path.arrows):
            if current != arrow:
                continue

            arrows = path.arrows[index + 1 :] + path.arrows[:index]
            image = Path.of(*arrows) if arrows else Path.trivial(arrow.target)
            terms[image] = terms.get(image, zero) + coefficient

    return PathSeries(W.quiver, W.field, W.truncation, terms)


def vanishing_derivatives(W: Potential) -> list[str]:
    """Arrows occurring in W whose cyclic derivative is identically zero"""
    occurring = {arrow.name for _, path in W.terms for arrow in path.arrows}
    return [
        arrow.name
        for arrow in W.quiver.arrows
        if arrow.name in occurring and cyclic_derivative(W, arrow.name).is_zero()
    ]


def _warn_vanishing(W: Potential) -> None:
    vanishing = vanishing_derivatives(W)
    if vanishing:
        getLogger("dgql.ginzburg").warning(
            f"Cyclic derivatives vanish identically for {', '.join(vanishing)} "
            f"in characteristic {W.field.characteristic}",
            extra={"arrows": vanishing, "characteristic": W.field.characteristic},
        )


def _check_potential_quiver(Q: GradedQuiver, W: Potential) -> None:
    if W.quiver != Q:
        raise IncompatibleError("Potential is not defined over this quiver")

    for arrow in Q.arrows:
        if arrow.degree != 0:
            raise PreconditionError(
                f"Arrow {arrow.name} has degree {arrow.degree}; "
                "potentials need a quiver concentrated in degree 0",
                arrow=arrow.name,
            )


def doubled_quiver(Q: GradedQuiver) -> GradedQuiver:
    """Q with a dual ``a*`` in degree -1 per arrow and a degree -2 loop per vertex"""
    duals = tuple(
        Arrow(dual_name(arrow.name), arrow.target, arrow.source, -1)
        for arrow in Q.arrows
    )
    loops = tuple(Arrow(loop_name(vertex), vertex, vertex, -2) for vertex in Q.vertices)

    added = {arrow.name for arrow in duals + loops}
    for arrow in Q.arrows:
        if arrow.name in added:
            raise PreconditionError(
                f"Arrow name {arrow.name} collides with a generated arrow",
                arrow=arrow.name,
            )

    return GradedQuiver(Q.vertices, Q.arrows + duals + loops)


def ginzburg_dg(Q: GradedQuiver, W: Potential) -> DGQuiverAlgebra:
    _check_potential_quiver(Q, W)
    _warn_vanishing(W)

    doubled = doubled_quiver(Q)
    N = W.truncation
    one = W.field.one

    differential: dict[str, PathSeries] = {}
    for arrow in Q.arrows:
        derivative = cyclic_derivative(W, arrow.name)
        differential[dual_name(arrow.name)] = PathSeries(
            doubled, W.field, N, derivative.terms
        )

    for vertex in Q.vertices:
        terms: dict[Path, Scalar] = {}
        for arrow in Q.arrows:
            dual = doubled.arrow(dual_name(arrow.name))
            if arrow.source == vertex:
                path = Path.of(arrow, dual)
                terms[path] = terms.get(path, W.field.zero) + one
            if arrow.target == vertex:
                path = Path.of(dual, arrow)
                terms[path] = terms.get(path, W.field.zero) - one

        heaviest = max((path.weight for path in terms), default=1)
        differential[loop_name(vertex)] = PathSeries(
            doubled, W.field, max(N, heaviest), terms
        )

    A = DGQuiverAlgebra(doubled, W.field, N, differential, verify=False)

    report = check_d_squared(A)
    if not report.passed:
        raise InternalError(
            f"Ginzburg differential fails d^2 = 0: {report.message}",
            arrow=report.arrow,
        )

    getLogger("dgql.ginzburg").debug(
        f"Built Ginzburg dg algebra with {len(doubled.arrows)} arrows",
        extra={"vertices": len(Q.vertices), "arrows": len(doubled.arrows)},
    )

    return A


@dataclass(frozen=True)
class JacobianResult:
    quotient: TruncatedQuotient
    dims: QuotientDims
    cross_checked: bool
    """H^0 of the Ginzburg algebra agreed in weights up to N minus the term length"""


def jacobian(
    Q: GradedQuiver, W: Potential, N: int, cross_check: bool = True
) -> JacobianResult:
    _check_potential_quiver(Q, W)
    _warn_vanishing(W)

    generators = [
        derivative
        for arrow in Q.arrows
        if (derivative := cyclic_derivative(W, arrow.name).truncate(N))
    ]

    if generators:
        quotient = groebner_truncated(TwoSidedIdeal(tuple(generators), N), N)
    else:
        quotient = zero_ideal_quotient(Q, W.field, N)

    dims = quotient.dims()

    checked = False
    if cross_check:
        checked = _cross_check(Q, W, N, dims)

    return JacobianResult(quotient, dims, checked)


def _cross_check(Q: GradedQuiver, W: Potential, N: int, dims: QuotientDims) -> bool:
    log = getLogger("dgql.ginzburg")
    margin = N - W.max_length
    if margin < 0:
        return False

    widened = Potential(W.quiver, W.field, max(N, W.truncation), W.terms)
    table = cohomology_dims(ginzburg_dg(Q, widened), (0, 0), N)

    weights = table.weights or {}
    if not table.exact or any(weights.get(arrow.name) != arrow.weight for arrow in Q.arrows):
        log.debug(
            "Skipping H^0 cross-check: Ginzburg weights differ from the quiver's",
            extra={"weights": weights},
        )
        return False

    expected = dims.by_weight[: margin + 1]
    found = table.dims_by_weight(0)[: margin + 1]
    if expected != found:
        raise InternalError(
            f"Jacobian dims {list(expected)} disagree with H^0 of the Ginzburg "
            f"algebra {list(found)} in weights <= {margin}"
        )

    return True
