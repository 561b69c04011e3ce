from dataclasses import dataclass
from logging import getLogger
import random

from ..barkoszul import AugmentedFiniteAlgebra, bar_report, dual_bar
from ..dgalg import DGQuiverAlgebra, check_d_squared, cohomology_dims
from ..error import PreconditionError
from ..frobenius import certify, check_self_injective, shifted_hom, stable_hom
from ..ginzburg import ginzburg_dg, jacobian
from ..response import HomReport, HomTableReport, Report
from ..trivext import (
    RadSquareZeroAlgebra,
    cy_symmetry_check,
    random_twists,
    trivial_extension,
    twisted_dual,
    twisted_pair,
    verify_iso,
    walk_rescale_iso,
)
from .grammar import (
    AlgebraWithModules,
    Parsed,
    QuiverWithPotential,
    TwistedTree,
    format_dg,
    read_inputs,
)
from .job import JobSpec

SHIFTS = range(-3, 4)


@dataclass(frozen=True)
class Outcome:
    text: str
    exit_code: int


def _require(parsed: Parsed, command: str, *kinds: type):
    if not isinstance(parsed, kinds):
        expected = " or ".join(kind.__name__ for kind in kinds)
        raise PreconditionError(f"{command} needs input describing a {expected}")
    return parsed


def _dg_input(parsed: Parsed, command: str) -> DGQuiverAlgebra:
    parsed = _require(parsed, command, DGQuiverAlgebra, QuiverWithPotential)
    if isinstance(parsed, QuiverWithPotential):
        return ginzburg_dg(parsed.quiver, parsed.potential)
    return parsed


def _twists(tree: TwistedTree, seed: int):
    """Given twists, the missing ones drawn from ``seed``"""
    lam, mu = random_twists(tree.quiver, tree.field, random.Random(seed))
    return {**lam, **tree.lam}, {**mu, **tree.mu}


def _modules(parsed: Parsed, command: str) -> AlgebraWithModules:
    parsed = _require(parsed, command, AlgebraWithModules)
    if not parsed.modules:
        raise PreconditionError(f"{command} needs at least one module")
    return parsed


def _render(report: Report, job: JobSpec) -> Outcome:
    text = report.machine() if job.machine else report.human()
    return Outcome(text, 0 if report.ok else 1)


def run(job: JobSpec) -> Outcome:
    log = getLogger("dgql.cli")
    parsed = read_inputs(job.inputs, job.truncation)

    log.debug(
        f"Running {job.command} on {', '.join(job.inputs)}",
        extra={"command": job.command, "truncation": job.truncation},
    )

    match job.command:
        case "d2check":
            A = _require(parsed, job.command, DGQuiverAlgebra)
            return _render(check_d_squared(A), job)

        case "cohomology":
            A = _dg_input(parsed, job.command)
            return _render(cohomology_dims(A, job.degrees, job.truncation), job)

        case "jacobian":
            qp = _require(parsed, job.command, QuiverWithPotential)
            result = jacobian(qp.quiver, qp.potential, job.truncation)
            return _render(result.dims.report(), job)

        case "ginzburg":
            qp = _require(parsed, job.command, QuiverWithPotential)
            return Outcome(format_dg(ginzburg_dg(qp.quiver, qp.potential)), 0)

        case "bar":
            A = _require(parsed, job.command, AugmentedFiniteAlgebra)
            return _render(bar_report(A, job.truncation), job)

        case "dualbar":
            A = _require(parsed, job.command, AugmentedFiniteAlgebra)
            return Outcome(format_dg(dual_bar(A, job.truncation)), 0)

        case "trivext-iso":
            tree = _require(parsed, job.command, TwistedTree)
            lam, mu = _twists(tree, job.seed)
            phi = walk_rescale_iso(tree.quiver, lam, mu, tree.field)
            twisted, plain = twisted_pair(tree.quiver, lam, mu, tree.field)
            return _render(verify_iso(phi, twisted, plain), job)

        case "cy-check":
            tree = _require(parsed, job.command, TwistedTree)
            lam, mu = _twists(tree, job.seed)
            R = RadSquareZeroAlgebra(tree.quiver, tree.field)
            B = trivial_extension(R, twisted_dual(R, lam, mu), job.d)
            return _render(cy_symmetry_check(B), job)

        case "selfinj-check":
            parsed = _require(parsed, job.command, AlgebraWithModules, TwistedTree)
            if isinstance(parsed, TwistedTree):
                lam, mu = _twists(parsed, job.seed)
                R = RadSquareZeroAlgebra(parsed.quiver, parsed.field)
                algebra = trivial_extension(R, twisted_dual(R, lam, mu)).forget_grading()
            else:
                algebra = parsed.algebra
            return _render(check_self_injective(algebra), job)

        case "stable-hom":
            parsed = _modules(parsed, job.command)
            Lam = certify(parsed.algebra)
            entries = [
                HomReport(
                    source=M.name,
                    target=N.name,
                    shift=0,
                    dimension=stable_hom(Lam, M, N).dimension,
                    cross_checked=False,
                )
                for M in parsed.modules.values()
                for N in parsed.modules.values()
            ]
            return _render(HomTableReport(entries=tuple(entries)), job)

        case "shifted-hom":
            parsed = _modules(parsed, job.command)
            Lam = certify(parsed.algebra)
            shifts = SHIFTS if job.shift is None else (job.shift,)
            entries = [
                shifted_hom(Lam, M, N, n)
                for M in parsed.modules.values()
                for N in parsed.modules.values()
                for n in shifts
            ]
            return _render(HomTableReport(entries=tuple(entries)), job)

    raise PreconditionError(f"Unknown command {job.command}")
