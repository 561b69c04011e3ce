"""Line grammar of the input files.

One declaration per line, ``#`` starts a comment, tokens are separated by
whitespace. The file kind is chosen by suffix: ``.qpot`` (quiver with
potential), ``.dgq`` (dg quiver algebra), ``.aug`` (augmented algebra),
``.alg`` (algebra by relations, optionally with modules), ``.mod`` (modules
over a given algebra) and ``.tree`` (tree quiver with twists).
"""

from dataclasses import dataclass, field
from typing import Iterator, Mapping
from pathlib import Path as FilePath
import re

from sympy.polys.matrices import DomainMatrix

from .. import linalg
from ..barkoszul import AugmentedFiniteAlgebra, BasisElement
from ..dgalg import DGQuiverAlgebra
from ..error import CompositionError, ParseError, SemanticError
from ..field import BaseField, RationalField, Scalar, field_from_spec
from ..frobenius import FDModule, FiniteAlgebra
from ..ginzburg import Potential
from ..quiver import Arrow, GradedQuiver, Path
from ..series import PathSeries

KINDS = ("qpot", "dgq", "aug", "alg", "mod", "tree")

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_INTEGER = re.compile(r"^[+-]?\d+$")


@dataclass(frozen=True)
class Line:
    number: int
    tokens: tuple[str, ...]

    @property
    def keyword(self) -> str:
        return self.tokens[0]


@dataclass(frozen=True)
class QuiverWithPotential:
    quiver: GradedQuiver
    potential: Potential


@dataclass(frozen=True)
class TwistedTree:
    quiver: GradedQuiver
    field: BaseField
    lam: Mapping[str, Scalar] = field(default_factory=dict)
    mu: Mapping[str, Scalar] = field(default_factory=dict)


@dataclass(frozen=True)
class AlgebraWithModules:
    algebra: FiniteAlgebra
    modules: Mapping[str, FDModule] = field(default_factory=dict)


Parsed = (
    QuiverWithPotential | DGQuiverAlgebra | AugmentedFiniteAlgebra | AlgebraWithModules | TwistedTree
)


def tokenize(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tuple(raw.split("#", 1)[0].split())
        if tokens:
            yield Line(number, tokens)


def kind_of(path: str) -> str:
    kind = FilePath(path).suffix.lstrip(".")
    if kind not in KINDS:
        raise ParseError(
            f"Unknown input kind {FilePath(path).suffix!r}; expected one of "
            + ", ".join(f".{known}" for known in KINDS)
        )

    return kind


def _expect(line: Line, count: int, optional: int = 0) -> None:
    if not count <= len(line.tokens) <= count + optional:
        raise ParseError(
            f"'{line.keyword}' takes {count - 1}"
            + (f" to {count - 1 + optional}" if optional else "")
            + f" arguments, got {len(line.tokens) - 1}",
            line=line.number,
        )


def _identifier(line: Line, token: str) -> str:
    if not _IDENTIFIER.match(token):
        raise ParseError(f"{token!r} is not an identifier", line=line.number)

    return token


def _integer(line: Line, token: str) -> int:
    if not _INTEGER.match(token):
        raise ParseError(f"{token!r} is not an integer", line=line.number)

    return int(token)


def _coefficient(line: Line, field: BaseField, token: str) -> Scalar:
    try:
        return field.parse(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), line=line.number) from None


def _read_field(lines: list[Line]) -> BaseField:
    declarations = [line for line in lines if line.keyword == "field"]
    if len(declarations) > 1:
        raise ParseError("Field declared twice", line=declarations[1].number)

    if not declarations:
        return RationalField()

    line = declarations[0]
    try:
        return field_from_spec(" ".join(line.tokens[1:]))
    except ValueError as exc:
        raise ParseError(str(exc), line=line.number) from None


def _read_quiver(lines: list[Line]) -> GradedQuiver:
    vertices: list[str] = []
    arrows: list[Arrow] = []

    for line in lines:
        if line.keyword == "vertex":
            _expect(line, 2)
            name = _identifier(line, line.tokens[1])
            if name in vertices:
                raise SemanticError(f"Vertex {name} declared twice", line=line.number)
            vertices.append(name)

        elif line.keyword == "arrow":
            _expect(line, 5, optional=1)
            name, source, target = (_identifier(line, token) for token in line.tokens[1:4])
            degree = _integer(line, line.tokens[4])
            weight = _integer(line, line.tokens[5]) if len(line.tokens) == 6 else 1

            for vertex in (source, target):
                if vertex not in vertices:
                    raise SemanticError(
                        f"Arrow {name} uses undeclared vertex {vertex}",
                        line=line.number,
                        arrow=name,
                    )

            if any(arrow.name == name for arrow in arrows):
                raise SemanticError(f"Arrow {name} declared twice", line=line.number, arrow=name)

            try:
                arrows.append(Arrow(name, source, target, degree, weight))
            except ValueError as exc:
                raise SemanticError(str(exc), line=line.number, arrow=name) from None

    if not vertices:
        raise SemanticError("No vertex declared")

    return GradedQuiver(tuple(vertices), tuple(arrows))


def _chunks(tokens: tuple[str, ...]) -> list[tuple[str, ...]]:
    chunks: list[list[str]] = [[]]
    for token in tokens:
        if token == "+":
            chunks.append([])
        else:
            chunks[-1].append(token)
    return [tuple(chunk) for chunk in chunks]


def _terms(
    line: Line,
    tokens: tuple[str, ...],
    quiver: GradedQuiver,
    field: BaseField,
    vertex: str | None = None,
) -> list[tuple[Scalar, Path]]:
    """``<coeff> <arrow>... [+ ...]``; a bare coefficient is the trivial path at ``vertex``"""
    if tokens == ("0",):
        return []

    terms = []
    for chunk in _chunks(tokens):
        if not chunk:
            raise ParseError("Empty term around '+'", line=line.number)

        coefficient = _coefficient(line, field, chunk[0])
        names = chunk[1:]

        if not names:
            if vertex is None:
                raise SemanticError("Term without arrows", line=line.number)
            terms.append((coefficient, Path.trivial(vertex)))
            continue

        for name in names:
            if not quiver.has_arrow(name):
                raise SemanticError(f"Unknown arrow {name}", line=line.number, arrow=name)

        try:
            terms.append((coefficient, quiver.path(*names)))
        except CompositionError as exc:
            raise SemanticError(exc.message, line=line.number) from None

    return terms


def _collect(terms: list[tuple[Scalar, Path]], field: BaseField) -> dict[Path, Scalar]:
    collected: dict[Path, Scalar] = {}
    for coefficient, path in terms:
        collected[path] = collected.get(path, field.zero) + coefficient
    return collected


def _reject_unknown(lines: list[Line], allowed: set[str], kind: str) -> None:
    for line in lines:
        if line.keyword not in allowed:
            raise ParseError(
                f"Unexpected declaration '{line.keyword}' in a .{kind} file",
                line=line.number,
            )


def parse_potential(lines: list[Line], truncation: int) -> QuiverWithPotential:
    _reject_unknown(lines, {"field", "vertex", "arrow", "term"}, "qpot")
    field = _read_field(lines)
    quiver = _read_quiver(lines)

    terms: list[tuple[Scalar, Path]] = []
    for line in lines:
        if line.keyword != "term":
            continue

        if len(line.tokens) < 3:
            raise ParseError("'term' needs a coefficient and at least one arrow", line=line.number)

        for coefficient, path in _terms(line, line.tokens[1:], quiver, field):
            if not path.is_cycle:
                raise SemanticError(f"Potential term {path} is not a cycle", line=line.number)
            terms.append((coefficient, path))

    heaviest = max((path.weight for _, path in terms), default=1)
    try:
        potential = Potential(quiver, field, max(truncation, heaviest), tuple(terms))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None

    return QuiverWithPotential(quiver, potential)


def parse_dg(lines: list[Line], truncation: int) -> DGQuiverAlgebra:
    _reject_unknown(lines, {"field", "vertex", "arrow", "d"}, "dgq")
    field = _read_field(lines)
    quiver = _read_quiver(lines)

    differential: dict[str, PathSeries] = {}
    for line in lines:
        if line.keyword != "d":
            continue

        if len(line.tokens) < 4 or line.tokens[2] != "=":
            raise ParseError("Expected 'd <arrow> = <terms>'", line=line.number)

        name = line.tokens[1]
        if not quiver.has_arrow(name):
            raise SemanticError(f"Unknown arrow {name}", line=line.number, arrow=name)
        if name in differential:
            raise SemanticError(f"d({name}) given twice", line=line.number, arrow=name)

        arrow = quiver.arrow(name)
        terms = _terms(line, line.tokens[3:], quiver, field, vertex=arrow.source)
        for _, path in terms:
            if (path.source, path.target) != (arrow.source, arrow.target):
                raise SemanticError(
                    f"d({name}) contains {path}, which is not parallel to {name}",
                    line=line.number,
                    arrow=name,
                )
            if path.degree != arrow.degree + 1:
                raise SemanticError(
                    f"d({name}) contains {path} of degree {path.degree}, "
                    f"expected {arrow.degree + 1}",
                    line=line.number,
                    arrow=name,
                )

        heaviest = max((path.weight for _, path in terms), default=1)
        differential[name] = PathSeries(
            quiver, field, max(truncation, heaviest), _collect(terms, field)
        )

    return DGQuiverAlgebra(quiver, field, truncation, differential, verify=False)


def parse_augmented(lines: list[Line]) -> AugmentedFiniteAlgebra:
    _reject_unknown(lines, {"field", "vertex", "basis", "m2", "mN"}, "aug")
    field = _read_field(lines)

    idempotents: list[str] = []
    declared = [line for line in lines if line.keyword == "vertex"]
    for line in declared:
        _expect(line, 2)
        idempotents.append(_identifier(line, line.tokens[1]))

    basis: list[BasisElement] = []
    for line in lines:
        if line.keyword != "basis":
            continue

        _expect(line, 5)
        name = _identifier(line, line.tokens[1])
        degree = _integer(line, line.tokens[2])
        source, target = (_identifier(line, token) for token in line.tokens[3:5])

        for vertex in (source, target):
            if vertex not in idempotents:
                if declared:
                    raise SemanticError(f"Unknown idempotent {vertex}", line=line.number)
                idempotents.append(vertex)

        if any(element.name == name for element in basis):
            raise SemanticError(f"Basis element {name} declared twice", line=line.number)

        basis.append(BasisElement(name, degree, source, target))

    if not idempotents:
        raise SemanticError("No idempotent declared")

    try:
        skeleton = AugmentedFiniteAlgebra(field, tuple(idempotents), tuple(basis))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None

    operations: dict[tuple[str, ...], dict[str, Scalar]] = {}
    for line in lines:
        if line.keyword not in ("m2", "mN"):
            continue

        if "=" not in line.tokens:
            raise ParseError("Operation lines need '='", line=line.number)

        split = line.tokens.index("=")
        if line.keyword == "m2":
            key = line.tokens[1:split]
            if len(key) != 2:
                raise ParseError("'m2' takes exactly two inputs", line=line.number)
        else:
            if split < 2:
                raise ParseError("'mN' needs an arity", line=line.number)
            arity = _integer(line, line.tokens[1])
            key = line.tokens[2:split]
            if arity < 1 or len(key) != arity:
                raise ParseError(f"'mN {arity}' takes {arity} inputs", line=line.number)

        rhs = line.tokens[split + 1 :]
        if not rhs:
            raise ParseError("Missing right hand side", line=line.number)

        value: dict[str, Scalar] = {}
        if rhs != ("0",):
            for chunk in _chunks(rhs):
                if len(chunk) != 2:
                    raise ParseError("Expected '<coeff> <basis>' terms", line=line.number)
                coefficient = _coefficient(line, field, chunk[0])
                value[chunk[1]] = value.get(chunk[1], field.zero) + coefficient

        if key in operations:
            raise SemanticError(
                f"m_{len(key)}({', '.join(key)}) given twice", line=line.number
            )

        try:
            skeleton._check_operation(key, value)
        except ValueError as exc:
            raise SemanticError(str(exc), line=line.number) from None

        operations[key] = value

    return AugmentedFiniteAlgebra(field, tuple(idempotents), tuple(basis), operations)


def _module_blocks(lines: list[Line]) -> list[tuple[Line, list[Line]]]:
    blocks: list[tuple[Line, list[Line]]] = []
    for line in lines:
        if line.keyword == "module":
            _expect(line, 2)
            _identifier(line, line.tokens[1])
            blocks.append((line, []))
        elif line.keyword in ("dim", "map"):
            if not blocks:
                raise ParseError(f"'{line.keyword}' outside a module block", line=line.number)
            blocks[-1][1].append(line)
    return blocks


def parse_modules(lines: list[Line], algebra: FiniteAlgebra) -> dict[str, FDModule]:
    quiver = algebra._presented().quiver
    field = algebra.field
    modules: dict[str, FDModule] = {}

    for header, body in _module_blocks(lines):
        name = header.tokens[1]
        if name in modules:
            raise SemanticError(f"Module {name} declared twice", line=header.number)

        dims: dict[str, int] = {}
        maps: dict[str, DomainMatrix] = {}
        for line in body:
            if line.keyword == "dim":
                _expect(line, 3)
                vertex = line.tokens[1]
                if vertex not in quiver.vertices:
                    raise SemanticError(f"Unknown vertex {vertex}", line=line.number)
                dim = _integer(line, line.tokens[2])
                if dim < 0:
                    raise SemanticError("Dimensions are non-negative", line=line.number)
                dims[vertex] = dim
                continue

            if len(line.tokens) < 2:
                raise ParseError("'map' needs an arrow", line=line.number)

            arrow_name = line.tokens[1]
            if not quiver.has_arrow(arrow_name):
                raise SemanticError(
                    f"Unknown arrow {arrow_name}", line=line.number, arrow=arrow_name
                )

            arrow = quiver.arrow(arrow_name)
            rows, cols = dims.get(arrow.target, 0), dims.get(arrow.source, 0)
            entries = [_coefficient(line, field, token) for token in line.tokens[2:]]
            if len(entries) != rows * cols:
                raise SemanticError(
                    f"Map of {arrow_name} needs {rows} x {cols} entries, got {len(entries)}",
                    line=line.number,
                    arrow=arrow_name,
                )

            maps[arrow_name] = linalg.to_matrix(
                [
                    {col: entries[row * cols + col] for col in range(cols)}
                    for row in range(rows)
                ],
                cols,
                field,
            )

        try:
            modules[name] = FDModule(algebra, dims, maps, name)
        except ValueError as exc:
            raise SemanticError(str(exc), line=header.number) from None

    return modules


def parse_algebra(lines: list[Line]) -> AlgebraWithModules:
    _reject_unknown(
        lines, {"field", "vertex", "arrow", "relation", "module", "dim", "map"}, "alg"
    )
    field = _read_field(lines)
    quiver = _read_quiver(lines)

    relations = []
    for line in lines:
        if line.keyword != "relation":
            continue

        if len(line.tokens) < 3:
            raise ParseError("'relation' needs at least one term", line=line.number)

        terms = _terms(line, line.tokens[1:], quiver, field)
        if len({(path.source, path.target) for _, path in terms}) > 1:
            raise SemanticError("Relation terms are not parallel", line=line.number)

        weight = max(path.weight for _, path in terms)
        series = PathSeries(quiver, field, weight, _collect(terms, field))
        if series:
            relations.append(series)

    algebra = FiniteAlgebra.from_relations(quiver, relations, field)
    return AlgebraWithModules(algebra, parse_modules(lines, algebra))


def parse_module_file(lines: list[Line], algebra: FiniteAlgebra) -> dict[str, FDModule]:
    _reject_unknown(lines, {"field", "module", "dim", "map"}, "mod")

    declarations = [line for line in lines if line.keyword == "field"]
    if declarations and _read_field(lines) != algebra.field:
        raise SemanticError(
            "Module file is over another field than its algebra",
            line=declarations[0].number,
        )

    return parse_modules(lines, algebra)


def parse_tree(lines: list[Line]) -> TwistedTree:
    _reject_unknown(lines, {"field", "vertex", "arrow", "lambda", "mu"}, "tree")
    field = _read_field(lines)
    quiver = _read_quiver(lines)

    twists: dict[str, dict[str, Scalar]] = {"lambda": {}, "mu": {}}
    for line in lines:
        if line.keyword not in twists:
            continue

        _expect(line, 3)
        name = line.tokens[1]
        if not quiver.has_arrow(name):
            raise SemanticError(f"Unknown arrow {name}", line=line.number, arrow=name)

        value = _coefficient(line, field, line.tokens[2])
        if not value:
            raise SemanticError(
                f"Twist {line.keyword}({name}) must be nonzero", line=line.number, arrow=name
            )
        twists[line.keyword][name] = value

    return TwistedTree(quiver, field, twists["lambda"], twists["mu"])


def parse_input(text: str, kind: str, truncation: int) -> Parsed:
    """Validated domain object for one input file"""
    lines = list(tokenize(text))

    match kind:
        case "qpot":
            return parse_potential(lines, truncation)
        case "dgq":
            return parse_dg(lines, truncation)
        case "aug":
            return parse_augmented(lines)
        case "alg":
            return parse_algebra(lines)
        case "tree":
            return parse_tree(lines)
        case "mod":
            raise ParseError("Module files are read together with an .alg file")
        case _:
            raise ParseError(f"Unknown input kind {kind!r}")


def read_inputs(paths: tuple[str, ...], truncation: int) -> Parsed:
    """Parse the first file; a second ``.mod`` file adds modules to an ``.alg``"""
    texts = []
    for path in paths:
        try:
            texts.append(FilePath(path).read_text())
        except OSError as exc:
            raise ParseError(f"Cannot read {path}: {exc.strerror}") from None

    parsed = parse_input(texts[0], kind_of(paths[0]), truncation)

    for path, text in zip(paths[1:], texts[1:]):
        if kind_of(path) != "mod" or not isinstance(parsed, AlgebraWithModules):
            raise ParseError("Only a .mod file may follow an .alg file")

        extra = parse_module_file(list(tokenize(text)), parsed.algebra)
        clash = set(extra) & set(parsed.modules)
        if clash:
            raise SemanticError(f"Module {sorted(clash)[0]} declared twice")

        parsed = AlgebraWithModules(parsed.algebra, {**parsed.modules, **extra})

    return parsed


def format_series(series: PathSeries) -> str:
    if not series:
        return "0"

    return " + ".join(
        series.field.format(coefficient)
        if path.is_trivial
        else f"{series.field.format(coefficient)} {path}"
        for path, coefficient in series.sorted_terms()
    )


def format_dg(A: DGQuiverAlgebra) -> str:
    """``.dgq`` text that parses back to ``A``"""
    lines = [f"field {A.field.spec}"]
    lines.extend(f"vertex {vertex}" for vertex in A.quiver.vertices)
    lines.extend(
        f"arrow {arrow.name} {arrow.source} {arrow.target} {arrow.degree} {arrow.weight}"
        for arrow in A.quiver.arrows
    )
    lines.extend(
        f"d {arrow.name} = {format_series(A.differential[arrow.name])}"
        for arrow in A.quiver.arrows
        if arrow.name in A.differential
    )
    return "\n".join(lines)


__all__ = [
    "AlgebraWithModules",
    "KINDS",
    "QuiverWithPotential",
    "TwistedTree",
    "format_dg",
    "kind_of",
    "parse_input",
    "read_inputs",
]
