from pydantic import BaseModel, ConfigDict


def _render(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"

    if value is None:
        return "none"

    if isinstance(value, (list, tuple)):
        return ",".join(_render(item) for item in value)

    return str(value)


class Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    def items(self) -> dict[str, object]:
        """Flat key/value view used by machine output"""
        return self.model_dump()

    def machine(self) -> str:
        items = self.items()
        return "\n".join(f"{key}={_render(items[key])}" for key in sorted(items))

    def human(self) -> str:
        return "\n".join(
            f"{key}: {_render(value)}" for key, value in self.items().items()
        )

    @property
    def ok(self) -> bool:
        return True


class VerificationReport(Report):
    subject: str
    passed: bool
    message: str
    arrow: str | None = None
    weight: int | None = None
    block: str | None = None
    remainder: str | None = None

    @property
    def ok(self) -> bool:
        return self.passed

    def human(self) -> str:
        if self.passed:
            return f"{self.subject}: passed ({self.message})"

        lines = [f"{self.subject}: FAILED ({self.message})"]
        if self.arrow is not None:
            lines.append(f"arrow: {self.arrow}")
        if self.weight is not None:
            lines.append(f"weight: {self.weight}")
        if self.block is not None:
            lines.append(f"block: {self.block}")
        if self.remainder is not None:
            lines.append(f"remainder: {self.remainder}")
        return "\n".join(lines)


class BlockDimension(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    weight: int | None
    degree: int | None = None
    dim: int


class QuotientReport(Report):
    truncation: int
    by_weight: tuple[int, ...]
    blocks: tuple[BlockDimension, ...]
    total: int
    finite: bool

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {
            "truncation": self.truncation,
            "total": self.total,
            "finite": self.finite,
        }
        for weight, dim in enumerate(self.by_weight):
            items[f"weight.{weight:03d}"] = dim
        for block in self.blocks:
            items[f"block.{block.source}.{block.target}.{block.weight:03d}"] = block.dim
        return items

    def human(self) -> str:
        lines = [
            f"weight {weight}: {dim}"
            for weight, dim in enumerate(self.by_weight)
            if dim
        ]
        verdict = "likely" if self.finite else "not evident"
        lines.append(f"total: {self.total} (finite: {verdict})")
        lines.append(f"exact in weights <= {self.truncation}")
        return "\n".join(lines)


class CohomologyReport(Report):
    truncation: int
    degrees: tuple[int, int]
    exact: bool
    weights: dict[str, int] | None
    entries: tuple[BlockDimension, ...]

    def dims_by_weight(self, degree: int) -> tuple[int, ...]:
        if not self.exact:
            raise ValueError("Approximate tables are not split by weight")

        dims = [0] * (self.truncation + 1)
        for entry in self.entries:
            if entry.degree == degree:
                dims[entry.weight] += entry.dim
        return tuple(dims)

    def total(self, degree: int) -> int:
        return sum(entry.dim for entry in self.entries if entry.degree == degree)

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {
            "truncation": self.truncation,
            "exact": self.exact,
            "degrees": f"{self.degrees[0]}..{self.degrees[1]}",
        }
        for name, weight in (self.weights or {}).items():
            items[f"weight_of.{name}"] = weight
        for degree in range(self.degrees[0], self.degrees[1] + 1):
            items[f"H.{degree}.total"] = self.total(degree)
            if self.exact:
                for weight, dim in enumerate(self.dims_by_weight(degree)):
                    items[f"H.{degree}.w{weight:03d}"] = dim
        return items

    def human(self) -> str:
        label = (
            f"exact in weights <= {self.truncation}"
            if self.exact
            else f"approximate at truncation {self.truncation}"
        )
        lines = [f"cohomology ({label})"]
        for degree in range(self.degrees[0], self.degrees[1] + 1):
            if self.exact:
                dims = " ".join(str(dim) for dim in self.dims_by_weight(degree))
                lines.append(f"H^{degree} by weight: {dims} (total {self.total(degree)})")
            else:
                lines.append(f"H^{degree}: {self.total(degree)}")
        return "\n".join(lines)


class BarReport(Report):
    length: int
    dims: tuple[BlockDimension, ...]
    """Chain counts with ``weight`` holding the tensor length"""
    d_squared: VerificationReport
    coderivation: VerificationReport

    @property
    def ok(self) -> bool:
        return self.d_squared.passed and self.coderivation.passed

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {
            "length": self.length,
            "d_squared": self.d_squared.passed,
            "coderivation": self.coderivation.passed,
        }
        totals: dict[tuple[int, int], int] = {}
        for entry in self.dims:
            key = (entry.weight, entry.degree)
            totals[key] = totals.get(key, 0) + entry.dim
        for (length, degree), dim in sorted(totals.items()):
            items[f"dim.n{length:02d}.deg{degree:+d}"] = dim
        return items

    def human(self) -> str:
        totals: dict[int, dict[int, int]] = {}
        for entry in self.dims:
            row = totals.setdefault(entry.weight, {})
            row[entry.degree] = row.get(entry.degree, 0) + entry.dim

        lines = []
        for length in sorted(totals):
            cells = ", ".join(
                f"deg {degree}: {dim}" for degree, dim in sorted(totals[length].items())
            )
            lines.append(f"length {length}: {cells}")
        lines.append(self.d_squared.human())
        lines.append(self.coderivation.human())
        return "\n".join(lines)


class IsoReport(Report):
    passed: bool
    bijective: bool
    unital: bool
    multiplicative: bool
    message: str
    failure: tuple[str, str] | None = None

    @property
    def ok(self) -> bool:
        return self.passed

    def human(self) -> str:
        verdict = "passed" if self.passed else "FAILED"
        lines = [f"isomorphism check: {verdict} ({self.message})"]
        if self.failure is not None:
            lines.append(f"first failure at ({self.failure[0]}, {self.failure[1]})")
        return "\n".join(lines)


class SymmetryEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: str
    j: str
    degree: int
    dim: int
    dual_dim: int


class SymmetryReport(Report):
    passed: bool
    d: int
    table: tuple[SymmetryEntry, ...]
    violations: tuple[SymmetryEntry, ...]

    @property
    def ok(self) -> bool:
        return self.passed

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {"passed": self.passed, "d": self.d}
        for entry in self.table:
            items[f"dim.{entry.i}.{entry.j}.{entry.degree:+d}"] = entry.dim
        items["violations"] = len(self.violations)
        return items

    def human(self) -> str:
        verdict = "passed" if self.passed else "FAILED"
        lines = [f"graded symmetry (d = {self.d}): {verdict}"]
        for entry in self.table:
            mark = "" if entry.dim == entry.dual_dim else "  <-- violation"
            lines.append(
                f"e_{entry.i} B^{entry.degree} e_{entry.j}: {entry.dim} "
                f"vs e_{entry.j} B^{self.d + 1 - entry.degree} e_{entry.i}: "
                f"{entry.dual_dim}{mark}"
            )
        return "\n".join(lines)


class SelfInjectivityReport(Report):
    accepted: bool
    permutation: dict[str, str] | None
    failing_projective: str | None
    message: str

    @property
    def ok(self) -> bool:
        return self.accepted

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {
            "accepted": self.accepted,
            "failing_projective": self.failing_projective,
            "message": self.message,
        }
        for vertex, image in (self.permutation or {}).items():
            items[f"nakayama.{vertex}"] = image
        return items

    def human(self) -> str:
        if not self.accepted:
            return f"rejected: {self.message}"

        pairs = ", ".join(
            f"{vertex} -> {image}" for vertex, image in (self.permutation or {}).items()
        )
        return f"self-injective; Nakayama permutation: {pairs}"


class HomReport(Report):
    source: str
    target: str
    shift: int
    dimension: int
    cross_checked: bool

    def human(self) -> str:
        return (
            f"stable Hom({self.source}, Sigma^{self.shift} {self.target}) "
            f"has dimension {self.dimension}"
        )


class HomTableReport(Report):
    entries: tuple[HomReport, ...]

    def items(self) -> dict[str, object]:
        items: dict[str, object] = {"pairs": len(self.entries)}
        for entry in self.entries:
            key = f"hom.{entry.source}.{entry.target}.{entry.shift:+d}"
            items[key] = entry.dimension
            if entry.cross_checked:
                items[f"{key}.cross_checked"] = True
        return items

    def human(self) -> str:
        return "\n".join(entry.human() for entry in self.entries)
