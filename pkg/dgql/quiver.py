from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping
from logging import getLogger
import re

from .error import CompositionError, PreconditionError

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0
    """Cohomological degree"""
    weight: int = 1
    """Positive weight driving truncation, path length by default"""

    def __post_init__(self):
        if not _IDENTIFIER.match(self.name):
            raise ValueError(f"Arrow name {self.name!r} is not an identifier")

        if not isinstance(self.weight, int) or self.weight < 1:
            raise ValueError(
                f"Arrow {self.name} must have a positive integer weight"
            )


@dataclass(frozen=True)
class Path:
    """Trivial path at ``source`` or arrows composed left to right"""

    source: str
    target: str
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if not self.arrows:
            if self.source != self.target:
                raise CompositionError(
                    f"Trivial path cannot run from {self.source} to {self.target}"
                )
            return

        if (
            self.arrows[0].source != self.source
            or self.arrows[-1].target != self.target
        ):
            raise CompositionError("Path endpoints do not match its arrows")

        for left, right in zip(self.arrows, self.arrows[1:]):
            if left.target != right.source:
                raise CompositionError(
                    f"Arrows {left.name} and {right.name} are not composable"
                )

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex)

    @classmethod
    def of(cls, *arrows: Arrow) -> "Path":
        if not arrows:
            raise CompositionError("Use Path.trivial for paths without arrows")

        return cls(arrows[0].source, arrows[-1].target, tuple(arrows))

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def length(self) -> int:
        return len(self.arrows)

    @cached_property
    def degree(self) -> int:
        return sum(arrow.degree for arrow in self.arrows)

    @cached_property
    def weight(self) -> int:
        return sum(arrow.weight for arrow in self.arrows)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(arrow.name for arrow in self.arrows)

    @cached_property
    def order_key(self) -> tuple[int, int, tuple[str, ...]]:
        """Monomial order: weight, then length, then names lexicographically"""
        return self.weight, self.length, self.names

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def __mul__(self, other: "Path") -> "Path":
        return compose_paths(self, other)

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e_{self.source}"

        return " ".join(self.names)


def compose_paths(p: Path, q: Path) -> Path:
    """Concatenation ``pq``: first ``p``, then ``q``"""
    if p.target != q.source:
        raise CompositionError(
            f"Cannot compose path ending at {p.target} "
            f"with path starting at {q.source}"
        )

    if p.is_trivial:
        return q

    if q.is_trivial:
        return p

    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class Step:
    arrow: Arrow
    inverse: bool = False

    @property
    def start(self) -> str:
        return self.arrow.target if self.inverse else self.arrow.source

    @property
    def end(self) -> str:
        return self.arrow.source if self.inverse else self.arrow.target

    def flipped(self) -> "Step":
        return Step(self.arrow, not self.inverse)

    def __str__(self) -> str:
        return f"{self.arrow.name}^-1" if self.inverse else self.arrow.name


@dataclass(frozen=True)
class Walk:
    """Walk in the underlying graph, arrows crossed in either direction"""

    start: str
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        position = self.start
        for step in self.steps:
            if step.start != position:
                raise CompositionError(
                    f"Step {step} does not start at vertex {position}"
                )
            position = step.end

    @property
    def end(self) -> str:
        return self.steps[-1].end if self.steps else self.start

    @property
    def final_step(self) -> Step | None:
        return self.steps[-1] if self.steps else None

    def reversed(self) -> "Walk":
        return Walk(
            self.end, tuple(step.flipped() for step in reversed(self.steps))
        )

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))

        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("Vertex names must be pairwise distinct")

        names = [arrow.name for arrow in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("Arrow names must be pairwise distinct")

        known = set(self.vertices)
        for arrow in self.arrows:
            if arrow.source not in known or arrow.target not in known:
                raise ValueError(
                    f"Arrow {arrow.name} joins vertices outside the quiver"
                )

    @cached_property
    def _by_name(self) -> dict[str, Arrow]:
        return {arrow.name: arrow for arrow in self.arrows}

    @cached_property
    def arrow_set(self) -> frozenset[Arrow]:
        return frozenset(self.arrows)

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"Quiver has no arrow named {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def arrows_from(self, vertex: str) -> tuple[Arrow, ...]:
        return tuple(arrow for arrow in self.arrows if arrow.source == vertex)

    def arrows_to(self, vertex: str) -> tuple[Arrow, ...]:
        return tuple(arrow for arrow in self.arrows if arrow.target == vertex)

    def path(self, *names: str, vertex: str | None = None) -> Path:
        """Path from arrow names; the trivial path needs ``vertex``"""
        if not names:
            if vertex is None:
                raise CompositionError("Trivial path needs a vertex")
            return Path.trivial(vertex)

        return Path.of(*(self.arrow(name) for name in names))

    def opposite(self) -> "GradedQuiver":
        return GradedQuiver(
            self.vertices,
            tuple(
                replace(arrow, source=arrow.target, target=arrow.source)
                for arrow in self.arrows
            ),
        )

    def reweighted(self, weights: Mapping[str, int]) -> "GradedQuiver":
        return GradedQuiver(
            self.vertices,
            tuple(
                replace(arrow, weight=weights.get(arrow.name, arrow.weight))
                for arrow in self.arrows
            ),
        )

    def renamed(self, names: Mapping[str, str]) -> "GradedQuiver":
        return GradedQuiver(
            self.vertices,
            tuple(
                replace(arrow, name=names.get(arrow.name, arrow.name))
                for arrow in self.arrows
            ),
        )

    def components(self) -> list[tuple[str, ...]]:
        """Connected components of the underlying graph, in vertex order"""
        neighbours: dict[str, set[str]] = {vertex: set() for vertex in self.vertices}
        for arrow in self.arrows:
            neighbours[arrow.source].add(arrow.target)
            neighbours[arrow.target].add(arrow.source)

        seen: set[str] = set()
        components = []
        for vertex in self.vertices:
            if vertex in seen:
                continue

            stack, members = [vertex], []
            seen.add(vertex)
            while stack:
                current = stack.pop()
                members.append(current)
                for other in neighbours[current]:
                    if other not in seen:
                        seen.add(other)
                        stack.append(other)

            order = {name: index for index, name in enumerate(self.vertices)}
            components.append(tuple(sorted(members, key=order.__getitem__)))

        return components

    def paths(
        self,
        max_weight: int,
        source: str | None = None,
        min_degree: int | None = None,
        max_degree: int | None = None,
    ) -> list[Path]:
        """All paths of weight at most ``max_weight`` in monomial order.

        Degree bounds prune the search only when they are safe: a lower bound
        when no arrow has positive degree, an upper bound when none is negative.
        """
        prune_low = min_degree is not None and all(
            arrow.degree <= 0 for arrow in self.arrows
        )
        prune_high = max_degree is not None and all(
            arrow.degree >= 0 for arrow in self.arrows
        )

        found: list[Path] = []
        starts = self.vertices if source is None else (source,)

        def extend(path: Path) -> None:
            found.append(path)
            for arrow in self.arrows_from(path.target):
                if path.weight + arrow.weight > max_weight:
                    continue

                degree = path.degree + arrow.degree
                if prune_low and degree < min_degree:
                    continue

                if prune_high and degree > max_degree:
                    continue

                extend(Path(path.source, arrow.target, path.arrows + (arrow,)))

        for vertex in starts:
            extend(Path.trivial(vertex))

        if min_degree is not None or max_degree is not None:
            found = [
                path
                for path in found
                if (min_degree is None or path.degree >= min_degree)
                and (max_degree is None or path.degree <= max_degree)
            ]

        return sorted(found, key=lambda path: (path.order_key, path.source))


def forest_components(Q: GradedQuiver) -> list[tuple[tuple[str, ...], bool]]:
    """Each connected component with whether it is a tree"""
    report = []
    for component in Q.components():
        members = set(component)
        edges = sum(1 for arrow in Q.arrows if arrow.source in members)
        report.append((component, edges == len(component) - 1))

    return report


def is_tree(Q: GradedQuiver) -> bool:
    """Whether the underlying undirected multigraph is a forest"""
    return all(tree for _, tree in forest_components(Q))


def unique_walk(Q: GradedQuiver, j: str, i: str) -> Walk | None:
    """The reduced walk from ``j`` to ``i``, None across components"""
    if not is_tree(Q):
        raise PreconditionError("Unique walks exist only in tree quivers")

    for vertex in (j, i):
        if vertex not in Q.vertices:
            raise PreconditionError(f"Vertex {vertex} is not in the quiver")

    parent: dict[str, Step | None] = {j: None}
    queue = [j]
    while queue:
        current = queue.pop(0)
        if current == i:
            break

        for arrow in Q.arrows:
            for step in (Step(arrow), Step(arrow, inverse=True)):
                if step.start == current and step.end not in parent:
                    parent[step.end] = step
                    queue.append(step.end)

    if i not in parent:
        return None

    steps = []
    position = i
    while parent[position] is not None:
        step = parent[position]
        steps.append(step)
        position = step.start

    walk = Walk(j, tuple(reversed(steps)))

    getLogger("dgql.quiver").debug(
        f"Walk from {j} to {i} has {len(walk)} steps",
        extra={"start": j, "end": i, "steps": [str(step) for step in walk.steps]},
    )

    return walk
