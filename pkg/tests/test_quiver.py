from dataclasses import replace
import random

import pytest

from dgql.error import CompositionError, PreconditionError
from dgql.quiver import Arrow, GradedQuiver, Path, compose_paths, is_tree, unique_walk

from corpus import linear_a, one_loop, random_tree, star, three_cycle


def test_arrow_rejects_bad_weight_and_name():
    with pytest.raises(ValueError):
        Arrow("x", "v", "v", 0, 0)

    with pytest.raises(ValueError):
        Arrow("not an identifier", "v", "v")


def test_quiver_rejects_dangling_vertex():
    with pytest.raises(ValueError):
        GradedQuiver(("u",), (Arrow("a", "u", "w"),))


def test_paths_compose_left_to_right():
    Q = three_cycle()
    ab = Q.path("a", "b")

    assert ab.source == "u"
    assert ab.target == "w"
    assert compose_paths(ab, Q.path("c")) == Q.path("a", "b", "c")
    assert compose_paths(Path.trivial("u"), ab) == ab
    assert str(ab) == "a b"
    assert str(Path.trivial("u")) == "e_u"


def test_composition_checks_endpoints():
    Q = three_cycle()

    with pytest.raises(CompositionError):
        compose_paths(Q.path("a"), Q.path("c"))

    with pytest.raises(CompositionError):
        Q.path("b", "a")


def test_path_degree_and_weight_are_additive():
    Q = GradedQuiver(
        ("v",), (Arrow("x", "v", "v", 0, 1), Arrow("y", "v", "v", -1, 2))
    )
    path = Q.path("x", "y", "y")

    assert path.degree == -2
    assert path.weight == 5
    assert path.length == 3


def test_paths_enumerates_in_monomial_order():
    Q = one_loop()
    paths = Q.paths(3)

    assert [path.length for path in paths] == [0, 1, 2, 3]
    assert paths == sorted(paths, key=lambda path: path.order_key)


def test_paths_degree_window():
    Q = GradedQuiver(("v",), (Arrow("x", "v", "v", 0), Arrow("y", "v", "v", -1)))
    paths = Q.paths(3, min_degree=-1, max_degree=-1)

    assert paths
    assert all(path.degree == -1 for path in paths)
    # one y among at most three letters
    assert len(paths) == 1 + 2 + 3


def test_opposite_reverses_arrows():
    Q = linear_a(2).opposite()
    arrow = Q.arrow("a1")

    assert (arrow.source, arrow.target) == ("v2", "v1")


def test_tree_predicates():
    assert is_tree(linear_a(4))
    assert is_tree(star(3))
    assert not is_tree(three_cycle())
    assert not is_tree(one_loop())


def test_unique_walk_crosses_arrows_backwards():
    Q = star(3)
    walk = unique_walk(Q, "l1", "l2")

    assert walk.end == "l2"
    assert [str(step) for step in walk.steps] == ["s1^-1", "s2"]
    assert walk.final_step.arrow.name == "s2"
    assert not walk.final_step.inverse
    assert walk.reversed().end == "l1"


def test_unique_walk_across_components_is_none():
    Q = GradedQuiver(("u", "v", "w"), (Arrow("a", "u", "v"),))

    assert unique_walk(Q, "u", "w") is None
    assert len(unique_walk(Q, "u", "u")) == 0


def test_unique_walk_needs_a_tree():
    with pytest.raises(PreconditionError):
        unique_walk(three_cycle(), "u", "v")


def test_components_in_vertex_order():
    Q = GradedQuiver(("u", "v", "w", "z"), (Arrow("a", "w", "u"),))

    assert Q.components() == [("u", "w"), ("v",), ("z",)]


def random_quiver(rng: random.Random) -> GradedQuiver:
    vertices = tuple(f"v{index}" for index in range(rng.randint(1, 5)))
    arrows = tuple(
        Arrow(f"a{index}", rng.choice(vertices), rng.choice(vertices))
        for index in range(rng.randint(0, 5))
    )
    return GradedQuiver(vertices, arrows)


@pytest.mark.parametrize("seed", range(30))
def test_tree_predicate_ignores_orientation(seed):
    rng = random.Random(seed)
    Q = random_tree(rng, rng.randint(1, 6)) if seed % 2 else random_quiver(rng)
    flipped = GradedQuiver(
        Q.vertices,
        tuple(
            replace(arrow, source=arrow.target, target=arrow.source)
            if rng.random() < 0.5
            else arrow
            for arrow in Q.arrows
        ),
    )

    assert is_tree(flipped) == is_tree(Q)
    assert is_tree(Q.opposite()) == is_tree(Q)
    if seed % 2:
        assert is_tree(Q)
