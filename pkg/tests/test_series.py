import random

import pytest

from dgql.error import IncompatibleError
from dgql.quiver import Arrow, GradedQuiver
from dgql.series import (
    PathSeries,
    TwoSidedIdeal,
    groebner_truncated,
    quotient_dims,
    zero_ideal_quotient,
)

from corpus import F5, QQ, one_loop, three_cycle


def power(quiver, n):
    return quiver.path(*(["x"] * n))


def test_product_drops_heavy_terms():
    Q = one_loop()
    x = PathSeries.monomial(Q, QQ, 3, Q.path("x"))
    xx = x * x

    assert xx.terms == {power(Q, 2): QQ(1)}
    assert (xx * xx).is_zero()


def test_zero_coefficients_are_dropped():
    Q = one_loop()
    x = PathSeries.monomial(Q, QQ, 3, Q.path("x"))

    assert (x - x).is_zero()
    assert not PathSeries(Q, QQ, 3, {Q.path("x"): QQ(0)})


def test_mixing_truncations_is_rejected():
    Q = one_loop()
    x = PathSeries.monomial(Q, QQ, 3, Q.path("x"))

    with pytest.raises(IncompatibleError):
        x + x.truncate(4)

    with pytest.raises(IncompatibleError):
        PathSeries.monomial(three_cycle(), QQ, 3, Q.path("x"))


def test_blocks_split_by_endpoints():
    Q = three_cycle()
    f = PathSeries(
        Q, QQ, 4, {Q.path("a"): QQ(1), Q.path("a", "b"): QQ(2), Q.path("b"): QQ(3)}
    )
    blocks = f.blocks()

    assert list(blocks) == [("u", "v"), ("u", "w"), ("v", "w")]
    assert blocks[("u", "w")].terms == {Q.path("a", "b"): QQ(2)}


def test_format_in_monomial_order():
    Q = three_cycle()
    f = PathSeries(Q, QQ, 4, {Q.path("a", "b"): QQ(-1) / QQ(2), Q.path("c"): QQ(3)})

    assert f.format() == "3 c + -1/2 a b"
    assert PathSeries.zero(Q, QQ, 4).format() == "0"


def test_truncated_polynomial_quotient():
    Q = one_loop()
    relation = PathSeries.monomial(Q, QQ, 6, power(Q, 3))
    quotient = groebner_truncated(TwoSidedIdeal((relation,), 6), 6)
    dims = quotient.dims()

    assert [str(path) for path in quotient.normal_monomials()] == ["e_v", "x", "x x"]
    assert dims.by_weight == (1, 1, 1, 0, 0, 0, 0)
    assert dims.total == 3
    assert dims.finite

    assert quotient.reduce(PathSeries.monomial(Q, QQ, 6, power(Q, 4))).is_zero()
    assert quotient.reduce(PathSeries.monomial(Q, QQ, 6, power(Q, 2))).terms == {
        power(Q, 2): QQ(1)
    }


def test_leading_term_is_the_lightest():
    # x^2 - x^3 differs from x^2 by a unit, so x^2 itself lies in the ideal
    Q = one_loop()
    relation = PathSeries(Q, F5, 6, {power(Q, 2): F5(1), power(Q, 3): F5(-1)})
    quotient = groebner_truncated(TwoSidedIdeal((relation,), 6), 6)

    assert quotient.dims().total == 2
    assert all(path.length >= 2 for path in quotient.rules)


def test_zero_ideal_keeps_every_path():
    Q = one_loop()
    quotient = zero_ideal_quotient(Q, QQ, 3)

    assert quotient.dims().total == 4
    assert not quotient.dims().finite
    assert quotient.rules == {}


def test_block_dimensions_of_cycle_quotient():
    Q = three_cycle()
    N = 6
    relations = [
        PathSeries.monomial(Q, QQ, N, Q.path(*names))
        for names in (("a", "b"), ("b", "c"), ("c", "a"))
    ]
    dims = quotient_dims(groebner_truncated(TwoSidedIdeal(tuple(relations), N), N))

    assert dims.total == 6
    assert dims.by_weight[:3] == (3, 3, 0)
    assert dims.blocks[("u", "v", 1)] == 1
    assert ("u", "w", 2) not in dims.blocks

    report = dims.report()
    assert report.total == 6
    assert report.ok


def test_ideal_rejects_zero_generator():
    Q = one_loop()

    with pytest.raises(ValueError):
        TwoSidedIdeal((PathSeries.zero(Q, QQ, 3),), 3)


def test_scaling_and_homogeneous_degree():
    Q = GradedQuiver(("v",), (Arrow("x", "v", "v", 0), Arrow("y", "v", "v", -1)))
    f = PathSeries(Q, QQ, 4, {Q.path("x", "y"): QQ(1), Q.path("y", "x"): QQ(-1)})

    assert f.homogeneous_degree() == -1
    assert f.scale(QQ(2)).terms == {Q.path("x", "y"): QQ(2), Q.path("y", "x"): QQ(-2)}
    assert f.scale(QQ(0)).is_zero()

    mixed = f + PathSeries.monomial(Q, QQ, 4, Q.path("x"))
    assert mixed.homogeneous_degree() is None
    assert PathSeries.zero(Q, QQ, 4).homogeneous_degree() is None


def two_vertex_quiver() -> GradedQuiver:
    return GradedQuiver(
        ("u", "v"),
        (
            Arrow("x", "u", "u"),
            Arrow("y", "u", "v"),
            Arrow("z", "v", "u"),
            Arrow("w", "v", "v"),
        ),
    )


def random_series(rng: random.Random, Q: GradedQuiver, N: int) -> PathSeries:
    paths = Q.paths(N)
    chosen = rng.sample(paths, rng.randint(1, 5))
    return PathSeries(Q, F5, N, {path: F5.random_nonzero(rng) for path in chosen})


def random_relations(rng: random.Random, Q: GradedQuiver) -> list[PathSeries]:
    """Homogeneous combinations of length two paths, one block each"""
    blocks: dict[tuple[str, str], list] = {}
    for path in Q.paths(2):
        if path.length == 2:
            blocks.setdefault((path.source, path.target), []).append(path)

    relations = []
    for _ in range(rng.randint(1, 3)):
        block = blocks[rng.choice(sorted(blocks))]
        chosen = rng.sample(block, rng.randint(1, len(block)))
        relations.append(
            PathSeries(Q, F5, 2, {path: F5.random_nonzero(rng) for path in chosen})
        )
    return relations


def quotient_of(relations: list[PathSeries], N: int):
    generators = tuple(relation.truncate(N) for relation in relations)
    return groebner_truncated(TwoSidedIdeal(generators, N), N).dims()


@pytest.mark.parametrize("seed", range(10))
def test_product_is_associative_and_distributive(seed):
    rng = random.Random(seed)
    Q = two_vertex_quiver()
    f, g, h = (random_series(rng, Q, 5) for _ in range(3))

    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h


@pytest.mark.parametrize("seed", range(10))
def test_quotient_dims_ignore_generator_order(seed):
    rng = random.Random(seed)
    relations = random_relations(rng, two_vertex_quiver())
    shuffled = relations[:]
    rng.shuffle(shuffled)

    dims = quotient_of(relations, 4)
    again = quotient_of(shuffled, 4)

    assert again.by_weight == dims.by_weight
    assert again.blocks == dims.blocks


@pytest.mark.parametrize("seed", range(10))
def test_quotient_dims_stable_under_larger_truncation(seed):
    rng = random.Random(seed)
    relations = random_relations(rng, two_vertex_quiver())

    small = quotient_of(relations, 3)
    large = quotient_of(relations, 5)

    assert large.by_weight[:4] == small.by_weight
    assert {key: dim for key, dim in large.blocks.items() if key[2] <= 3} == dict(small.blocks)
