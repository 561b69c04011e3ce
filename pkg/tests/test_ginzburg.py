import logging
import random

import pytest

from dgql.dgalg import check_d_squared, cohomology_dims
from dgql.error import PreconditionError
from dgql.ginzburg import (
    Potential,
    cyclic_derivative,
    doubled_quiver,
    ginzburg_dg,
    jacobian,
    rotate,
)
from dgql.quiver import Arrow, GradedQuiver

from corpus import F3, F7, QQ, one_loop, potential, random_quiver_with_potential, three_cycle


def test_cyclic_derivative_rotates_around_the_arrow():
    Q = three_cycle()
    W = potential(Q, QQ, 6, (1, ("a", "b", "c")))

    assert cyclic_derivative(W, "a").terms == {Q.path("b", "c"): QQ(1)}
    assert cyclic_derivative(W, "c").terms == {Q.path("a", "b"): QQ(1)}

    cube = potential(one_loop(), QQ, 6, (1, ("x", "x", "x")))
    assert cyclic_derivative(cube, "x").terms == {one_loop().path("x", "x"): QQ(3)}


def test_rotate():
    Q = three_cycle()

    assert rotate(Q.path("a", "b", "c")) == Q.path("b", "c", "a")
    assert rotate(Q.path("a", "b", "c"), 3) == Q.path("a", "b", "c")

    with pytest.raises(ValueError):
        rotate(Q.path("a", "b"))


def test_potential_rejects_open_paths_and_heavy_terms():
    Q = three_cycle()

    with pytest.raises(ValueError):
        potential(Q, QQ, 6, (1, ("a", "b")))

    with pytest.raises(ValueError):
        potential(Q, QQ, 2, (1, ("a", "b", "c")))


def test_doubled_quiver_names_and_degrees():
    doubled = doubled_quiver(three_cycle())

    astar = doubled.arrow("astar")
    assert (astar.source, astar.target, astar.degree) == ("v", "u", -1)
    assert doubled.arrow("t_u").degree == -2
    assert len(doubled.arrows) == 3 + 3 + 3


def test_doubled_quiver_rejects_name_collisions():
    Q = GradedQuiver(("v",), (Arrow("a", "v", "v"), Arrow("astar", "v", "v")))

    with pytest.raises(PreconditionError):
        doubled_quiver(Q)


def test_ginzburg_needs_degree_zero_quiver():
    Q = GradedQuiver(("v",), (Arrow("x", "v", "v", -1),))
    W = Potential(Q, QQ, 4, ())

    with pytest.raises(PreconditionError):
        ginzburg_dg(Q, W)


def test_ginzburg_loop_differential():
    Q = one_loop()
    A = ginzburg_dg(Q, potential(Q, QQ, 6, (1, ("x", "x", "x"))))
    D = A.quiver

    assert A.d("xstar").terms == {D.path("x", "x"): QQ(3)}
    assert A.d("t_v").terms == {D.path("x", "xstar"): QQ(1), D.path("xstar", "x"): QQ(-1)}
    assert A.d("x").is_zero()


@pytest.mark.parametrize("field", [QQ, F7], ids=["rational", "prime7"])
@pytest.mark.parametrize("seed", range(10))
def test_random_ginzburg_algebras_square_to_zero(field, seed):
    Q, W = random_quiver_with_potential(random.Random(seed), field, 8)
    A = ginzburg_dg(Q, W)

    assert check_d_squared(A).passed


def test_jacobian_of_cubic_loop():
    Q = one_loop()
    result = jacobian(Q, potential(Q, QQ, 10, (1, ("x", "x", "x"))), 10)

    assert result.dims.by_weight[:3] == (1, 1, 0)
    assert result.dims.total == 2
    assert result.dims.finite
    assert result.cross_checked


def test_jacobian_of_three_cycle():
    Q = three_cycle()
    result = jacobian(Q, potential(Q, QQ, 8, (1, ("a", "b", "c"))), 8)

    assert result.dims.total == 6
    assert result.dims.finite
    assert result.cross_checked


def test_jacobian_matches_ginzburg_h0():
    Q = one_loop()
    W = potential(Q, QQ, 8, (1, ("x", "x", "x", "x")))
    result = jacobian(Q, W, 8, cross_check=False)
    table = cohomology_dims(ginzburg_dg(Q, W), (0, 0), 8)

    assert result.dims.total == 3
    assert table.dims_by_weight(0)[:5] == result.dims.by_weight[:5]


def test_vanishing_derivative_warns(caplog):
    Q = one_loop()
    W = potential(Q, F3, 6, (1, ("x", "x", "x")))

    with caplog.at_level(logging.WARNING, logger="dgql.ginzburg"):
        result = jacobian(Q, W, 6, cross_check=False)

    assert "vanish identically" in caplog.text
    assert result.dims.total == 7
    assert not result.dims.finite


def test_potential_homogeneity():
    assert potential(three_cycle(), QQ, 6, (1, ("a", "b", "c"))).is_homogeneous()
    assert not potential(
        one_loop(), QQ, 6, (1, ("x", "x", "x")), (2, ("x", "x", "x", "x"))
    ).is_homogeneous()
