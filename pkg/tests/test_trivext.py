import random

import pytest

from dgql.error import PreconditionError
from dgql.quiver import Arrow, GradedQuiver
from dgql.trivext import (
    RadSquareZeroAlgebra,
    RescalingMap,
    cy_symmetry_check,
    graded_dims,
    random_twists,
    rescaling_oracle,
    trivial_extension,
    twisted_dual,
    twisted_pair,
    verify_iso,
    walk_factor,
    walk_rescale_iso,
)

from corpus import F5, F7, QQ, linear_a, random_tree, star, three_cycle


def two_cycle() -> GradedQuiver:
    return GradedQuiver(("u", "v"), (Arrow("a", "u", "v"), Arrow("b", "v", "u")))


def test_basis_names_and_products():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)
    B = trivial_extension(R, twisted_dual(R, {"a1": QQ(2)}, {"a1": QQ(3)}))
    names = [vector.name for vector in B.basis]

    assert names == ["e_v1", "e_v2", "a1", "e_v1star", "e_v2star", "a1star"]

    index = {name: position for position, name in enumerate(names)}
    assert B.multiply_basis(index["a1"], index["a1star"]) == {index["e_v1star"]: QQ(2)}
    assert B.multiply_basis(index["a1star"], index["a1"]) == {index["e_v2star"]: QQ(3)}
    assert B.multiply_basis(index["a1star"], index["a1star"]) == {}

    a1star = B.by_name["a1star"]
    assert (a1star.source, a1star.target) == ("v2", "v1")


def test_twists_must_be_nonzero():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)

    with pytest.raises(ValueError):
        twisted_dual(R, {"a1": QQ(0)})


def test_calabi_yau_parameter_at_least_two():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)

    with pytest.raises(ValueError):
        trivial_extension(R, twisted_dual(R), 1)


@pytest.mark.parametrize("field", [QQ, F5, F7], ids=["rational", "prime5", "prime7"])
@pytest.mark.parametrize("seed", range(50))
def test_walk_rescaling_is_an_isomorphism(field, seed):
    rng = random.Random(seed)
    Q = random_tree(rng, rng.randint(1, 6))
    lam, mu = random_twists(Q, field, rng)

    phi = walk_rescale_iso(Q, lam, mu, field)
    twisted, plain = twisted_pair(Q, lam, mu, field)
    report = verify_iso(phi, twisted, plain)

    assert report.passed, report.message
    assert report.bijective and report.unital and report.multiplicative


@pytest.mark.parametrize("seed", range(6))
def test_rescaling_agrees_with_exhaustive_search(seed):
    rng = random.Random(100 + seed)
    Q = random_tree(rng, rng.randint(2, 3))
    lam, mu = random_twists(Q, F5, rng)

    twisted, plain = twisted_pair(Q, lam, mu, F5)
    assert rescaling_oracle(Q, lam, mu, F5) is not None
    assert verify_iso(walk_rescale_iso(Q, lam, mu, F5), twisted, plain).passed


def test_rescaling_of_a2_over_f7():
    Q = linear_a(2)
    lam, mu = {"a1": F7(2)}, {"a1": F7(3)}

    # stage v1: the walk v2 -> v1 ends with a1 inverse
    assert walk_factor(Q, lam, mu, F7, "v2", "v1") == F7(3)
    assert walk_factor(Q, lam, mu, F7, "v1", "v1") == F7(1)
    # stage v2: the walk v1 -> v2 ends with a1
    assert walk_factor(Q, lam, mu, F7, "v1", "v2") == F7(2)

    phi = walk_rescale_iso(Q, lam, mu, F7)

    # 1/2 = 4 and 1/3 = 5 in F_7
    assert dict(phi.vertex_scale) == {"v1": F7(4), "v2": F7(5)}
    assert dict(phi.arrow_scale) == {"a1": F7(1)}

    twisted, plain = twisted_pair(Q, lam, mu, F7)
    assert verify_iso(phi, twisted, plain).passed


def test_identity_is_not_an_isomorphism_for_a_nontrivial_twist():
    Q = linear_a(2)
    twisted, plain = twisted_pair(Q, {"a1": QQ(2)}, {"a1": QQ(1)}, QQ)
    identity = RescalingMap({"v1": QQ(1), "v2": QQ(1)}, {"a1": QQ(1)})

    report = verify_iso(identity, twisted, plain)

    assert not report.passed
    assert report.bijective and report.unital
    assert not report.multiplicative
    assert report.message == "map is not multiplicative"
    assert report.failure is not None


def test_zero_map_is_not_bijective():
    Q = linear_a(2)
    twisted, plain = twisted_pair(Q, {}, {}, QQ)

    report = verify_iso({}, twisted, plain)

    assert not report.passed
    assert not report.bijective


def test_rescaling_needs_a_tree():
    ones = {"a": QQ(1), "b": QQ(1), "c": QQ(1)}

    with pytest.raises(PreconditionError):
        walk_rescale_iso(three_cycle(), ones, ones, QQ)


def test_cycle_with_twist_has_no_rescaling():
    Q = two_cycle()
    lam = {"a": F5(2), "b": F5(1)}
    mu = {"a": F5(1), "b": F5(1)}

    assert rescaling_oracle(Q, lam, mu, F5) is None


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_graded_symmetry(d, seed):
    rng = random.Random(seed)
    Q = random_tree(rng, rng.randint(1, 6))
    lam, mu = random_twists(Q, F7, rng)
    R = RadSquareZeroAlgebra(Q, F7)
    B = trivial_extension(R, twisted_dual(R, lam, mu), d)

    report = cy_symmetry_check(B)

    assert report.passed
    assert report.d == d
    assert not report.violations


@pytest.mark.parametrize("d", [2, 3])
def test_regraded_dual_breaks_symmetry(d):
    R = RadSquareZeroAlgebra(star(2), QQ)
    B = trivial_extension(R, twisted_dual(R), d)

    report = cy_symmetry_check(B.regraded({"s1star": d + 1}))

    assert not report.passed
    assert not report.ok
    assert {(entry.i, entry.j) for entry in report.violations} == {("l1", "c"), ("c", "l1")}


@pytest.mark.parametrize("d", [2, 3])
def test_regraded_vertex_dual_breaks_symmetry(d):
    R = RadSquareZeroAlgebra(star(2), QQ)
    B = trivial_extension(R, twisted_dual(R), d)

    report = cy_symmetry_check(B.regraded({"e_cstar": d}))

    assert not report.passed
    assert {(entry.i, entry.j) for entry in report.violations} == {("c", "c")}
    assert {entry.degree for entry in report.violations} == {0, 1, d, d + 1}


def test_graded_dims_of_linear_quiver():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)
    dims = graded_dims(trivial_extension(R, twisted_dual(R), 2))

    assert dims == {
        ("v1", "v1", 0): 1,
        ("v2", "v2", 0): 1,
        ("v1", "v2", 1): 1,
        ("v1", "v1", 3): 1,
        ("v2", "v2", 3): 1,
        ("v2", "v1", 2): 1,
    }


def test_graded_dims_need_a_grading():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)

    with pytest.raises(PreconditionError):
        graded_dims(trivial_extension(R, twisted_dual(R)))


def test_symmetry_report_machine_keys():
    R = RadSquareZeroAlgebra(linear_a(2), QQ)
    report = cy_symmetry_check(trivial_extension(R, twisted_dual(R), 2))
    lines = report.machine().splitlines()

    assert "passed=true" in lines
    assert "violations=0" in lines
    assert "dim.v1.v2.+1=1" in lines
