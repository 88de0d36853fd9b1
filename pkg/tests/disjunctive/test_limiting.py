import random

import pytest

from core.linalg import primitive
from disjunctive import (
    Family,
    admissible_families,
    limiting_member,
    limiting_nc,
    member_of,
    omega_e,
    omega_s,
    omega_v,
    piece_normal_cones,
    regular_nc,
    uncovered_generators,
)
from geometry import ConeGenerators, canonical, cone_member

ORIGIN3 = (0, 0, 0)
A1, A2, A3 = (1, -1, 1), (-1, 2, -2), (0, 1, -1)


def _cone(rays=(), lines=()):
    dim = len((rays or lines)[0]) if rays or lines else 2
    return canonical(ConeGenerators(dim, tuple(rays), tuple(lines)))


def test_regular_cone_of_example(example_gamma):
    cone = regular_nc(example_gamma, ORIGIN3)
    assert set(cone.rays) == {A2, A3}
    assert cone.lines == ()


def test_regular_cone_of_complementarity_set():
    cone = regular_nc(omega_e(), (0, 0))
    assert cone == _cone(rays=[(-1, 0), (0, -1)])
    assert regular_nc(omega_e(), (2, 0)) == _cone(lines=[(0, 1)])


def test_limiting_generators_of_example(example_gamma):
    L = limiting_nc(example_gamma, ORIGIN3)
    assert set(L.rays) == {A1, A2, A3, (-1, 0, 0), (0, 1, 0), (0, 0, -1)}
    assert L.lines == ()
    assert len(L.strata) == 11
    assert regular_nc(example_gamma, ORIGIN3) in L.stratum_set()


def test_limiting_strata_of_complementarity_set():
    L = limiting_nc(omega_e(), (0, 0))
    assert L.stratum_set() == {
        _cone(rays=[(-1, 0), (0, -1)]),
        _cone(lines=[(1, 0)]),
        _cone(lines=[(0, 1)]),
    }
    assert set(L.rays) == {(-1, 0), (0, -1)}
    assert set(L.lines) == {(1, 0), (0, 1)}


def test_interior_point_has_a_single_trivial_stratum():
    L = limiting_nc(omega_v(), (-1, 1))
    assert len(L.strata) == 1
    assert L.strata[0].cone.is_trivial()


def test_strata_points_are_in_the_set(example_gamma):
    L = limiting_nc(example_gamma, ORIGIN3)
    for s in L.strata:
        assert all(example_gamma.pieces[r].violation(s.point) <= 0 for r in s.pieces)
        assert max(abs(v) for v in s.point) <= L.radius


@pytest.mark.parametrize(
    "v, expected",
    [((-1, -1), True), ((1, 0), True), ((0, 1), True), ((1, 1), False), ((-1, 1), False)],
)
def test_complementarity_membership(v, expected):
    assert limiting_member(omega_e(), (0, 0), v) is expected


def test_switching_membership():
    assert limiting_member(omega_s(), (0, 0), (3, 0))
    assert not limiting_member(omega_s(), (0, 0), (1, 1))


def test_vanishing_strata_at_origin():
    L = limiting_nc(omega_v(), (0, 0))
    assert L.stratum_set() == {
        _cone(rays=[(0, -1)]),
        _cone(lines=[(0, 1)]),
        _cone(rays=[(1, 0)]),
        _cone(),
    }


@pytest.mark.parametrize("factory", [omega_e, omega_v, omega_s, None])
def test_regular_cone_is_inside_limiting_cone(factory, example_gamma):
    gamma = factory() if factory else example_gamma
    x = (0,) * gamma.dim
    L = limiting_nc(gamma, x)
    for g in regular_nc(gamma, x).generators:
        assert member_of(L, g)


@pytest.mark.parametrize("factory", [omega_e, omega_v, omega_s, None])
def test_limiting_cone_is_inside_union_of_piece_cones(factory, example_gamma):
    gamma = factory() if factory else example_gamma
    x = (0,) * gamma.dim
    L = limiting_nc(gamma, x)
    pieces = piece_normal_cones(gamma, x)
    rng = random.Random(11)
    for _ in range(80):
        v = tuple(rng.randint(-3, 3) for _ in range(gamma.dim))
        if member_of(L, v):
            assert any(cone_member(c, v) for c in pieces.values())


@pytest.mark.parametrize("factory", [omega_e, omega_v, omega_s])
def test_two_piece_generators_come_from_pieces(factory):
    gamma = factory()
    L = limiting_nc(gamma, (0, 0))
    assert uncovered_generators(L, piece_normal_cones(gamma, (0, 0))) == []


def test_three_dimensional_example_has_a_new_generator(example_gamma):
    L = limiting_nc(example_gamma, ORIGIN3)
    missing = uncovered_generators(L, piece_normal_cones(example_gamma, ORIGIN3))
    assert [primitive(v) for v in missing] == [A3]


def test_admissible_families_of_complementarity_set():
    families = admissible_families(limiting_nc(omega_e(), (0, 0)))
    assert families[0] == Family()
    assert len(families) == 6
    assert Family(rays=((-1, 0), (0, -1))) in families
    assert all(f.size <= 1 for f in families if f.lines)


def test_admissible_families_are_independent(example_gamma):
    L = limiting_nc(example_gamma, ORIGIN3)
    families = admissible_families(L)
    assert families[0].size == 0
    assert all(a.size <= b.size for a, b in zip(families, families[1:]))
    assert Family(rays=(A2, A1)) in families
    assert not any(set(f.rays) == {(-1, 0, 0), A1} for f in families)
