import random
from fractions import Fraction

import numpy as np
import pytest
from geometry_helpers import A2, A3, random_cone, random_vector
from scipy.optimize import nnls

from core.linalg import neg
from geometry import (
    ConeGenerators,
    HalfspaceSystem,
    Polyhedron,
    canonical,
    cone_member,
    cones_equal,
    dd_hrep_to_vrep,
    dd_vrep_to_hrep,
    intersect,
    normal_cone,
)

E = {k: tuple(Fraction(int(i == k)) for i in range(3)) for k in range(3)}


def test_hrep_to_vrep_orthant():
    cone = dd_hrep_to_vrep(HalfspaceSystem(2, ((1, 0), (0, 1))))
    assert set(cone.rays) == {(-1, 0), (0, -1)}
    assert cone.lines == ()


def test_hrep_to_vrep_plane():
    cone = dd_hrep_to_vrep(HalfspaceSystem(3, equalities=((0, 0, 1),)))
    assert cone.rays == ()
    assert cone.lines == ((1, 0, 0), (0, 1, 0))


def test_hrep_to_vrep_empty_interior_gives_origin():
    cone = dd_hrep_to_vrep(HalfspaceSystem(2, ((1, 0), (-1, 0), (0, 1), (0, -1))))
    assert cone.generators == ()


def test_intersection_of_example_normal_cones(c1, c2):
    origin = (0, 0, 0)
    regular = intersect(normal_cone(c1, origin), normal_cone(c2, origin))
    assert regular.rays == ((-1, 2, -2), (0, 1, -1))
    assert regular.lines == ()
    assert cones_equal(regular, ConeGenerators(3, (A2, A3)))


def test_vrep_to_hrep_line():
    system = dd_vrep_to_hrep(ConeGenerators.of(2, lines=[(1, 0)]))
    assert system.inequalities == ()
    assert system.equalities == ((0, 1),)


def test_vrep_to_hrep_gives_primitive_sorted_facets():
    system = dd_vrep_to_hrep(ConeGenerators.of(2, rays=[(2, 0), (0, 3), (1, 1)]))
    assert system.inequalities == ((-1, 0), (0, -1))
    assert system.equalities == ()
    system = dd_vrep_to_hrep(ConeGenerators(3))
    assert system.equalities == (E[0], E[1], E[2])


def test_vrep_to_hrep_round_trip_on_example():
    cone = ConeGenerators(3, (A2, A3))
    system = dd_vrep_to_hrep(cone)
    assert system.contains(A2) and system.contains(A3)
    assert cones_equal(dd_hrep_to_vrep(system), cone)


def test_cone_member_examples():
    quadrant = ConeGenerators.of(2, rays=[(-1, 0), (0, -1)])
    assert cone_member(quadrant, (-1, -1))
    assert not cone_member(quadrant, (1, 0))
    assert cone_member(ConeGenerators(3, (A2, A3)), A3)
    assert cone_member(ConeGenerators(3), (0, 0, 0))
    assert not cone_member(ConeGenerators(3), E[0])


def test_canonical_form():
    cone = ConeGenerators.of(2, rays=[(2, 0), (1, 0), (-3, 0), (1, 1)])
    form = canonical(cone)
    assert form.lines == ((1, 0),)
    assert form.rays == ((0, 1),)
    assert str(form) == "cone{(0, 1)} + span{(1, 0)}"
    assert cones_equal(cone, ConeGenerators.of(2, rays=[(0, 5)], lines=[(-7, 0)]))
    assert not cones_equal(cone, ConeGenerators.of(2, lines=[(1, 0), (0, 1)]))


def _mutually_included(a: ConeGenerators, b: ConeGenerators) -> bool:
    return all(cone_member(b, v) and cone_member(b, neg(v)) for v in a.lines) and all(
        cone_member(b, v) for v in a.rays
    )


def _round_trip(seed: int, cases: int) -> None:
    rng = random.Random(seed)
    for _ in range(cases):
        cone = random_cone(rng, rng.randint(1, 4))
        back = dd_hrep_to_vrep(dd_vrep_to_hrep(cone))
        assert _mutually_included(cone, back) and _mutually_included(back, cone), cone
        assert cones_equal(cone, back)


def test_round_trip_random_cones():
    _round_trip(seed=1, cases=40)


@pytest.mark.slow
def test_round_trip_random_cones_full():
    _round_trip(seed=2, cases=500)


def _nnls_member(cone: ConeGenerators, v) -> bool:
    columns = [*cone.rays, *cone.lines, *(neg(w) for w in cone.lines)]
    if not columns:
        return all(a == 0 for a in v)
    matrix = np.array([[float(c[k]) for c in columns] for k in range(cone.dim)])
    _, residual = nnls(matrix, np.array([float(a) for a in v]))
    return residual < 1e-9


def test_cone_member_matches_nnls_oracle():
    rng = random.Random(3)
    for _ in range(200):
        dim = rng.randint(1, 3)
        cone = random_cone(rng, dim, max_gens=4)
        v = random_vector(rng, dim)
        assert cone_member(cone, v) == _nnls_member(cone, v), (cone, v)


def test_normal_cone_is_polar_of_tangent_cone():
    rng = random.Random(4)
    for _ in range(60):
        dim = rng.randint(2, 3)
        point = random_vector(rng, dim, -2, 2)
        rows = []
        for _ in range(rng.randint(1, 5)):
            c = random_vector(rng, dim)
            if any(c):
                slack = rng.choice([0, 0, 1])
                rows.append((c, sum(a * b for a, b in zip(c, point)) + slack))
        C = Polyhedron.build(dim, le=rows)
        active = [C.normals[j] for j in C.inequalities if C.slack(j, point) == 0]
        tangent = dd_hrep_to_vrep(HalfspaceSystem(dim, tuple(active)))
        polar = dd_hrep_to_vrep(HalfspaceSystem(dim, tangent.rays, tangent.lines))
        assert cones_equal(normal_cone(C, point), polar)
