from fractions import Fraction

import pytest
from geometry_helpers import A1, A2

from core.errors import DimensionMismatchError, InfeasiblePointError
from geometry import Polyhedron, active_set, contains, normal_cone

ZERO3 = (Fraction(0),) * 3


@pytest.fixture
def ray_on_axis():
    """R+ x {0}."""
    return Polyhedron.build(2, le=[((-1, 0), 0)], eq=[((0, 1), 0)])


def test_rows_are_validated():
    with pytest.raises(ValueError, match="zero normal"):
        Polyhedron.build(2, le=[((0, 0), 1)])
    with pytest.raises(DimensionMismatchError):
        Polyhedron.build(2, le=[((1, 0, 0), 1)])


def test_active_set(ray_on_axis, c2):
    assert active_set(ray_on_axis, (1, 0)) == []
    assert active_set(ray_on_axis, (0, 0)) == [0]
    assert active_set(c2, ZERO3) == [0, 1]


def test_active_set_rejects_infeasible_points(ray_on_axis):
    with pytest.raises(InfeasiblePointError) as exc:
        active_set(ray_on_axis, (-1, 0))
    assert exc.value.violation == 1
    assert active_set(ray_on_axis, (Fraction(-1, 10**12), 0), tol=1e-9) == [0]


def test_contains(ray_on_axis):
    assert contains(ray_on_axis, (3, 0))
    assert not contains(ray_on_axis, (3, 1))
    assert contains(ray_on_axis, (3.0, 1e-12), tol=1e-9)


def test_normal_cone_examples(c1, ray_on_axis):
    cone = normal_cone(c1, ZERO3)
    assert set(cone.rays) == {(-1, 0, 0), (0, 1, 0), (0, 0, -1)}
    assert cone.lines == ()
    assert cone.independent

    interior = Polyhedron.build(2, le=[((1, 0), 1), ((0, 1), 1)])
    assert normal_cone(interior, (0, 0)).generators == ()

    at_one = normal_cone(ray_on_axis, (1, 0))
    assert at_one.rays == ()
    assert at_one.lines == ((0, 1),)


def test_normal_cone_of_c2(c2):
    cone = normal_cone(c2, ZERO3)
    assert cone.rays == (A1, A2)
    assert cone.independent


def test_normal_cone_promotes_opposite_rays():
    slab = Polyhedron.build(2, le=[((1, 0), 0), ((-1, 0), 0)])
    cone = normal_cone(slab, (0, 5))
    assert cone.rays == ()
    assert cone.lines == ((1, 0),)


def test_normal_cone_without_independent_pair():
    pyramid = Polyhedron.build(
        3, le=[((1, 0, -1), 0), ((-1, 0, -1), 0), ((0, 1, -1), 0), ((0, -1, -1), 0)]
    )
    cone = normal_cone(pyramid, (0, 0, 0))
    assert len(cone.rays) == 4
    assert not cone.independent
