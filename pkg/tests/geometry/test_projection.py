import math
import random
from fractions import Fraction

import pytest
from geometry_helpers import random_vector

from core.errors import EmptyPolyhedronError
from core.linalg import dot, sub
from geometry import Polyhedron, contains, project, rank


def test_project_onto_box():
    box = Polyhedron.build(2, le=[((-1, 0), 0)], eq=[((0, 1), 0)])
    z, distance = project(box, (2, 3))
    assert z == (2, 0)
    assert distance == 3


def test_project_point_inside():
    C = Polyhedron.build(2, le=[((1, 1), 0)])
    assert project(C, (-1, 0)) == ((-1, 0), 0.0)


def test_project_onto_halfspace():
    C = Polyhedron.build(2, le=[((1, 1), 0)])
    z, distance = project(C, (1, 1))
    assert z == (0, 0)
    assert distance == pytest.approx(math.sqrt(2))


def test_float_projection_matches_exact():
    C = Polyhedron.build(3, le=[((1, 1, 0), 1), ((0, -1, 2), 0)], eq=[((1, 0, 1), 0)])
    exact, d_exact = project(C, (2, 1, 1))
    approx, d_float = project(C, (2.0, 1.0, 1.0))
    assert approx == pytest.approx(tuple(float(v) for v in exact))
    assert d_float == pytest.approx(d_exact)


def test_empty_polyhedron():
    with pytest.raises(EmptyPolyhedronError):
        project(Polyhedron.build(1, le=[((1,), -1), ((-1,), -1)]), (0,))
    with pytest.raises(EmptyPolyhedronError):
        project(Polyhedron.build(2, le=[((1, 1), -1), ((-1, -1), -1)]), (0, 0))


def test_projection_satisfies_variational_inequality():
    rng = random.Random(8)
    for _ in range(40):
        dim = rng.randint(2, 3)
        rows = [(random_vector(rng, dim), rng.randint(0, 2)) for _ in range(rng.randint(1, 4))]
        rows = [(c, alpha) for c, alpha in rows if any(c)]
        if not rows:
            continue
        C = Polyhedron.build(dim, le=rows)
        y = random_vector(rng, dim, -5, 5)
        z, _ = project(C, y)
        assert contains(C, z)
        witnesses = [tuple(Fraction(0) for _ in range(dim))]
        for _ in range(2000):
            if len(witnesses) == 50:
                break
            w = tuple(Fraction(rng.randint(-20, 20), 4) for _ in range(dim))
            if contains(C, w):
                witnesses.append(w)
        for w in witnesses:
            assert dot(sub(y, z), sub(w, z)) <= 0


def test_rank_examples():
    assert rank([(1, 1, 1), (1, -3, -2)]) == 2
    assert rank([]) == 0
    assert rank([(Fraction(1, 3), 2), (Fraction(2, 3), 4)]) == 1
    assert rank([(0.1, 0.2, 0.3), (0.2, 0.4, 0.6)]) == 1
    assert rank([(1.0, 0.0), (0.0, 1e-12)]) == 1
    assert rank([(1.0, 0.0), (0.0, 1e-12)], tol=1e-14) == 2
