import pytest
from geometry_helpers import A1, A2

from geometry import Polyhedron


@pytest.fixture
def c1():
    """R+ x R- x R+ written with the normals -e1, e2, -e3."""
    return Polyhedron.build(3, le=[((-1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, -1), 0)])


@pytest.fixture
def c2():
    return Polyhedron.build(3, le=[(A1, 0), (A2, 0)])
