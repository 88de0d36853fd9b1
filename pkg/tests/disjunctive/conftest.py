from fractions import Fraction

import pytest

from disjunctive import DisjunctiveSet
from geometry import Polyhedron


@pytest.fixture
def example_gamma():
    """R+ x R- x R+ together with {⟨a1, w⟩ ≤ 0, ⟨a2, w⟩ ≤ 0}."""
    a1 = (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2))
    a2 = (Fraction(-1, 2), Fraction(1), Fraction(-1))
    c1 = Polyhedron.build(3, le=[((-1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, -1), 0)])
    c2 = Polyhedron.build(3, le=[(a1, 0), (a2, 0)])
    return DisjunctiveSet((c1, c2))
