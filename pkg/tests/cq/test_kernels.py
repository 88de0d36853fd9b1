import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from core.errors import RepresentationError
from core.linalg import as_vector, combine, is_independent
from cq import caratheodory_reduce, positive_linear_dependent


def _combination(dep, signed, free):
    vectors = [as_vector(v) for v in (*signed, *free)]
    return combine([*dep.alpha, *dep.beta], vectors, len(vectors[0]))


def test_opposite_signed_vectors_are_dependent():
    dep = positive_linear_dependent([(1, 0), (-1, 0)], [])
    assert dep.alpha == (Fraction(1, 2), Fraction(1, 2))
    assert dep.beta == ()


def test_free_vector_absorbs_signed_vector():
    dep = positive_linear_dependent([(1, 2)], [(-2, -4)])
    assert dep.alpha == (1,)
    assert dep.beta == (Fraction(1, 2),)


def test_dependent_free_family_needs_no_signed_weight():
    dep = positive_linear_dependent([(1, 0)], [(1, 1), (2, 2)])
    assert dep.alpha == (0,)
    assert _combination(dep, [(1, 0)], [(1, 1), (2, 2)]) == (0, 0)
    assert any(b != 0 for b in dep.beta)


@pytest.mark.parametrize(
    "signed, free",
    [
        ([(1, 0), (0, 1)], []),
        ([(1, 0), (1, 1)], [(0, 1)]),
        ([], [(1, 0), (0, 1)]),
        ([], []),
    ],
)
def test_independent_families(signed, free):
    assert positive_linear_dependent(signed, free) is None


def _oracle(signed, free) -> bool:
    if free and np.linalg.matrix_rank(np.array(free, dtype=float)) < len(free):
        return True
    if not signed:
        return False
    n_a, n_b = len(signed), len(free)
    A_eq = np.array([[v[k] for v in (*signed, *free)] for k in range(len(signed[0]))], float)
    A_eq = np.vstack([A_eq, [1] * n_a + [0] * n_b])
    b_eq = [0] * len(signed[0]) + [1]
    bounds = [(0, None)] * n_a + [(None, None)] * n_b
    return linprog(np.zeros(n_a + n_b), A_eq=A_eq, b_eq=b_eq, bounds=bounds).status == 0


def test_positive_dependence_against_float_lp():
    rng = random.Random(7)
    for _ in range(200):
        dim = rng.choice([2, 3])
        signed = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(0, 3))]
        free = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(0, 2))]
        dep = positive_linear_dependent(signed, free)
        assert (dep is not None) == _oracle(signed, free), (signed, free)
        if dep is not None:
            assert all(a >= 0 for a in dep.alpha)
            assert any(c != 0 for c in (*dep.alpha, *dep.beta))
            assert _combination(dep, signed, free) == (0,) * dim


def _random_base(rng, dim, size):
    while True:
        base = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(size)]
        if is_independent([as_vector(b) for b in base]):
            return base


def test_caratheodory_reduction_properties():
    rng = random.Random(11)
    for _ in range(500):
        dim = rng.randint(2, 4)
        base = _random_base(rng, dim, rng.randint(0, dim - 1))
        extras = []
        for _ in range(rng.randint(1, 4)):
            u = tuple(rng.randint(-3, 3) for _ in range(dim))
            extras.append((u, Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))))
        mu = [Fraction(rng.randint(-2, 2)) for _ in base]
        v = combine(mu, [as_vector(b) for b in base], dim)
        v = combine([1, *(a for _, a in extras)], [v, *(as_vector(u) for u, _ in extras)], dim)

        red = caratheodory_reduce(v, base, extras)

        kept = [as_vector(extras[i][0]) for i in red.kept]
        rebuilt = combine(
            [*red.base_coeffs, *red.coeffs], [*(as_vector(b) for b in base), *kept], dim
        )
        assert rebuilt == v
        for i, c in zip(red.kept, red.coeffs):
            assert c * extras[i][1] > 0
        assert is_independent([*(as_vector(b) for b in base), *kept])


def test_caratheodory_on_example_candidate():
    # -∇h1 - ∇h2 + ∇Φ(0)ᵀa3 = 0 rewritten over the equality gradients
    red = caratheodory_reduce((2, -2, -1), [(1, 1, 1), (1, -3, -2)], [((2, -2, -1), 1)])
    assert red.kept == ()
    assert red.base_coeffs == (1, 1)


def test_caratheodory_rejects_dependent_base():
    with pytest.raises(RepresentationError):
        caratheodory_reduce((1, 0), [(1, 0), (2, 0)], [])


def test_caratheodory_rejects_unreachable_vector():
    with pytest.raises(RepresentationError):
        caratheodory_reduce((0, 1), [(1, 0)], [])
