from fractions import Fraction

import pytest

from core.errors import InfeasiblePointError, TagMismatchError
from disjunctive import SetTag, boxes, closed_form_nc, limiting_nc, omega_e, omega_s, omega_v
from geometry import ConeGenerators, canonical

GRID = [Fraction(k, 4) for k in (-8, -4, -2, -1, 0, 1, 2, 4, 8)]


def _span(*vectors):
    return canonical(ConeGenerators(2, (), tuple(vectors)))


def _rays(*vectors):
    return canonical(ConeGenerators(2, tuple(vectors), ()))


def _in_set(gamma, y):
    return any(C.violation(y) <= 0 for C in gamma.pieces)


def test_tags_resolve_to_sets():
    assert closed_form_nc(SetTag.OMEGA_E, (0, 0)) == closed_form_nc(omega_e(), (0, 0))


def test_complementarity_origin():
    L = closed_form_nc(omega_e(), (0, 0))
    assert L.stratum_set() == {_rays((-1, 0), (0, -1)), _span((1, 0)), _span((0, 1))}


def test_complementarity_branch_point():
    L = closed_form_nc(omega_e(), (1, 0))
    assert L.stratum_set() == {_span((0, 1))}


def test_switching_origin():
    L = closed_form_nc(omega_s(), (0, 0))
    assert L.stratum_set() == {ConeGenerators(2), _span((0, 1)), _span((1, 0))}


@pytest.mark.parametrize(
    "y, strata",
    [
        ((-1, 1), [ConeGenerators(2)]),
        ((-1, 0), [ConeGenerators(2), _rays((0, -1))]),
        ((1, 0), [_span((0, 1))]),
        ((0, 1), [ConeGenerators(2), _rays((1, 0))]),
        ((0, 0), [_rays((0, -1)), _span((0, 1)), _rays((1, 0)), ConeGenerators(2)]),
    ],
)
def test_vanishing_strata(y, strata):
    assert closed_form_nc(omega_v(), y).stratum_set() == set(strata)


def test_generic_sets_are_rejected(example_gamma):
    with pytest.raises(TagMismatchError):
        closed_form_nc(example_gamma, (0, 0, 0))
    with pytest.raises(TagMismatchError):
        closed_form_nc(SetTag.GENERIC, (0, 0))


def test_points_outside_are_rejected():
    with pytest.raises(InfeasiblePointError):
        closed_form_nc(omega_e(), (1, 1))


@pytest.mark.parametrize("factory", [omega_e, omega_v, omega_s])
def test_closed_form_agrees_with_enumeration(factory):
    gamma = factory()
    checked = 0
    for a in GRID:
        for b in GRID:
            y = (a, b)
            if not _in_set(gamma, y):
                continue
            checked += 1
            assert closed_form_nc(gamma, y).stratum_set() == limiting_nc(gamma, y).stratum_set()
    assert checked >= 9


@pytest.mark.parametrize(
    "products, y",
    [
        (([(0, 1), (0, 1)], [(1, 2), (0, 1)]), (1, 0)),
        (([(0, 1), (0, 1)], [(1, 2), (1, 2)]), (1, 1)),
        (([(None, 0), (0, 0)], [(0, 0), (None, 3)]), (0, 0)),
    ],
)
def test_box_pairs_agree_with_enumeration(products, y):
    gamma = boxes(*products)
    assert gamma.tag == SetTag.BOX_PAIR
    assert closed_form_nc(gamma, y).stratum_set() == limiting_nc(gamma, y).stratum_set()
