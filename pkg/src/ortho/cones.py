"""Hard-coded normal cones and multiplier sign tables of the Ω sets.

Nothing here goes through the stratum LPs; the tables are checked against
them in the tests.
"""

from collections.abc import Sequence
from fractions import Fraction

from core.errors import InfeasiblePointError
from core.linalg import as_vector
from disjunctive import LimitingGenerators, Stratum
from geometry import ConeGenerators, canonical
from model import OrthoKind
from ortho.index_sets import pair_class
from schema import OrthoCqName

E1, E2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
N1, N2 = (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))

# class -> strata as (step direction, rays, lines, pieces occupied)
_STRATA = {
    OrthoKind.MPEC: {
        "I+0": [((0, 0), (), (E2,), (0,))],
        "I0+": [((0, 0), (), (E1,), (1,))],
        "I00": [
            ((0, 0), (N1, N2), (), (0, 1)),
            ((1, 0), (), (E2,), (0,)),
            ((0, 1), (), (E1,), (1,)),
        ],
    },
    OrthoKind.MPVC: {
        "I-+": [((0, 0), (), (), (0,))],
        "I-0": [((0, 0), (N2,), (), (0, 1)), ((0, 1), (), (), (0,))],
        "I0+": [((0, 0), (E1,), (), (0,)), ((-1, 0), (), (), (0,))],
        "I+0": [((0, 0), (), (E2,), (1,))],
        "I00": [
            ((0, 0), (N2,), (), (0, 1)),
            ((-1, 1), (), (), (0,)),
            ((0, 1), (E1,), (), (0,)),
            ((1, 0), (), (E2,), (1,)),
        ],
    },
    OrthoKind.MPSC: {
        "IH": [((0, 0), (), (E2,), (0,))],
        "IG": [((0, 0), (), (E1,), (1,))],
        "IGH": [
            ((0, 0), (), (), (0, 1)),
            ((1, 0), (), (E2,), (0,)),
            ((0, 1), (), (E1,), (1,)),
        ],
    },
}

# allowed signs of (η_G, η_H) on a biactive pair; 0 pins the entry to zero
SIGN_TABLES: dict[OrthoCqName, tuple[tuple[int, int], ...]] = {
    OrthoCqName.MPEC_RCPLD: ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1)),
    OrthoCqName.MPEC_PRCPLD: (
        (0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (-1, 1), (1, -1)
    ),
    OrthoCqName.MPVC_RCPLD: ((0, 0), (1, 0), (0, 1), (0, -1)),
    OrthoCqName.MPVC_PRCPLD: ((0, 0), (0, 1), (0, -1), (1, 0), (1, -1)),
    OrthoCqName.MPSC_RCPLD: ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)),
}


def pattern_generators(signs: tuple[int, int]) -> tuple[tuple[Fraction, ...], ...]:
    """Signed unit vectors spanning the η entries a pattern leaves free."""
    units = (E1, E2)
    return tuple(tuple(s * c for c in u) for s, u in zip(signs, units) if s != 0)


def _radius(y: Sequence[Fraction]) -> Fraction:
    nonzero = [abs(v) for v in y if v != 0]
    return min(nonzero) / 2 if nonzero else Fraction(1)


def omega_nc(kind: OrthoKind, y: Sequence[object]) -> LimitingGenerators:
    """Limiting normal cone of the Ω set of ``kind`` at ``y``, stratum by stratum."""
    y = as_vector(y)
    label = pair_class(kind, y[0], y[1], 0)
    if label not in _STRATA[kind]:
        raise InfeasiblePointError(f"{list(y)} is not in the {kind} set")
    delta = _radius(y)
    t = delta / 3
    strata = []
    for step, rays, lines, pieces in _STRATA[kind][label]:
        near = tuple(v + t * s for v, s in zip(y, step))
        cone = canonical(ConeGenerators(2, rays, lines))
        strata.append(Stratum(near, cone, pieces))
    return LimitingGenerators.from_strata(2, strata, delta)
