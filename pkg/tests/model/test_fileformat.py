from fractions import Fraction

import pytest

from disjunctive import SetTag
from model import OrthoKind, OrthoProgram, Program, ProgramFormatError, loads_program, parse_set


def test_example_program(example41):
    assert isinstance(example41, Program)
    assert example41.variables == ("x", "y", "z")
    assert len(example41.h) == 2
    second = example41.blocks[0].gamma.pieces[1]
    assert second.normals == (
        (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2)),
        (Fraction(-1, 2), 1, -1),
    )
    assert example41.objective is None


def test_shorthand_sets(mpec_toy):
    assert mpec_toy.blocks[0].gamma.tag == SetTag.OMEGA_E
    assert str(mpec_toy.objective) == "x1 + x2"
    gamma = parse_set("boxes [0, 1]x[-inf, 0]; [1, 2]x[0, inf]")
    assert gamma.tag == SetTag.BOX_PAIR
    assert len(gamma) == 2
    assert parse_set("Omega_S").tag == SetTag.OMEGA_S


@pytest.mark.parametrize(
    "text, location",
    [
        ("boxes [0, 1]x[inf, 0]", "set, box 1"),
        ("boxes [0, 1]y[0, 1]", "set, box 1"),
        ("boxes [2, 1]x[0, 1]", "set"),
        ("circle", "set"),
    ],
)
def test_bad_sets(text, location):
    with pytest.raises(ProgramFormatError) as exc:
        parse_set(text)
    assert exc.value.location == location


def test_ortho_program():
    P = loads_program('vars = ["a", "b"]\nkind = "mpvc"\nG = ["a"]\nH = ["b"]\n')
    assert isinstance(P, OrthoProgram)
    assert P.kind == OrthoKind.MPVC
    assert P.pairs == 1


@pytest.mark.parametrize(
    "text, location",
    [
        ('vars = ["x"]\nh = ["x +"]\n', "h[0]"),
        ('vars = ["x"]\nobjective = "y"\n', "objective"),
        ('h = ["x"]\n', "vars"),
        ('vars = ["x", "x"]\n', "vars"),
        ('vars = ["x"]\n[[blocks]]\nmap = ["x", "x", "x"]\nset = "omega_E"\n', "blocks[0]"),
        ('vars = ["x"]\n[[blocks]]\nmap = ["x"]\n', "blocks[0]"),
        (
            'vars = ["x"]\n[[blocks]]\nmap = ["x"]\n[[blocks.pieces]]\nle = [[0.5, 0]]\n',
            "blocks[0].pieces[0].le[0][0]",
        ),
        (
            'vars = ["x"]\n[[blocks]]\nmap = ["x"]\n[[blocks.pieces]]\nle = [[1, 0, 0]]\n',
            "blocks[0].pieces[0]",
        ),
        (
            'vars = ["x"]\n[[blocks]]\nmap = ["x"]\n[[blocks.pieces]]\neq = [[0, 1]]\n',
            "blocks[0].pieces[0]",
        ),
        ('vars = ["x"]\nkind = "mpec"\nG = ["x"]\nH = []\n', "program"),
        ('vars = ["x"]\nextra = 1\n', "extra"),
    ],
)
def test_format_errors_carry_locations(text, location):
    with pytest.raises(ProgramFormatError) as exc:
        loads_program(text)
    assert exc.value.location == location
    assert str(exc.value).startswith(location)


def test_rational_strings():
    P = loads_program(
        'vars = ["x"]\n[[blocks]]\nmap = ["x"]\n[[blocks.pieces]]\nle = [["0.25", "-3/6"]]\n'
    )
    C = P.blocks[0].gamma.pieces[0]
    assert C.normals == ((Fraction(1, 4),),)
    assert C.rhs == (Fraction(-1, 2),)


def test_toml_errors_point_at_line_and_column():
    with pytest.raises(ProgramFormatError) as exc:
        loads_program('vars = ["x"]\nh = ["x"\n')
    assert exc.value.location.startswith("line ")
    assert ", column " in exc.value.location
