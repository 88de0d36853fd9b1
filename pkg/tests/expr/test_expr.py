import random
from fractions import Fraction

import pytest

from core.errors import DimensionMismatchError
from core.linalg import transpose_apply
from expr import (
    ExprSyntaxError,
    UnknownIdentifierError,
    VectorFunc,
    evaluate_at,
    evaluate_gradient,
    gradient,
    jacobian,
    parse,
)
from expr.nodes import Add, Const, Mul, Neg, Pow, Var, to_text

XYZ = ("x", "y", "z")
ORIGIN = (Fraction(0),) * 3


@pytest.fixture
def h1():
    return parse("x^2 + x*y + x + y + z", XYZ)


@pytest.fixture
def phi():
    return VectorFunc.of(
        [parse("x^2 - y + z", XYZ), parse("x + 3*y^2 - z", XYZ), parse("-x + 2*y + z^2", XYZ)],
        XYZ,
    )


def test_parse_builds_expected_tree():
    e = parse("x - 3*y - 2*z", XYZ)
    assert e.node == Add(
        (Var(0), Neg(Mul((Const(Fraction(3)), Var(1)))), Neg(Mul((Const(Fraction(2)), Var(2)))))
    )


def test_parse_zero_and_literals():
    assert parse("0", XYZ).node == Const(Fraction(0))
    assert parse("3/4", ["x"]).node == Const(Fraction(3, 4))
    assert parse("1.25", ["x"]).node == Const(Fraction(5, 4))


def test_unary_minus_binds_before_power():
    assert parse("-x^2", ["x"]).node == Pow(Neg(Var(0)), 2)
    assert evaluate_at(parse("-x^2", ["x"]), [Fraction(3)]) == 9
    assert evaluate_at(parse("-(x^2)", ["x"]), [Fraction(3)]) == -9


@pytest.mark.parametrize(
    "text, offset",
    [("x +", 3), ("x $ y", 2), ("(x + y", 6), ("x^y", 2), ("x^-1", 2), ("1/0", 0)],
)
def test_syntax_errors_report_byte_offset(text, offset):
    with pytest.raises(ExprSyntaxError) as exc:
        parse(text, XYZ)
    assert exc.value.offset == offset


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as exc:
        parse("x + w", XYZ)
    assert exc.value.offset == 4


def test_print_parse_round_trip(h1):
    samples = [
        "x^2 + x*y + x + y + z",
        "-x^2",
        "-(x^2)",
        "(x + y)*(x - y)",
        "x - (y - z)",
        "(x + y) + z",
        "-3/4*x^3 - -y",
        "(x*y)^3",
        "(x^2)^3*(x*y)*z",
        "x - -1",
    ]
    for text in samples:
        e = parse(text, XYZ)
        assert parse(str(e), XYZ).node == e.node, text
    assert to_text(h1.node, XYZ) == "x^2 + x*y + x + y + z"


def test_eval_examples(h1):
    assert h1(ORIGIN) == 0
    assert evaluate_at(parse("5", ["x", "y"]), (Fraction(7), Fraction(-2))) == 5
    assert evaluate_at(parse("x*y", ["x", "y"]), (Fraction(2), Fraction(3))) == 6


def test_eval_dimension_mismatch(h1):
    with pytest.raises(DimensionMismatchError):
        h1((Fraction(0), Fraction(0)))


def test_float_evaluation_mirrors_rational(h1):
    point = (0.5, -1.25, 2.0)
    exact = h1(tuple(Fraction(v) for v in point))
    assert h1(point) == pytest.approx(float(exact))


def test_gradients_at_origin(h1):
    assert gradient(h1)(ORIGIN) == (1, 1, 1)
    assert gradient(parse("x - 3*y - 2*z", XYZ))(ORIGIN) == (1, -3, -2)
    assert gradient(parse("7", XYZ))(ORIGIN) == (0, 0, 0)


def test_jacobian_and_transposed_product(phi):
    rows = jacobian(phi, ORIGIN)
    assert rows == [(0, -1, 1), (1, 0, -1), (-1, 2, 0)]
    a3 = (Fraction(0), Fraction(1), Fraction(-1))
    assert transpose_apply(rows, a3) == (2, -2, -1)


def test_identity_jacobian():
    ident = VectorFunc.of([parse("x", ["x", "y"]), parse("y", ["x", "y"])], ["x", "y"])
    assert jacobian(ident, (Fraction(4), Fraction(-1))) == [(1, 0), (0, 1)]
    with pytest.raises(DimensionMismatchError):
        jacobian(ident, (Fraction(1),))


def test_degree_and_affinity(h1):
    assert h1.degree == 2
    assert not h1.is_affine()
    assert parse("x - 3*y - 2*z", XYZ).is_affine()


def _literal(rng: random.Random) -> str:
    num = rng.randint(0, 5)
    text = f"{num}/{rng.randint(1, 4)}"
    return f"-{text}" if rng.random() < 0.5 else text


def _random_text(rng: random.Random, names, depth: int) -> str:
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(names) if rng.random() < 0.6 else _literal(rng)
    op = rng.choice(["+", "-", "*", "^"])
    left = _random_text(rng, names, depth - 1)
    if op == "^":
        return f"({left})^{rng.randint(0, 2)}"
    return f"({left}) {op} ({_random_text(rng, names, depth - 1)})"


def test_gradient_matches_finite_differences():
    rng = random.Random(11)
    for _ in range(200):
        dim = rng.randint(1, 4)
        names = [f"x{i}" for i in range(dim)]
        e = parse(_random_text(rng, names, 3), names)
        while e.degree > 4:
            e = parse(_random_text(rng, names, 3), names)
        point = [rng.uniform(-1, 1) for _ in range(dim)]
        grad = evaluate_gradient(e, point)
        for k in range(dim):
            step = 1e-5
            up, down = list(point), list(point)
            up[k] += step
            down[k] -= step
            fd = (e(up) - e(down)) / (2 * step)
            assert grad[k] == pytest.approx(fd, rel=1e-6, abs=1e-6)


def test_differentiation_is_linear_and_obeys_product_rule():
    rng = random.Random(5)
    names = ["x", "y"]
    for _ in range(50):
        t1, t2 = _random_text(rng, names, 2), _random_text(rng, names, 2)
        e1, e2 = parse(t1, names), parse(t2, names)
        point = (Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(-3, 3), 3))
        g1, g2 = gradient(e1)(point), gradient(e2)(point)

        combo = parse(f"2*({t1}) - 1/3*({t2})", names)
        expected = tuple(2 * a - Fraction(1, 3) * b for a, b in zip(g1, g2))
        assert gradient(combo)(point) == expected

        product = parse(f"({t1})*({t2})", names)
        v1, v2 = e1(point), e2(point)
        expected = tuple(a * v2 + v1 * b for a, b in zip(g1, g2))
        assert gradient(product)(point) == expected
