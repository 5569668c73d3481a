import math
import random

import pytest

from stonevn import smooth
from stonevn.errors import ContractError, DomainError, ParseError
from stonevn.smooth import compose, evaluate, parse, projection, random_expr


def test_projection_evaluation():
    assert evaluate(parse("x1"), (3.5,)) == 3.5


def test_sin_plus_var():
    assert evaluate(parse("sin(x1) + x2"), (0.0, 1.0)) == 1.0


def test_exp_of_square():
    assert abs(evaluate(parse("exp(x1*x1)"), (2.0,)) - 54.598150033144236) < 1e-12


def test_compose_with_projection_is_inner():
    g = parse("cos(x1) * x2 - 3", arity=2)
    h = compose(projection(1, 1), [g])
    for pt in [(0.3, -1.2), (2.0, 5.0)]:
        assert evaluate(h, pt) == evaluate(g, pt)


def test_compose_exp_after_square():
    e = compose(parse("exp(x1)"), [parse("x1*x1")])
    assert abs(evaluate(e, (1.0,)) - math.e) < 1e-12


def test_compose_sum_duplicated():
    e = compose(parse("x1 + x2"), [parse("x1"), parse("x1")])
    assert evaluate(e, (3.0,)) == 6.0


def test_projections():
    assert evaluate(projection(3, 2), (1.0, 2.0, 3.0)) == 2.0
    assert evaluate(projection(1, 1), (7.0,)) == 7.0
    g1, g2 = parse("sin(x1)"), parse("x1*x1")
    e = compose(projection(2, 1), [g1, g2])
    assert evaluate(e, (0.7,)) == evaluate(g1, (0.7,))
    with pytest.raises(ContractError):
        projection(2, 3)


def test_random_depth_zero_is_a_leaf():
    for seed in range(50):
        root = random_expr(1, 0, seed).root
        assert isinstance(root, (smooth.Var, smooth.Const))


def test_random_is_deterministic():
    assert smooth.to_text(random_expr(3, 4, 17)) == smooth.to_text(random_expr(3, 4, 17))


def test_random_trees_are_valid():
    rng = random.Random(5)
    for _ in range(10_000):
        n = rng.randint(1, 4)
        d = rng.randint(0, 4)
        f = random_expr(n, d, rng)
        smooth.validate(f)
        assert smooth.depth(f) <= d


def test_arity_mismatch():
    with pytest.raises(ContractError):
        evaluate(parse("x1 + x2"), (1.0,))


def test_overflow_is_reported():
    with pytest.raises(DomainError):
        evaluate(parse("exp(exp(x1))"), (10.0,))


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("sin(x1 +")
    assert info.value.line == 1 and info.value.column is not None


@pytest.mark.parametrize("text", ["x1 / x2", "log(x1)", "x0", "x1 ** x2", "y", "abs(x1)"])
def test_parse_rejects_non_smooth(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_accepts_constants_and_powers():
    f = parse("1/2 * x1**3 - -2", arity=2)
    assert f.arity == 2
    assert evaluate(f, (2.0, 9.0)) == 6.0


def test_text_round_trip():
    rng = random.Random(11)
    for _ in range(300):
        f = random_expr(rng.randint(1, 3), rng.randint(0, 3), rng)
        g = parse(smooth.to_text(f), arity=f.arity)
        pt = tuple(rng.uniform(-1, 1) for _ in range(f.arity))
        try:
            a = evaluate(f, pt)
        except DomainError:
            continue
        assert math.isclose(a, evaluate(g, pt), rel_tol=1e-12, abs_tol=1e-12)
