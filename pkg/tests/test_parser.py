import random

import pytest

from helpers import rand_poly, rand_weyl
from star_reduce import poly as P
from star_reduce import weyl as W
from star_reduce.errors import ExpressionSyntaxError, IndexOutOfRange, MixedAlgebra
from star_reduce.parser import Generator, infer_algebra, max_index, parse, parse_element, render
from star_reduce.scalars import GaussianRational


def test_examples():
    assert parse_element("q0*p0", "weyl", 1) == W.WeylElement.monomial((1,), (1,)) + GaussianRational(0, 1)
    assert parse_element("(q0 + p0)^2", "weyl", 1) == parse_element("q0^2 + 2*p0*q0 + p0^2 + i", "weyl", 1)
    assert parse_element("z0'", "poly", 1) == parse_element("zb0", "poly", 1)
    assert parse_element("(i*q0)'", "weyl", 1) == parse_element("-i*q0", "weyl", 1)
    assert parse_element("-1/2 + 3/4*i*zb1", "poly", 1).terms[P.PolyMonomial((0, 0), (0, 1))] == GaussianRational(0, "3/4")


def test_inference():
    assert infer_algebra(parse("q0 + 1")) == "weyl"
    assert infer_algebra(parse("z0*zb2")) == "poly"
    assert infer_algebra(parse("3/4")) is None
    assert max_index(parse("q3*p1")) == 3
    assert parse_element("q2").dim == 3 and parse_element("zb2").n == 2
    with pytest.raises(MixedAlgebra):
        parse_element("q0*z0")
    with pytest.raises(IndexOutOfRange):
        parse_element("q3", "weyl", 2)


def test_spans():
    e = parse("2*q10")
    gens = [g for g in (e.factors if hasattr(e, "factors") else []) if isinstance(g, Generator)]
    assert gens and gens[0].span == (2, 5)


@pytest.mark.parametrize(
    "text,position",
    [("", 0), ("q0 +", 4), ("q", 0), ("q0 ** p0", 4), ("2q0", 1), ("(q0", 3), ("q0)", 2), ("x0", 0), ("q0^-1", 3)],
)
def test_syntax_errors(text, position):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(text)
    assert info.value.position == position
    assert info.value.detail["position"] == position


def test_render_examples():
    assert render(parse_element("p0*q0 + 1/2 - i", "weyl", 1)) == "(1/2-i) + p0*q0"
    assert render(W.WeylElement.zero(1)) == "0"
    assert render(parse_element("q0", "weyl", 1), offset=1) == "q1"


def test_render_parse_round_trip():
    rng = random.Random(51)
    for _ in range(250):
        a = rand_weyl(rng, rng.randint(1, 3), 4, 4)
        assert parse_element(render(a), "weyl", a.dim) == a
        f = rand_poly(rng, rng.randint(1, 3), 3, 4)
        assert parse_element(render(f), "poly", f.n) == f
