from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersing.errors import ParseError
from hypersing.poly import (
    DEGREVLEX,
    NEGDEGREVLEX,
    Poly,
    join,
    monomials_of_degree,
    monomials_up_to,
    parse_poly,
    parse_vars,
    polys_from_lines,
    weighted_order,
)

XYZ = ["x", "y", "z"]


def test_parse_spec_examples():
    f = parse_poly("x^4+y^4+z^4+x*y*z", XYZ)
    assert len(f) == 4
    assert f.coefficient((1, 1, 1)) == 1
    g = parse_poly("3x^2*y - 1/2 z", XYZ)
    assert g.coefficient((2, 1, 0)) == 3
    assert g.coefficient((0, 0, 1)) == Fraction(-1, 2)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x^2 + w", XYZ)
    assert exc.value.position == 6
    assert "w" in str(exc.value)
    with pytest.raises(ParseError):
        parse_poly("x^-1", XYZ)
    with pytest.raises(ParseError):
        parse_poly("1/0*x", XYZ)
    with pytest.raises(ParseError):
        parse_poly("x^2 +", XYZ)
    with pytest.raises(ParseError):
        parse_poly("", XYZ)


def test_parse_infers_sorted_variables():
    f = parse_poly("z^2 + x")
    assert f.vars == ("x", "z")


def test_parse_vars():
    assert parse_vars("x, y,z") == ["x", "y", "z"]
    with pytest.raises(ValueError):
        parse_vars("x,x")


def test_format_round_trip_examples():
    for text in ["x^4 + y^4 + z^4 + x*y*z", "-x + 1/2*y^3", "0", "7", "-3*x^2*y*z"]:
        f = parse_poly(text, XYZ)
        assert parse_poly(f.format(), XYZ) == f


def test_batch_lines():
    lines = ["# header", "", "x,y | x^2+y^3", "  x | x^2  "]
    assert list(polys_from_lines(lines)) == [(3, "x,y", "x^2+y^3"), (4, "x", "x^2")]


def test_arithmetic_basics():
    x = Poly.variable(XYZ, 0)
    y = Poly.variable(XYZ, 1)
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).is_zero()
    assert ((x + y) ** 3).degree() == 3
    assert (x**2 + y**5).order() == 2


def test_partials_and_truncate():
    f = parse_poly("x^3*y + 2*y^2 + z", XYZ)
    fx, fy, fz = f.partials()
    assert fx == parse_poly("3*x^2*y", XYZ)
    assert fy == parse_poly("x^3 + 4*y", XYZ)
    assert fz == parse_poly("1", XYZ)
    assert f.truncate(3) == parse_poly("2*y^2 + z", XYZ)
    assert f.truncate(2) == parse_poly("z", XYZ)


def test_join_and_restrict():
    f = parse_poly("x^2", ["x"])
    g = parse_poly("y^3", ["y"])
    h = join(f, g)
    assert h.vars == ("x", "y")
    assert h == parse_poly("x^2 + y^3", ["x", "y"])
    with pytest.raises(ValueError):
        join(f, f)
    k = parse_poly("x^2 + x*y + y^3 + z^4", XYZ).restrict([1, 2])
    assert k == parse_poly("y^3 + z^4", ["y", "z"])


def test_monomial_enumeration_counts():
    # C(d + n - 1, n - 1) monomials of degree d in n variables
    assert len(list(monomials_of_degree(3, 4))) == 15
    assert len(list(monomials_up_to(3, 4))) == 35


# ---------------------------------------------------------------------------
# monomial orders: exhaustive checks on all monomials of degree <= 4 in 3 variables
# ---------------------------------------------------------------------------

MONOS = list(monomials_up_to(3, 4))
ORDERS = [
    DEGREVLEX,
    NEGDEGREVLEX,
    weighted_order([1, 2, 3]),
    weighted_order([-1, -2, -1], NEGDEGREVLEX),
]


@pytest.mark.parametrize("order", ORDERS, ids=["degrevlex", "negdegrevlex", "wpos", "wneg"])
def test_order_is_total_and_multiplicative(order):
    keys = {order.key(a) for a in MONOS}
    assert len(keys) == len(MONOS)  # total: distinct monomials never tie
    small = list(monomials_up_to(3, 2))
    for a, b in itertools.combinations(MONOS, 2):
        c = order.compare(a, b)
        assert c == -order.compare(b, a) != 0
        for m in small:
            am = tuple(x + y for x, y in zip(a, m))
            bm = tuple(x + y for x, y in zip(b, m))
            assert order.compare(am, bm) == c


def test_global_and_local_orders():
    one = (0, 0, 0)
    for a in MONOS[1:]:
        assert DEGREVLEX.compare(a, one) > 0
        assert NEGDEGREVLEX.compare(a, one) < 0
    assert not DEGREVLEX.is_local
    assert NEGDEGREVLEX.is_local


def test_degrevlex_tiebreak():
    # x^2 > xy > y^2 > xz > yz > z^2 in degrevlex with x > y > z
    seq = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    for a, b in zip(seq, seq[1:]):
        assert DEGREVLEX.compare(a, b) > 0


def test_weighted_order_rejects_mixed_signs():
    with pytest.raises(ValueError):
        weighted_order([1, -1, 1])


# ---------------------------------------------------------------------------
# ring axioms and parse/format round trip (property based)
# ---------------------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*(st.integers(0, 3) for _ in range(3)))
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda t: Poly(XYZ, t))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f + g - g == f


@settings(max_examples=80, deadline=None)
@given(polys)
def test_format_parse_round_trip(f):
    assert parse_poly(f.format(), XYZ) == f


@settings(max_examples=40, deadline=None)
@given(polys, polys, coeffs)
def test_derivative_linear_and_leibniz(f, g, c):
    for i in range(3):
        assert (f + g.scale(c)).derivative(i) == f.derivative(i) + g.derivative(i).scale(c)
        assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)
