from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gerstenhaber.errors import ParseError
from gerstenhaber.scalars import I, ONE, ZERO, GaussianRational, gr

rationals = st.builds(Fraction, st.integers(-1000, 1000), st.integers(1, 50))
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_canonical_form_reduces_and_normalizes_sign():
    z = GaussianRational(Fraction(4, -6), Fraction(10, 4))
    assert (z.re.numerator, z.re.denominator) == (-2, 3)
    assert (z.im.numerator, z.im.denominator) == (5, 2)
    assert z.to_string() == "-2/3+5/2*i"


def test_parse_forms():
    assert GaussianRational.parse("1/2+-3/4*i") == GaussianRational("1/2", "-3/4")
    assert GaussianRational.parse("7/3") == GaussianRational("7/3")
    assert GaussianRational.parse("i") == I
    assert GaussianRational.parse("-1/2*i") == GaussianRational(0, "-1/2")
    with pytest.raises(ParseError):
        GaussianRational.parse("one half")


def test_i_squared_and_inverse():
    assert I * I == -ONE
    z = gr(3, 4)
    assert z * z.inverse() == ONE
    assert z.norm2() == 25
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    if b:
        assert (a / b) * b == a


@given(gaussians)
def test_serialization_round_trip(z):
    assert GaussianRational.parse(z.to_string()) == z
    assert GaussianRational.parse(z.to_string()).to_string() == z.to_string()


@given(gaussians, st.integers(min_value=-4, max_value=6))
def test_integer_powers(z, k):
    if not z and k < 0:
        return
    expected = ONE
    for _ in range(abs(k)):
        expected = expected * z
    if k < 0:
        expected = expected.inverse()
    assert z ** k == expected
