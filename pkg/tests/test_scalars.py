from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bihom3.scalars import Field, GaussianRational, I, ScalarParseError, format_scalar, parse_scalar

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gaussians = st.builds(GaussianRational, fractions, fractions)


def to_sympy(z: GaussianRational):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)


@pytest.mark.parametrize(
    "text, value",
    [
        ("0", Fraction(0)),
        ("-3", Fraction(-3)),
        ("7/2", Fraction(7, 2)),
        ("-1/3", Fraction(-1, 3)),
        ("i", I),
        ("-i", -I),
        ("3i", GaussianRational(0, 3)),
        ("2*i", GaussianRational(0, 2)),
        ("1+2*i", GaussianRational(1, 2)),
        ("1/2-3/4*i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
        (" 5 ", Fraction(5)),
    ],
)
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "x", "1+", "i2", "--1", "1.5", "2/"])
def test_parse_rejects(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


@pytest.mark.parametrize(
    "value, text",
    [(Fraction(-4, 6), "-2/3"), (I, "1*i"), (GaussianRational(2, -1), "2-1*i"), (GaussianRational(0, Fraction(1, 2)), "1/2*i"), (GaussianRational(5), "5")],
)
def test_format(value, text):
    assert format_scalar(value) == text


@given(gaussians)
def test_format_parse_roundtrip(z):
    back = parse_scalar(format_scalar(z))
    assert back == z
    assert format_scalar(back) == format_scalar(z)


@given(gaussians, gaussians)
def test_arithmetic_matches_sympy(a, b):
    sa, sb = to_sympy(a), to_sympy(b)
    assert sympy.simplify(to_sympy(a + b) - (sa + sb)) == 0
    assert sympy.simplify(to_sympy(a - b) - (sa - sb)) == 0
    assert sympy.expand(to_sympy(a * b) - sa * sb) == 0
    if b:
        assert sympy.simplify(to_sympy(a / b) - sa / sb) == 0


@given(fractions, gaussians)
def test_mixed_operands(q, z):
    g = GaussianRational(q)
    assert q * z == g * z == z * q
    assert q + z == g + z == z + q
    assert q - z == g - z
    assert z - q == z - g


@given(fractions)
def test_real_gaussians_agree_with_fractions(q):
    g = GaussianRational(q)
    assert g == q
    assert hash(g) == hash(q)


def test_conjugate_and_parts():
    z = GaussianRational(3, -4)
    assert z.conjugate() == GaussianRational(3, 4)
    assert (z * z.conjugate()) == 25
    assert z.real == 3 and z.imag == -4
    assert I * I == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1, 1) / GaussianRational(0)


def test_field_coercion():
    assert Field.RATIONAL.coerce("3/4") == Fraction(3, 4)
    assert Field.RATIONAL.coerce(GaussianRational(2)) == Fraction(2)
    assert isinstance(Field.GAUSSIAN.coerce(2), GaussianRational)
    with pytest.raises(ValueError):
        Field.RATIONAL.coerce(I)
    with pytest.raises(TypeError):
        Field.RATIONAL.coerce(0.5)
    with pytest.raises(TypeError):
        Field.RATIONAL.coerce(True)
