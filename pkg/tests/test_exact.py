from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from friezegrowth.exact import (
    IncompatibleField,
    NegativeRadicand,
    NotRepresentable,
    Quadratic,
    add,
    format_number,
    kind,
    mul,
    normalize,
    parse_number,
    quadratic,
    sign,
    sqrt_exact,
    squarefree_decomposition,
    sub,
    to_float,
)

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@st.composite
def numbers(draw, d=None):
    d = draw(st.sampled_from(SQUAREFREE)) if d is None else d
    return quadratic(draw(rationals), draw(rationals), d)


def to_sympy(x):
    x = normalize(x)
    if isinstance(x, Quadratic):
        return sympy.Rational(x.p.numerator, x.p.denominator) + \
            sympy.Rational(x.q.numerator, x.q.denominator) * sympy.sqrt(x.d)
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def test_examples():
    assert add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    r2 = quadratic(0, 1, 2)
    assert mul(r2, r2) == 2 and isinstance(mul(r2, r2), int)
    assert mul(quadratic(1, 1, 5), quadratic(1, -1, 5)) == -4
    assert sign(quadratic(1, -1, 2)) == -1
    assert sign(0) == 0
    assert sign(quadratic(3, -2, 2)) == 1
    assert sqrt_exact(4) == 2
    assert sqrt_exact(5) == quadratic(0, 1, 5)
    assert sqrt_exact(8) == Quadratic(Fraction(0), Fraction(2), 2)
    assert to_float(Fraction(1, 2)) == 0.5
    assert to_float(7) == 7.0


def test_to_float_within_one_ulp():
    mpmath.mp.prec = 200
    x = quadratic(1, 1, 5)
    assert to_float(x) == float(1 + mpmath.sqrt(5))
    # catastrophic cancellation in naive float evaluation
    y = quadratic(3, -2, 2) ** 8
    assert to_float(y) == float((3 - 2 * mpmath.sqrt(2)) ** 8)


def test_normalization_collapses_variants():
    assert kind(quadratic(Fraction(3, 1), 0, 7)) == "Integer"
    assert kind(Fraction(6, 4)) == "Rational"
    assert quadratic(1, 1, 4) == 3  # sqrt(4) = 2
    assert quadratic(0, 1, 12) == Quadratic(Fraction(0), Fraction(2), 3)
    assert kind(sub(quadratic(1, 1, 2), quadratic(0, 1, 2))) == "Integer"


def test_mixed_fields_rejected():
    with pytest.raises(IncompatibleField):
        quadratic(0, 1, 2) + quadratic(0, 1, 3)


def test_sqrt_errors():
    with pytest.raises(NegativeRadicand):
        sqrt_exact(-1)
    with pytest.raises(NotRepresentable):
        sqrt_exact(quadratic(1, 1, 2))


@pytest.mark.parametrize("text,value", [
    ("3", 3),
    ("-5/2", Fraction(-5, 2)),
    ("1/2+3/2√5", quadratic(Fraction(1, 2), Fraction(3, 2), 5)),
    ("√2", quadratic(0, 1, 2)),
    ("-sqrt2", quadratic(0, -1, 2)),
    ("sqrt(3)", quadratic(0, 1, 3)),
    ("2√3", quadratic(0, 2, 3)),
    ("1+√5", quadratic(1, 1, 5)),
])
def test_parse(text, value):
    assert parse_number(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "abc", "1/0", "√0"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_number(bad)


def test_ascii_alias():
    x = quadratic(Fraction(1, 2), Fraction(-3, 2), 5)
    assert format_number(x, ascii=True) == "1/2-3/2sqrt5"
    assert parse_number(format_number(x, ascii=True)) == x


@given(numbers())
def test_round_trip(x):
    s = format_number(x)
    assert parse_number(s) == x
    assert format_number(parse_number(s)) == s


@given(st.sampled_from(SQUAREFREE).flatmap(lambda d: st.tuples(numbers(d), numbers(d), numbers(d))))
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert normalize(a * (1 / a if isinstance(a, Quadratic) else Fraction(1) / a)) == 1


@settings(max_examples=60)
@given(st.sampled_from(SQUAREFREE).flatmap(lambda d: st.tuples(numbers(d), numbers(d))))
def test_against_sympy(t):
    a, b = t
    for got, want in ((a + b, to_sympy(a) + to_sympy(b)),
                      (a * b, to_sympy(a) * to_sympy(b)),
                      (a - b, to_sympy(a) - to_sympy(b))):
        assert sympy.simplify(to_sympy(got) - want) == 0
    diff = to_sympy(a) - to_sympy(b)
    assert sign(normalize(a - b)) == (int(sympy.sign(diff)))


@given(numbers())
def test_square_nonnegative(a):
    assert sign(normalize(a * a)) >= 0


@given(rationals.filter(lambda x: x >= 0))
def test_sqrt_squares_back(x):
    r = sqrt_exact(x)
    assert normalize(r * r) == x


@given(numbers())
def test_normalize_idempotent(x):
    assert normalize(normalize(x)) == normalize(x)


@given(st.integers(min_value=1, max_value=10 ** 7))
def test_squarefree_decomposition(n):
    e, d = squarefree_decomposition(n)
    assert e * e * d == n
    assert all(d % (p * p) for p in range(2, int(d ** 0.5) + 2))
