from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncperm.errors import InvalidInputError
from ncperm.numfield import (
    RATIONALS,
    field_make,
    scalar_arith,
    scalar_sign,
    sturm_root_count,
    two_cos_minpoly,
)

GOLDEN = field_make({5})


def test_field_make_rational_cases():
    for ms in [{3}, {2, 3}, {4}, {6}, {2, 3, 4, 6}]:
        f = field_make(ms)
        assert f.degree == 1
        assert f == RATIONALS


def test_field_make_golden_ratio():
    # minimal polynomial of 2cos(pi/5) is x^2 - x - 1
    assert GOLDEN.degree == 2
    assert GOLDEN.min_poly == (Fraction(-1), Fraction(-1), Fraction(1))


def test_field_make_heptagon():
    f = field_make({7})
    assert f.degree == 3
    assert f.min_poly == (Fraction(1), Fraction(-2), Fraction(-1), Fraction(1))


def test_field_make_rejects_bad_entry():
    with pytest.raises(InvalidInputError):
        field_make({1, 3})


def test_field_make_degree_bound():
    with pytest.raises(InvalidInputError):
        field_make({5, 7})  # needs degree phi(70)/2 = 12
    f = field_make({5, 7}, degree_bound=16)
    assert f.degree == 12
    # the composite really contains both cosines
    t5 = f.two_cos(5)
    assert (t5 * t5 - t5 - 1).is_zero()
    t7 = f.two_cos(7)
    assert (t7 * t7 * t7 - t7 * t7 - 2 * t7 + 1).is_zero()


def test_two_cos_minpoly_sturm_isolation():
    poly = two_cos_minpoly(9)
    # exactly one root in the isolating interval of the built field
    f = field_make({9})
    assert sturm_root_count(poly, f._lo, f._hi) == 1


def test_scalar_arith_examples():
    t = GOLDEN.theta()
    one = GOLDEN.one()
    assert scalar_arith("add", t, one - t) == one
    assert scalar_arith("mul", t, t) == t + 1          # reduction by x^2 - x - 1
    # derived: 1/theta must multiply back to 1, and equals theta - 1
    inv = scalar_arith("div", one, t)
    assert inv * t == one
    assert inv == t - 1


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GOLDEN.one() / GOLDEN.zero()


def test_field_mismatch_rejected():
    with pytest.raises(InvalidInputError):
        GOLDEN.theta() + field_make({7}).theta()


def test_scalar_sign_examples():
    t = GOLDEN.theta()
    assert scalar_sign(GOLDEN.zero()) == 0
    assert scalar_sign(t - 1) == 1                      # theta = phi > 1
    assert scalar_sign(t * t - 3 * t + 1) == -1         # reduces to 2 - 2*theta


def test_sign_against_float():
    f = field_make({7})
    t = f.theta()
    vals = [t, t - 1, t * t - 3, t * t * t - 2 * t, f.rational(Fraction(-3, 7))]
    for v in vals:
        got = v.sign()
        assert got == (0 if abs(float(v)) < 1e-12 else (1 if float(v) > 0 else -1))


def scalars(field):
    frac = st.fractions(min_value=-8, max_value=8, max_denominator=6)
    return st.tuples(*[frac] * field.degree).map(field.from_coeffs)


@given(a=scalars(GOLDEN), b=scalars(GOLDEN), c=scalars(GOLDEN))
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * (GOLDEN.one() / a) == GOLDEN.one()


@given(a=scalars(GOLDEN), b=scalars(GOLDEN))
@settings(max_examples=60, deadline=None)
def test_sign_multiplicative(a, b):
    assert scalar_sign(a) * scalar_sign(b) == scalar_sign(a * b)


@given(x=st.fractions(max_denominator=40), y=st.fractions(max_denominator=40))
@settings(max_examples=60, deadline=None)
def test_degree_one_matches_fraction_arithmetic(x, y):
    a, b = RATIONALS.rational(x), RATIONALS.rational(y)
    assert (a + b).as_fraction() == x + y
    assert (a * b).as_fraction() == x * y
    if y != 0:
        assert (a / b).as_fraction() == x / y
    assert a.sign() == (x > 0) - (x < 0)
