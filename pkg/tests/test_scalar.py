"""Field arithmetic: exact identities, parsing, roots of unity."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from necklace.errors import DivisionByZero, ScalarParseError
from necklace.scalar import (
    ONE,
    ZERO,
    RootContext,
    parse_scalar,
    rational,
    root_of_unity,
    var,
)

from conftest import scalar_pool

pool = st.sampled_from(scalar_pool())


@given(pool, pool, pool)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(pool, pool)
def test_subtraction_and_negation(a, b):
    assert a - b == a + (-b)
    assert -(-a) == a


@given(pool)
def test_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


def test_rationals():
    assert rational(Fraction(2, 6)) == rational(Fraction(1, 3))
    assert rational(5).as_rational() == Fraction(5)
    assert (rational(3) / rational(6)).as_rational() == Fraction(1, 2)
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


def test_roots_of_unity():
    z8 = root_of_unity(8)
    assert z8**8 == ONE
    assert z8**4 == -ONE
    assert sum((root_of_unity(5, k) for k in range(1, 5)), ZERO) == -ONE
    # 1/sqrt(2) realized exactly in the 8th cyclotomic field
    h = (root_of_unity(8, 1) - root_of_unity(8, 3)) / rational(2)
    assert h * h == rational(Fraction(1, 2))


def test_mixed_order_roots_combine():
    assert root_of_unity(4) * root_of_unity(3) == root_of_unity(12, 7)
    assert root_of_unity(6) == -root_of_unity(3, 2)


def test_variables_and_laurent():
    t = var("t")
    assert (t**2 * t**-2) == ONE
    assert (t + ONE) * (t - ONE) == t**2 - ONE
    expr = (t**2 - ONE) / (t - ONE)
    assert expr == t + ONE  # gcd cancellation in the fraction field
    assert t.substitute({"t": rational(3)}) == rational(3)


def test_monomial_parts():
    t, z = var("t"), var("z")
    unit, exps = (rational(-2) * t**3 * z**-1).monomial_parts()
    assert unit.as_rational() == Fraction(-2)
    assert exps == {"t": 3, "z": -1}
    assert not (t + ONE).is_monomial()


def test_parse_errors():
    for bad in ("t +", "zeta(0)", "1/(", "q ** ", "(((("):
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)


def test_parse_grammar_samples():
    assert parse_scalar("zeta(8)^2") == root_of_unity(4)
    assert parse_scalar("-3/4 * t^-2") == rational(Fraction(-3, 4)) * var("t") ** -2
    assert parse_scalar("(t + 1)*(t - 1)") == var("t") ** 2 - ONE


def test_root_context_adjoins_exact_roots():
    ctx = RootContext("t", 3)
    s = ctx.root(1)
    assert s**3 == var(ctx.root_name) ** 3
    t_sub = var("t").substitute({"t": s**3})
    assert t_sub == s**3


def test_complex_evaluation():
    z = root_of_unity(8)
    val = complex(z.complex_at({}))
    assert abs(val - (2**-0.5) * (1 + 1j)) < 1e-12
    t = var("t")
    assert abs(complex((t**2).complex_at({"t": 2.0})) - 4.0) < 1e-12
