import math

import pytest
from hypothesis import given, strategies as st

from stonevn.errors import ContractError, DomainError, ParseError
from stonevn.exact import (QQ, RR, field_add, field_by_name, field_inverse, field_mul,
                           field_neg)

q = QQ.parse
rationals = st.fractions(max_denominator=50).map(QQ.coerce)


def test_add_by_hand():
    assert field_add(q("1/2"), q("1/3")) == q("5/6")
    assert QQ.format(field_add(q("1/2"), q("1/3"))) == "5/6"


def test_additive_identity():
    assert field_add(q("7/9"), QQ.zero) == q("7/9")


def test_mul_by_hand():
    assert field_mul(q("-3"), q("-1/3")) == QQ.one


@pytest.mark.parametrize("x, inv", [("2", "1/2"), ("1", "1"), ("-4/7", "-7/4")])
def test_inverse_examples(x, inv):
    assert QQ.format(field_inverse(q(x))) == inv


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_inverse(QQ.zero)
    with pytest.raises(ZeroDivisionError):
        field_inverse(0.0)


def test_canonical_form():
    x = q("4/-6")
    assert QQ.format(x) == "-2/3"
    assert int(x.denominator) > 0
    assert QQ.format(q(" 10/5 ")) == "2"


@pytest.mark.parametrize("bad", ["1.5", "a/b", "1/0", "", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        q(bad)


def test_coerce_rejects_floats_and_bools():
    with pytest.raises(ContractError):
        QQ.coerce(0.5)
    with pytest.raises(ContractError):
        QQ.coerce(True)


def test_mixed_scalars_rejected():
    with pytest.raises(ContractError):
        field_add(q("1"), 1.0)


def test_real_overflow_is_a_domain_error():
    with pytest.raises(DomainError):
        field_mul(1e300, 1e300)
    with pytest.raises(DomainError):
        RR.coerce(math.inf)
    with pytest.raises(ParseError):
        RR.parse("nan")


def test_real_format_round_trips():
    for x in (0.1, -2.5e-17, 1 / 3):
        assert RR.parse(RR.format(x)) == x


def test_field_by_name():
    assert field_by_name("Q") is QQ and field_by_name("R") is RR
    with pytest.raises(ParseError):
        field_by_name("C")


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert field_add(a, b) == field_add(b, a)
    assert field_mul(a, field_add(b, c)) == field_add(field_mul(a, b), field_mul(a, c))
    assert field_add(a, field_neg(a)) == 0
    if a != 0:
        assert field_mul(a, field_inverse(a)) == 1


@given(rationals)
def test_format_parse_round_trip(a):
    assert q(QQ.format(a)) == a
