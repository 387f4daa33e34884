"""Canonical printing and parsing: print-then-parse is the identity."""

import random
from fractions import Fraction

import pytest

from trisemi import (
    DilationIndex,
    Element,
    Frequency,
    ParseError,
    Scalar,
    element_text,
    mul,
    parse_dilation,
    parse_element,
    parse_frequency,
)

from helpers import random_element


def test_spec_phrase_round_trips():
    samples = [
        "M(1) * D(2)",
        "exp(-i*1) * M(1) * D(1)",
        "(1/2 + 1/3*i) * M(s2) * V(-h)",
        "2 * M(1 + 1/2*s2) + V(2)",
        "M(-ONE@{-1}) * V(-1)",
        "(1 - i)*exp(i*3/4) * D(-2/3*s3)",
        "1",
    ]
    for text in samples:
        x = parse_element(text)
        assert parse_element(element_text(x)) == x


def test_empty_input_is_the_identity():
    assert parse_element("") == Element.identity()
    assert parse_element("   ") == Element.identity()


def test_decimals_parse_to_exact_rationals():
    assert parse_frequency("0.5") == Frequency.rational(Fraction(1, 2))
    assert parse_frequency("-1.25") == Frequency.rational(Fraction(-5, 4))
    assert parse_dilation("0.75") == DilationIndex.unit(Fraction(3, 4))
    x = parse_element("0.1 * M(1)")
    assert x.coefficient((Frequency.rational(1), Frequency.zero(), DilationIndex.zero())) == Scalar.from_rational(Fraction(1, 10))


def test_adjoint_and_products_in_the_grammar():
    x = parse_element("adj(M(1) * D(2))")
    y = parse_element("M(-1) * D(-2) * exp(-i*2)")
    assert x == y
    z = parse_element("M(1) * (D(1) + V(1))")
    assert z == mul(parse_element("M(1)"), parse_element("D(1) + V(1)"))


def test_scalar_division_in_the_grammar():
    x = parse_element("(1/(1 - exp(i*2))) * M(1)")
    c = x.coefficient((Frequency.rational(1), Frequency.zero(), DilationIndex.zero()))
    one = Scalar.one()
    phase = Scalar.rational_angle(Fraction(2))
    assert c * (one - phase) == one


def test_parse_errors_carry_spans():
    with pytest.raises(ParseError) as info:
        parse_element("M(1) +* D(2)")
    assert info.value.span is not None
    start, end = info.value.span
    assert 0 <= start < end <= len("M(1) +* D(2)")
    with pytest.raises(ParseError):
        parse_element("M(1")
    with pytest.raises(ParseError):
        parse_frequency("1 + ")


def test_thousand_random_round_trips():
    rng = random.Random(2024)
    for _ in range(1000):
        x = random_element(rng, max_terms=4)
        text = element_text(x)
        assert parse_element(text) == x, text
