from fractions import Fraction

import pytest
from hypothesis import given

from goldman_torus.expr import Bracket, Leaf, Scale, Sum, evaluate
from goldman_torus.lattice import Element
from goldman_torus.syntax import ParseError, format_element, parse, parse_element
from strategies import elements


class TestParse:
    def test_monomial(self):
        assert parse("a^2b^1") == Element({(2, 1): 1})

    def test_refined_generator(self):
        assert parse("a^-1b^-1 + b + 1") == Element({(-1, -1): 1, (0, 1): 1, (0, 0): 1})

    def test_bracket_query(self):
        q = parse("[a^2b, b]")
        assert q == Bracket(Leaf(Element.basis(2, 1)), Leaf(Element.basis(0, 1)))
        assert evaluate(q) == Element.basis(2, 2, 2)

    @pytest.mark.parametrize(
        "text, terms",
        [
            ("a", {(1, 0): 1}),
            ("ab", {(1, 1): 1}),
            ("aab", {(2, 1): 1}),
            ("b^2 a^-1", {(-1, 2): 1}),
            ("a^0", {(0, 0): 1}),
            ("1", {(0, 0): 1}),
            ("-3", {(0, 0): -3}),
            ("1/2*a^-1b", {(-1, 1): Fraction(1, 2)}),
            ("a/2 - a", {(1, 0): Fraction(-1, 2)}),
            ("2*(a + b) - b", {(1, 0): 2, (0, 1): 1}),
            ("-a^+3", {(3, 0): -1}),
            ("0", {}),
        ],
    )
    def test_elements(self, text, terms):
        assert parse_element(text) == Element(terms)

    def test_nested_bracket_with_scalars(self):
        q = parse("2*[a, [a, b]] + b")
        assert isinstance(q, Sum)
        assert evaluate(q) == Element({(2, 1): 2, (0, 1): 1})
        assert isinstance(parse("-[a, b]"), Scale)

    def test_integer_mode(self):
        assert parse("2*a^3", integral=True).integral
        with pytest.raises(ParseError):
            parse_element("1/2*a", integral=True)

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("", 1, 1),
            ("a +", 1, 4),
            ("ab2", 1, 3),
            ("a * b", 1, 3),
            ("a / b", 1, 3),
            ("[a b]", 1, 5),
            ("a^", 1, 3),
            ("a^x", 1, 3),
            ("a\n + c", 2, 4),
            ("(a", 1, 3),
            ("a / 0", 1, 3),
        ],
    )
    def test_errors_have_positions(self, text, line, column):
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert (exc.value.line, exc.value.column) == (line, column)

    def test_exponent_overflow(self):
        parse(f"a^{2**63 - 1}")
        with pytest.raises(ParseError, match="overflow"):
            parse(f"a^{2**63}")


class TestFormat:
    @pytest.mark.parametrize(
        "terms, text",
        [
            ({}, "0"),
            ({(1, 1): 1}, "a^1b^1"),
            ({(0, 0): 1}, "1"),
            ({(0, 0): Fraction(-1, 2)}, "-1/2"),
            ({(0, -1): 1, (1, 1): -1}, "b^-1 - a^1b^1"),
            ({(-1, 1): Fraction(1, 2)}, "1/2*a^-1b^1"),
            ({(3, 0): -2, (0, 0): 5}, "5 - 2*a^3"),
        ],
    )
    def test_canonical(self, terms, text):
        assert format_element(Element(terms)) == text

    @given(elements())
    def test_round_trip(self, x):
        text = format_element(x)
        assert parse_element(text) == x
        assert format_element(parse_element(text)) == text
