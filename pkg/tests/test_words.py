from __future__ import annotations

import pytest

from norm0.core.errors import WordParseError
from norm0.core.words import Word, commutator, parse_word


class TestParse:
    def test_power_group(self) -> None:
        w = parse_word("(w16 S4)^3")
        assert w.letters == (("w16", 1), ("S4", 1)) * 3
        assert len(w) == 6

    def test_identity_forms(self) -> None:
        assert parse_word("") == Word()
        assert parse_word(" 1 ") == Word()
        assert str(Word()) == "1"

    def test_negative_exponent_inverts(self) -> None:
        assert parse_word("(a b)^-1") == parse_word("b^-1 a^-1")
        assert parse_word("S8^-1").letters == (("S8", -1),)

    def test_nested_groups(self) -> None:
        assert parse_word("((a b)^2 c)^2") == parse_word("a b a b c a b a b c")

    def test_star_separator(self) -> None:
        assert parse_word("w3*S4*w3") == parse_word("w3 S4 w3")

    def test_free_reduction(self) -> None:
        assert parse_word("a a^-1") == Word()
        assert parse_word("a b b^-1 a") == parse_word("a^2")
        assert str(parse_word("S8 S8 S8")) == "S8^3"

    @pytest.mark.parametrize("text", ["(a b", "a b)", "a^", "a^0", "a^b", "a $ b", "^2"])
    def test_errors(self, text: str) -> None:
        with pytest.raises(WordParseError):
            parse_word(text)


class TestWordAlgebra:
    def test_mul_pow_inverse(self) -> None:
        x = Word.of("a", "b")
        assert x * x.inverse() == Word()
        assert x**2 == parse_word("a b a b")
        assert x**-2 == parse_word("b^-1 a^-1 b^-1 a^-1")
        assert x**0 == Word()

    def test_append_and_names(self) -> None:
        w = Word.of("w3").append("S4", 2)
        assert str(w) == "w3 S4^2"
        assert w.names() == {"w3", "S4"}
        assert not Word()
        assert w

    def test_commutator(self) -> None:
        x, y = Word.of("a"), Word.of("b")
        assert commutator(x, y) == parse_word("a b a^-1 b^-1")
        assert commutator(x, x) == Word()
