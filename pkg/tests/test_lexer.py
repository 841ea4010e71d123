import pytest

from qsim.ast import TokenKind
from qsim.errors import LexError
from qsim.lexer import tokenize


def kinds(text, profile):
    return [t.kind for t in tokenize(text, profile)]


def lexemes(text, profile):
    return [t.text for t in tokenize(text, profile)][:-1]  # drop EOF


class TestWords:
    def test_reserved_words_are_keywords(self, profile):
        toks = tokenize("select from where and or as", profile)
        assert [t.kind for t in toks[:-1]] == [TokenKind.KEYWORD] * 6
        assert [t.text for t in toks[:-1]] == [
            "SELECT", "FROM", "WHERE", "AND", "OR", "AS"]

    def test_idents_lowercase(self, profile):
        toks = tokenize("Foo BAR_baz", profile)
        assert toks[0].kind == TokenKind.IDENT
        assert toks[0].text == "foo"
        assert toks[1].text == "bar_baz"

    def test_registered_words_lex_as_keywords(self, profile):
        toks = tokenize("simselect to", profile)
        assert [t.kind for t in toks[:-1]] == [TokenKind.KEYWORD] * 2
        assert [t.text for t in toks[:-1]] == ["SIMSELECT", "TO"]

    def test_unregistered_words_stay_idents(self, core_prof):
        # without the extension, TO is just a column-ish name
        toks = tokenize("simselect to", core_prof)
        assert [t.kind for t in toks[:-1]] == [TokenKind.IDENT] * 2

    def test_underscore_leading_ident(self, profile):
        tok = tokenize("_hidden", profile)[0]
        assert tok.kind == TokenKind.IDENT
        assert tok.text == "_hidden"


class TestNumbers:
    def test_int(self, profile):
        tok = tokenize("42", profile)[0]
        assert tok.kind == TokenKind.INT
        assert tok.value == 42

    def test_negative_int(self, profile):
        tok = tokenize("-7", profile)[0]
        assert tok.kind == TokenKind.INT
        assert tok.value == -7

    def test_float_forms(self, profile):
        for text, value in (("2.5", 2.5), ("-0.25", -0.25),
                            ("1e3", 1000.0), ("2.5E-1", 0.25)):
            tok = tokenize(text, profile)[0]
            assert tok.kind == TokenKind.FLOAT
            assert tok.value == value

    def test_minus_without_digit_is_error(self, profile):
        with pytest.raises(LexError) as err:
            tokenize("a - b", profile)
        assert err.value.position == 2

    def test_number_then_symbol(self, profile):
        toks = tokenize("a=5", profile)
        assert [t.kind for t in toks[:-1]] == [
            TokenKind.IDENT, TokenKind.SYMBOL, TokenKind.INT]


class TestStrings:
    def test_simple(self, profile):
        tok = tokenize("'hi'", profile)[0]
        assert tok.kind == TokenKind.STRING
        assert tok.value == "hi"

    def test_doubled_quote_escape(self, profile):
        tok = tokenize("'tiger''s eye'", profile)[0]
        assert tok.value == "tiger's eye"

    def test_empty(self, profile):
        assert tokenize("''", profile)[0].value == ""

    def test_unterminated(self, profile):
        with pytest.raises(LexError, match="unterminated"):
            tokenize("'oops", profile)

    def test_keywords_inside_strings_stay_text(self, profile):
        tok = tokenize("'SELECT'", profile)[0]
        assert tok.kind == TokenKind.STRING
        assert tok.value == "SELECT"


class TestSymbols:
    def test_two_char_before_one_char(self, profile):
        toks = tokenize("<= >= != < > =", profile)
        assert [t.text for t in toks[:-1]] == ["<=", ">=", "!=", "<", ">", "="]
        assert all(t.kind == TokenKind.SYMBOL for t in toks[:-1])

    def test_punctuation(self, profile):
        toks = tokenize("( ) , . *", profile)
        assert [t.text for t in toks[:-1]] == ["(", ")", ",", ".", "*"]

    def test_unexpected_char(self, profile):
        with pytest.raises(LexError) as err:
            tokenize("a ; b", profile)
        assert err.value.position == 2


class TestExtensionLiterals:
    def test_opener_token_under_default_profile(self, profile):
        toks = tokenize("[1, 2]", profile)
        assert toks[0].kind == TokenKind.EXT_LIT_OPENER
        assert toks[0].text == "["
        # closer admitted as a plain symbol
        assert toks[-2].kind == TokenKind.SYMBOL
        assert toks[-2].text == "]"

    def test_opener_rejected_under_core_profile(self, core_prof):
        with pytest.raises(LexError, match="unexpected"):
            tokenize("[1, 2]", core_prof)


class TestPositions:
    def test_offsets_point_at_token_start(self, profile):
        toks = tokenize("SELECT a FROM t", profile)
        assert [t.position for t in toks] == [0, 7, 9, 14, 15]

    def test_eof_token(self, profile):
        toks = tokenize("x", profile)
        assert toks[-1].kind == TokenKind.EOF
        assert toks[-1].position == 1

    def test_empty_input_is_just_eof(self, profile):
        toks = tokenize("   ", profile)
        assert len(toks) == 1
        assert toks[0].kind == TokenKind.EOF


class TestDeferredErrors:
    def test_bad_character_becomes_error_token(self, profile):
        toks = tokenize("a = $ + 1", profile, defer_errors=True)
        kinds = [t.kind for t in toks]
        assert kinds == [TokenKind.IDENT, TokenKind.SYMBOL, TokenKind.ERROR,
                         TokenKind.EOF]
        err = toks[2]
        assert isinstance(err.value, LexError)
        assert err.value.position == 4
        assert err.position == 4

    def test_unterminated_string_defers_too(self, profile):
        toks = tokenize("a = 'oops", profile, defer_errors=True)
        assert toks[-2].kind == TokenKind.ERROR
        assert "unterminated" in toks[-2].value.message

    def test_clean_input_has_no_error_token(self, profile):
        toks = tokenize("a = 1", profile, defer_errors=True)
        assert all(t.kind is not TokenKind.ERROR for t in toks)
