"""Tokenizer driven by the active profile.

Registered statement keywords and infix operator names lex as keywords,
registered literal openers get their own token kind, and each opener's
closing character is admitted as a symbol.  Everything else is fixed: the
grammar has no arithmetic, so a '-' can only introduce a negative numeric
literal.
"""
from __future__ import annotations

import re

from .ast import Token, TokenKind
from .errors import LexError

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"-?\d+(\.\d+)?([eE][+-]?\d+)?")
_TWO_CHAR = ("<=", ">=", "!=")
_ONE_CHAR = "=<>(),.*"

_RESERVED = ("SELECT", "FROM", "WHERE", "AND", "OR", "AS")


def tokenize(text: str, profile, defer_errors: bool = False) -> list[Token]:
    """Tokenize the whole input.

    With `defer_errors` a lex failure becomes a trailing ERROR token instead
    of raising, so a parser working through the prefix can report its own,
    earlier error first.
    """
    keywords = set(_RESERVED)
    keywords.update(profile.statement_keywords)
    keywords.update(profile.infix_operators)
    openers = set(profile.literal_openers)
    closers = {reg.spec.closer for reg in profile.literal_openers.values()}

    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            m = _WORD_RE.match(text, i)
            word = m.group(0)
            upper = word.upper()
            if upper in keywords:
                tokens.append(Token(TokenKind.KEYWORD, upper, None, i))
            else:
                tokens.append(Token(TokenKind.IDENT, word.lower(), None, i))
            i = m.end()
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            m = _NUMBER_RE.match(text, i)
            lexeme = m.group(0)
            if m.group(1) or m.group(2):
                tokens.append(Token(TokenKind.FLOAT, lexeme, float(lexeme), i))
            else:
                tokens.append(Token(TokenKind.INT, lexeme, int(lexeme), i))
            i = m.end()
            continue
        if ch == "'":
            try:
                value, end = _scan_string(text, i)
            except LexError as exc:
                if not defer_errors:
                    raise
                tokens.append(Token(TokenKind.ERROR, ch, exc, i))
                break
            tokens.append(Token(TokenKind.STRING, text[i:end], value, i))
            i = end
            continue
        if ch in openers:
            tokens.append(Token(TokenKind.EXT_LIT_OPENER, ch, None, i))
            i += 1
            continue
        pair = text[i:i + 2]
        if pair in _TWO_CHAR:
            tokens.append(Token(TokenKind.SYMBOL, pair, None, i))
            i += 2
            continue
        if ch in _ONE_CHAR or ch in closers:
            tokens.append(Token(TokenKind.SYMBOL, ch, None, i))
            i += 1
            continue
        exc = LexError(f"unexpected character {ch!r}", position=i)
        if not defer_errors:
            raise exc
        tokens.append(Token(TokenKind.ERROR, ch, exc, i))
        break
    tokens.append(Token(TokenKind.EOF, "", None, n))
    return tokens


def _scan_string(text: str, start: int) -> tuple[str, int]:
    """Scan a single-quoted string beginning at `start`; '' escapes a quote."""
    parts: list[str] = []
    i = start + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "'":
            if i + 1 < n and text[i + 1] == "'":
                parts.append("'")
                i += 2
                continue
            return "".join(parts), i + 1
        parts.append(ch)
        i += 1
    raise LexError("unterminated string literal", position=start)
