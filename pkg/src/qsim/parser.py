"""Recursive-descent parser.

Grammar (one statement per query, no trailing terminator):

    statement  := KEYWORD projection FROM table (',' table)* (WHERE expr)?
    projection := '*' | item (',' item)*
    item       := expr (AS ident)?
    table      := ident (AS? ident)?
    expr       := or
    or         := and (OR and)*
    and        := cmp (AND cmp)*
    cmp        := infix (('=' | '!=' | '<' | '<=' | '>' | '>=') infix)?
    infix      := primary (REGISTERED_OP primary)*
    primary    := literal | ext_literal | column | '(' expr ')'

Comparisons do not chain.  Extension constructs (registered operators and
literal openers) are admitted only under the statement keyword of the syntax
that owns them; under plain SELECT they raise GatedFeature.
"""
from __future__ import annotations

from .ast import (
    STAR,
    AstExpr,
    AstStatement,
    Binary,
    ColumnRef,
    ExtLiteral,
    Literal,
    Token,
    TokenKind,
)
from .errors import GatedFeature, QuerySyntaxError, UnknownKeyword
from .lexer import tokenize

_CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")


def _describe(tok: Token) -> str:
    if tok.kind is TokenKind.EOF:
        return "end of input"
    return repr(tok.text)


class TokenCursor:
    """Mutable position over a token list.

    Extension literal parsers receive the parser's live cursor, so whatever
    they consume stays consumed.
    """

    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind is TokenKind.ERROR:
            raise tok.value
        return tok

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.EOF:
            self._pos += 1
        return tok

    def expect_symbol(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.SYMBOL or tok.text != text:
            raise QuerySyntaxError(
                f"expected {text!r}, found {_describe(tok)}",
                position=tok.position, expected=text, found=tok.text)
        return self.next()


def parse(text: str, profile) -> AstStatement:
    # lex failures are deferred so whichever error sits earliest in the
    # text is the one reported
    cursor = TokenCursor(tokenize(text, profile, defer_errors=True))
    return _Parser(cursor, profile).statement()


class _Parser:
    def __init__(self, cursor: TokenCursor, profile):
        self.cur = cursor
        self.profile = profile
        self.keyword = ""
        self.syntax_gate: str | None = None

    def statement(self) -> AstStatement:
        tok = self.cur.next()
        if tok.kind is TokenKind.IDENT:
            raise UnknownKeyword(f"unknown statement keyword {tok.text!r}",
                                 position=tok.position)
        known = tok.kind is TokenKind.KEYWORD and (
            tok.text == "SELECT" or tok.text in self.profile.statement_keywords)
        if not known:
            raise QuerySyntaxError(
                f"expected a statement keyword, found {_describe(tok)}",
                position=tok.position)
        self.keyword = tok.text
        self.syntax_gate = self.profile.statement_keywords.get(tok.text)

        projection = self._projection()
        self._expect_keyword("FROM")
        tables = [self._table_ref()]
        while self._at_symbol(","):
            self.cur.next()
            tables.append(self._table_ref())
        where = None
        if self._at_keyword("WHERE"):
            self.cur.next()
            where = self.expression()
        tail = self.cur.peek()
        if tail.kind is not TokenKind.EOF:
            raise QuerySyntaxError(
                f"unexpected {_describe(tail)} after statement",
                position=tail.position)
        return AstStatement(keyword=self.keyword, projection=projection,
                            tables=tuple(tables), where=where)

    # statement parts

    def _projection(self):
        if self._at_symbol("*"):
            self.cur.next()
            return STAR
        items = [self._projection_item()]
        while self._at_symbol(","):
            self.cur.next()
            items.append(self._projection_item())
        return tuple(items)

    def _projection_item(self) -> tuple[AstExpr, str | None]:
        expr = self.expression()
        alias = None
        if self._at_keyword("AS"):
            self.cur.next()
            alias = self._expect_ident("alias")
        return expr, alias

    def _table_ref(self) -> tuple[str, str | None]:
        name = self._expect_ident("table name")
        alias = None
        if self._at_keyword("AS"):
            self.cur.next()
            alias = self._expect_ident("table alias")
        elif self.cur.peek().kind is TokenKind.IDENT:
            alias = self.cur.next().text
        return name, alias

    # expressions

    def expression(self) -> AstExpr:
        return self._or_expr()

    def _or_expr(self) -> AstExpr:
        left = self._and_expr()
        while self._at_keyword("OR"):
            pos = self.cur.next().position
            left = Binary("OR", left, self._and_expr(), pos)
        return left

    def _and_expr(self) -> AstExpr:
        left = self._cmp_expr()
        while self._at_keyword("AND"):
            pos = self.cur.next().position
            left = Binary("AND", left, self._cmp_expr(), pos)
        return left

    def _cmp_expr(self) -> AstExpr:
        left = self._infix_expr()
        tok = self.cur.peek()
        if tok.kind is TokenKind.SYMBOL and tok.text in _CMP_OPS:
            self.cur.next()
            right = self._infix_expr()
            return Binary(tok.text, left, right, tok.position)
        return left

    def _infix_expr(self) -> AstExpr:
        left = self._primary()
        while True:
            tok = self.cur.peek()
            if (tok.kind is TokenKind.KEYWORD
                    and tok.text in self.profile.infix_operators):
                self._check_gate(self.profile.infix_operators[tok.text].syntax,
                                 f"operator {tok.text}", tok.position)
                self.cur.next()
                left = Binary(tok.text, left, self._primary(), tok.position)
                continue
            return left

    def _primary(self) -> AstExpr:
        tok = self.cur.peek()
        if tok.kind in (TokenKind.INT, TokenKind.FLOAT, TokenKind.STRING):
            self.cur.next()
            return Literal(tok.value, tok.position)
        if tok.kind is TokenKind.EXT_LIT_OPENER:
            registered = self.profile.literal_openers[tok.text]
            self._check_gate(registered.syntax, f"literal {tok.text!r}",
                             tok.position)
            self.cur.next()
            payload = registered.spec.parse(self.cur)
            return ExtLiteral(registered.syntax, payload, tok.position)
        if tok.kind is TokenKind.IDENT:
            self.cur.next()
            if self._at_symbol("."):
                self.cur.next()
                name = self._expect_ident("column name")
                return ColumnRef(tok.text, name, tok.position)
            return ColumnRef(None, tok.text, tok.position)
        if tok.kind is TokenKind.SYMBOL and tok.text == "(":
            self.cur.next()
            inner = self.expression()
            self.cur.expect_symbol(")")
            return inner
        raise QuerySyntaxError(
            f"expected an expression, found {_describe(tok)}",
            position=tok.position)

    # helpers

    def _check_gate(self, syntax: str, what: str, position: int) -> None:
        if syntax == self.syntax_gate:
            return
        keywords = [kw for kw, s in self.profile.statement_keywords.items()
                    if s == syntax]
        hint = f"; use {keywords[0]}" if keywords else ""
        raise GatedFeature(
            f"{what} is not available under {self.keyword}{hint}",
            position=position)

    def _at_symbol(self, text: str) -> bool:
        tok = self.cur.peek()
        return tok.kind is TokenKind.SYMBOL and tok.text == text

    def _at_keyword(self, text: str) -> bool:
        tok = self.cur.peek()
        return tok.kind is TokenKind.KEYWORD and tok.text == text

    def _expect_keyword(self, text: str) -> Token:
        tok = self.cur.peek()
        if not self._at_keyword(text):
            raise QuerySyntaxError(
                f"expected {text}, found {_describe(tok)}",
                position=tok.position, expected=text, found=tok.text)
        return self.cur.next()

    def _expect_ident(self, what: str) -> str:
        tok = self.cur.peek()
        if tok.kind is not TokenKind.IDENT:
            raise QuerySyntaxError(
                f"expected {what}, found {_describe(tok)}",
                position=tok.position, found=tok.text)
        self.cur.next()
        return tok.text
