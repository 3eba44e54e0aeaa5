"""Recursive-descent parser for .catt files.

  file ::= { decl }
  decl ::= "coh" ident tele ":" ty  |  "let" ident tele "=" tm
  tele ::= { "(" ident ":" ty ")" }
  ty   ::= "*"  |  tm "->" tm
  tm   ::= atom { atom }
  atom ::= ident  |  "(" tm ")"

Arrow bases are not written; the elaborator infers them.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

from catt_checker.models.errors import CattSyntaxError, DuplicateNameError
from catt_checker.models.surface import (
    App,
    ArrowS,
    Name,
    Star,
    SurfaceDecl,
    SurfaceTerm,
    SurfaceType,
)
from catt_checker.parser.lexer import Tok, Token, tokenize

_ATOM_START = (Tok.IDENT, Tok.LPAREN)


class Parser:
    __slots__ = ("_tokens", "_pos")

    def __init__(self, text: str) -> None:
        self._tokens = tokenize(text)
        self._pos = 0

    # --- Cursor --------------------------------------------------------------

    @property
    def current(self) -> Token:
        return self._tokens[self._pos]

    def _advance(self) -> Token:
        token = self._tokens[self._pos]
        if token.kind is not Tok.EOF:
            self._pos += 1
        return token

    def _expect(self, kind: Tok) -> Token:
        token = self.current
        if token.kind is not kind:
            raise CattSyntaxError(f"Expected {kind.value}, found {_describe(token)}", span=token.span)
        return self._advance()

    def expect_end(self) -> None:
        self._expect(Tok.EOF)

    # --- Productions ---------------------------------------------------------

    def file(self) -> list[SurfaceDecl]:
        decls: list[SurfaceDecl] = []
        while self.current.kind is not Tok.EOF:
            decls.append(self.decl())
        return decls

    def decl(self) -> SurfaceDecl:
        token = self.current
        if token.kind not in (Tok.COH, Tok.LET):
            raise CattSyntaxError(
                f"Expected 'coh' or 'let', found {_describe(token)}", span=token.span
            )
        self._advance()
        name = self._expect(Tok.IDENT).text
        telescope = self.telescope()
        rhs: SurfaceType | SurfaceTerm
        if token.kind is Tok.COH:
            self._expect(Tok.COLON)
            rhs = self.type_()
        else:
            self._expect(Tok.EQUALS)
            rhs = self.term()
        return SurfaceDecl(
            kind=token.text, name=name, telescope=telescope, rhs=rhs, span=token.span
        )

    def telescope(self) -> tuple[tuple[str, SurfaceType], ...]:
        entries: list[tuple[str, SurfaceType]] = []
        seen: set[str] = set()
        while self.current.kind is Tok.LPAREN:
            self._advance()
            var = self._expect(Tok.IDENT)
            if var.text in seen:
                raise DuplicateNameError(f"Variable {var.text!r} is declared twice", span=var.span)
            seen.add(var.text)
            self._expect(Tok.COLON)
            entries.append((var.text, self.type_()))
            self._expect(Tok.RPAREN)
        return tuple(entries)

    def type_(self) -> SurfaceType:
        token = self.current
        if token.kind is Tok.STAR:
            self._advance()
            return Star(token.span)
        src = self.term()
        self._expect(Tok.ARROW)
        tgt = self.term()
        return ArrowS(src, tgt, token.span)

    def term(self) -> SurfaceTerm:
        start = self.current
        head = self.atom()
        args: list[SurfaceTerm] = []
        while self.current.kind in _ATOM_START:
            args.append(self.atom())
        if not args:
            return head
        if not isinstance(head, Name):
            raise CattSyntaxError("Only an identifier can be applied", span=start.span)
        return App(head.ident, tuple(args), start.span)

    def atom(self) -> SurfaceTerm:
        token = self.current
        if token.kind is Tok.IDENT:
            self._advance()
            return Name(token.text, token.span)
        if token.kind is Tok.LPAREN:
            self._advance()
            inner = self.term()
            self._expect(Tok.RPAREN)
            return inner
        raise CattSyntaxError(f"Expected a term, found {_describe(token)}", span=token.span)


def _describe(token: Token) -> str:
    if token.kind is Tok.EOF:
        return "end of input"
    return repr(token.text)


@contextmanager
def _nesting_guard(parser: Parser) -> Iterator[None]:
    """Report runaway nesting as a syntax error at the token reached."""
    try:
        yield
    except RecursionError:
        raise CattSyntaxError(
            "Expression is nested too deeply", span=parser.current.span
        ) from None


def parse(text: str) -> list[SurfaceDecl]:
    """Parse a whole .catt file."""
    parser = Parser(text)
    with _nesting_guard(parser):
        return parser.file()


def parse_term(text: str) -> SurfaceTerm:
    parser = Parser(text)
    with _nesting_guard(parser):
        term = parser.term()
    parser.expect_end()
    return term


def parse_type(text: str) -> SurfaceType:
    parser = Parser(text)
    with _nesting_guard(parser):
        ty = parser.type_()
    parser.expect_end()
    return ty
