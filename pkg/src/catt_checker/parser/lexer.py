"""Tokenizer for .catt source with a moving cursor.

Identifiers are runs of [A-Za-z][A-Za-z0-9_'-]*, except that a `-`
directly followed by `>` ends the identifier, so `unitl-` and `x->y` both
split the intended way. `#` starts a comment running to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from catt_checker.models.errors import CattSyntaxError, Span


class Tok(Enum):
    IDENT = "identifier"
    COH = "'coh'"
    LET = "'let'"
    LPAREN = "'('"
    RPAREN = "')'"
    COLON = "':'"
    EQUALS = "'='"
    STAR = "'*'"
    ARROW = "'->'"
    EOF = "end of input"


KEYWORDS = {"coh": Tok.COH, "let": Tok.LET}

_PUNCT = {
    "(": Tok.LPAREN,
    ")": Tok.RPAREN,
    ":": Tok.COLON,
    "=": Tok.EQUALS,
    "*": Tok.STAR,
}


@dataclass(frozen=True, slots=True)
class Token:
    kind: Tok
    text: str
    span: Span


def _ident_start(ch: str) -> bool:
    return bool(ch) and ch.isascii() and ch.isalpha()


def _ident_part(ch: str) -> bool:
    return bool(ch) and ch.isascii() and (ch.isalnum() or ch in "_'-")


class Lexer:
    """Reads tokens from a source string, tracking line and column."""

    __slots__ = ("_text", "_pos", "_line", "_col")

    def __init__(self, text: str) -> None:
        self._text = text
        self._pos = 0
        self._line = 1
        self._col = 1

    @property
    def span(self) -> Span:
        return Span(self._line, self._col)

    def _peek(self, offset: int = 0) -> str:
        i = self._pos + offset
        return self._text[i] if i < len(self._text) else ""

    def _advance(self) -> str:
        ch = self._text[self._pos]
        self._pos += 1
        if ch == "\n":
            self._line += 1
            self._col = 1
        else:
            self._col += 1
        return ch

    def _skip_blank(self) -> None:
        while self._pos < len(self._text):
            ch = self._peek()
            if ch == "#":
                while self._pos < len(self._text) and self._peek() != "\n":
                    self._advance()
            elif ch.isspace():
                self._advance()
            else:
                return

    def next_token(self) -> Token:
        self._skip_blank()
        start = self.span
        ch = self._peek()
        if not ch:
            return Token(Tok.EOF, "", start)
        if ch == "-" and self._peek(1) == ">":
            self._advance()
            self._advance()
            return Token(Tok.ARROW, "->", start)
        if ch in _PUNCT:
            self._advance()
            return Token(_PUNCT[ch], ch, start)
        if _ident_start(ch):
            chars = [self._advance()]
            while _ident_part(self._peek()):
                if self._peek() == "-" and self._peek(1) == ">":
                    break
                chars.append(self._advance())
            text = "".join(chars)
            return Token(KEYWORDS.get(text, Tok.IDENT), text, start)
        raise CattSyntaxError(f"Unexpected character {ch!r}", span=start)


def tokenize(text: str) -> list[Token]:
    """All tokens of *text*, ending with a single EOF token."""
    lexer = Lexer(text)
    tokens: list[Token] = []
    while True:
        token = lexer.next_token()
        tokens.append(token)
        if token.kind is Tok.EOF:
            return tokens
