"""Tests for the .catt tokenizer."""

import pytest

from catt_checker.models.errors import CattSyntaxError, Span
from catt_checker.parser.lexer import Lexer, Tok, tokenize


def _kinds(text):
    return [t.kind for t in tokenize(text)]


def _texts(text):
    return [t.text for t in tokenize(text) if t.kind is not Tok.EOF]


def test_empty_input_is_just_eof():
    tokens = tokenize("")
    assert len(tokens) == 1
    assert tokens[0].kind is Tok.EOF
    assert tokens[0].span == Span(1, 1)


def test_declaration_tokens():
    assert _kinds("coh id (x:*) : x -> x") == [
        Tok.COH, Tok.IDENT, Tok.LPAREN, Tok.IDENT, Tok.COLON, Tok.STAR, Tok.RPAREN,
        Tok.COLON, Tok.IDENT, Tok.ARROW, Tok.IDENT, Tok.EOF,
    ]
    assert _kinds("let sq (x:*) = x")[0] is Tok.LET
    assert Tok.EQUALS in _kinds("let sq (x:*) = x")


def test_arrow_without_spaces_splits_identifiers():
    assert _texts("x->y") == ["x", "->", "y"]
    assert _texts("f'->g'") == ["f'", "->", "g'"]


def test_trailing_dash_belongs_to_identifier():
    assert _texts("unitl- f") == ["unitl-", "f"]
    assert _texts("assoc-->x") == ["assoc-", "->", "x"]


@pytest.mark.parametrize("text, last", [("x", "x"), ("coh id (x:*) : x -> x", "x"),
                                        ("comp f g'", "g'"), ("unitl-", "unitl-")])
def test_identifier_at_end_of_input(text, last):
    tokens = tokenize(text)
    assert tokens[-2].text == last
    assert tokens[-1].kind is Tok.EOF
    assert tokens[-1].span == Span(1, len(text) + 1)


def test_keywords_need_whole_words():
    tokens = tokenize("cohx letter coh")
    assert [t.kind for t in tokens] == [Tok.IDENT, Tok.IDENT, Tok.COH, Tok.EOF]


def test_comments_are_skipped():
    text = "# leading comment\ncoh # trailing\nid"
    assert _texts(text) == ["coh", "id"]


def test_spans_track_lines_and_columns():
    tokens = tokenize("coh id\n  (x:*)")
    assert tokens[0].span == Span(1, 1)
    assert tokens[1].span == Span(1, 5)
    assert tokens[2].span == Span(2, 3)
    assert tokens[3].span == Span(2, 4)
    assert tokens[-1].span == Span(2, 8)


def test_next_token_advances():
    lexer = Lexer("a b")
    assert lexer.next_token().text == "a"
    assert lexer.span == Span(1, 2)
    assert lexer.next_token().text == "b"
    assert lexer.next_token().kind is Tok.EOF
    assert lexer.next_token().kind is Tok.EOF


@pytest.mark.parametrize(
    "text, char, span",
    [
        ("coh id (x:*) : x => x", "'>'", Span(1, 19)),
        ("x\n  $", "'$'", Span(2, 3)),
        ("1x", "'1'", Span(1, 1)),
        ("- x", "'-'", Span(1, 1)),
    ],
)
def test_unexpected_character(text, char, span):
    with pytest.raises(CattSyntaxError, match="Unexpected character") as exc_info:
        tokenize(text)
    err = exc_info.value
    assert char in err.message
    assert err.span == span
    assert err.code == "E01"


def test_non_ascii_letters_rejected():
    with pytest.raises(CattSyntaxError):
        tokenize("coh α (x:*) : x -> x")
