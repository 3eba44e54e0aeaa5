"""Checker errors with stable diagnostic codes.

Every failure the checker can report is a CattError. The root class
subclasses ValueError so callers that only care about "bad input" can keep
catching that.

Codes:
  E01 syntax, E02 scope, E03 type mismatch, E04 not a ps-context,
  E05 side condition, E06 arity, E07 duplicate name
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, slots=True)
class Span:
    """1-based source position of a token or declaration."""

    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class CattError(ValueError):
    """Base class for all checker diagnostics."""

    code = "E00"

    def __init__(self, message: str, *, span: Span | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.span = span
        self.trace: list[str] = []

    def at(self, span: Span) -> CattError:
        """Attach a location unless a more precise one is already set."""
        if self.span is None:
            self.span = span
        return self

    def render(self, path: str) -> str:
        where = f"{path}:{self.span}" if self.span is not None else path
        return f"{where}: error[{self.code}]: {self.message}"


class CattSyntaxError(CattError):
    code = "E01"


class ScopeError(CattError):
    code = "E02"


class TypeMismatchError(CattError):
    code = "E03"


class PsShapeError(CattError):
    code = "E04"


class SideConditionError(CattError):
    code = "E05"

    def __init__(
        self,
        message: str,
        *,
        missing: dict[str, tuple[str, ...]] | None = None,
        extra: dict[str, tuple[str, ...]] | None = None,
        span: Span | None = None,
    ) -> None:
        super().__init__(message, span=span)
        self.missing = missing or {}
        self.extra = extra or {}


class ArityError(CattError):
    code = "E06"


class DuplicateNameError(CattError):
    code = "E07"


@contextmanager
def judgment(frame: str) -> Iterator[None]:
    """Record *frame* on the judgment stack of any CattError raised inside."""
    try:
        yield
    except CattError as exc:
        exc.trace.insert(0, frame)
        raise
