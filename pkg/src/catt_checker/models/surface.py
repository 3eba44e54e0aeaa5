"""Surface syntax produced by the parser, before elaboration."""

from __future__ import annotations

from dataclasses import dataclass, field

from catt_checker.models.errors import Span


@dataclass(frozen=True, slots=True)
class Name:
    """A bare identifier: a context variable or a nullary reference."""
    ident: str
    span: Span = field(compare=False)


@dataclass(frozen=True, slots=True)
class App:
    """Head identifier applied to one or more arguments."""
    head: str
    args: tuple[SurfaceTerm, ...]   # never empty
    span: Span = field(compare=False)


@dataclass(frozen=True, slots=True)
class Star:
    span: Span = field(compare=False)


@dataclass(frozen=True, slots=True)
class ArrowS:
    """`src -> tgt`; the base type is left for the elaborator to infer."""
    src: SurfaceTerm
    tgt: SurfaceTerm
    span: Span = field(compare=False)


SurfaceTerm = Name | App
SurfaceType = Star | ArrowS


@dataclass(frozen=True, slots=True)
class SurfaceDecl:
    """One `coh` or `let` declaration."""
    kind: str                                     # "coh" | "let"
    name: str
    telescope: tuple[tuple[str, SurfaceType], ...]
    rhs: SurfaceType | SurfaceTerm                # type for coh, term for let
    span: Span = field(compare=False)
