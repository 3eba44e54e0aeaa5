"""Object-language syntax: types, terms, contexts and substitutions.

  RawType = Obj | Arr(base, src, tgt)
  RawTerm = Var(name) | CohApp(key, sub)

All values are frozen dataclasses, so structural equality is plain `==`.
There are no binders: alpha-equivalence of contexts is a positional
relabelling (`canonicalize`), and coherence keys are stored canonically so
two coherences declared under different names compare equal.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from catt_checker.models.errors import DuplicateNameError, ScopeError


_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_'\-]*\Z")


def ident(name: str) -> str:
    """Validate and intern an identifier."""
    if not _IDENT_RE.match(name):
        raise ValueError(f"Invalid identifier: {name!r}")
    return sys.intern(name)


def canonical_name(index: int) -> str:
    return f"v{index}"


class CohKind(Enum):
    OP = "op"
    COH = "coh"


# ---------------------------------------------------------------------------
# Types and terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Obj:
    """The type of 0-cells."""


@dataclass(frozen=True, slots=True)
class Arr:
    """Hom type: cells from `src` to `tgt`, both of type `base`."""

    base: RawType
    src: RawTerm
    tgt: RawTerm


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class CohApp:
    """A coherence applied to a full substitution towards its ps-context."""

    key: CohKey
    sub: Substitution


RawType = Obj | Arr
RawTerm = Var | CohApp


# ---------------------------------------------------------------------------
# Telescopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Context:
    """Ordered variable telescope (x_1:A_1, ..., x_n:A_n)."""

    entries: tuple[tuple[str, RawType], ...] = ()

    @classmethod
    def of(cls, *entries: tuple[str, RawType]) -> Context:
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, RawType]]:
        return iter(self.entries)

    def __contains__(self, name: object) -> bool:
        return any(x == name for x, _ in self.entries)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.entries)

    def lookup(self, name: str) -> RawType | None:
        for x, ty in reversed(self.entries):
            if x == name:
                return ty
        return None

    def index(self, name: str) -> int:
        for i, (x, _) in enumerate(self.entries):
            if x == name:
                return i
        raise KeyError(name)

    def extend(self, name: str, ty: RawType) -> Context:
        return Context(self.entries + ((name, ty),))

    def prefix(self, length: int) -> Context:
        return Context(self.entries[:length])


@dataclass(frozen=True, slots=True)
class Substitution:
    """Ordered list <x_1 -> t_1, ...>; keys are variables of the target context."""

    entries: tuple[tuple[str, RawTerm], ...] = ()

    @classmethod
    def of(cls, *entries: tuple[str, RawTerm]) -> Substitution:
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, RawTerm]]:
        return iter(self.entries)

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.entries)

    @property
    def images(self) -> tuple[RawTerm, ...]:
        return tuple(t for _, t in self.entries)

    def lookup(self, name: str) -> RawTerm | None:
        # Rightmost entry wins, matching the head-recursive action.
        for x, t in reversed(self.entries):
            if x == name:
                return t
        return None

    def extend(self, name: str, term: RawTerm) -> Substitution:
        return Substitution(self.entries + ((name, term),))

    def prefix(self, length: int) -> Substitution:
        return Substitution(self.entries[:length])


@dataclass(frozen=True, slots=True)
class CohKey:
    """The (Gamma, A) subscript of coh_{Gamma,A}, stored canonically.

    `name` and `explicit` (positions of the locally maximal variables) are
    presentation data and take no part in equality or hashing.
    """

    ctx: Context
    ty: RawType
    kind: CohKind
    name: str = field(default="coh", compare=False)
    explicit: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def of(
        cls,
        ctx: Context,
        ty: RawType,
        kind: CohKind,
        *,
        name: str = "coh",
        explicit: tuple[int, ...] = (),
    ) -> CohKey:
        """Build a key from a user-named context and a type over it."""
        return cls(
            ctx=canonicalize(ctx),
            ty=canonicalize_type(ctx, ty),
            kind=kind,
            name=name,
            explicit=explicit,
        )


# ---------------------------------------------------------------------------
# Canonical renaming
# ---------------------------------------------------------------------------


def _rename_term(term: RawTerm, mapping: dict[str, str]) -> RawTerm:
    match term:
        case Var(name):
            if name not in mapping:
                raise ScopeError(f"Variable {name!r} is not declared before its use")
            return Var(mapping[name])
        case CohApp(key, sub):
            return CohApp(
                key,
                Substitution(tuple((x, _rename_term(u, mapping)) for x, u in sub)),
            )
    raise TypeError(f"Not a term: {term!r}")


def _rename_type(ty: RawType, mapping: dict[str, str]) -> RawType:
    match ty:
        case Obj():
            return ty
        case Arr(base, src, tgt):
            return Arr(
                _rename_type(base, mapping),
                _rename_term(src, mapping),
                _rename_term(tgt, mapping),
            )
    raise TypeError(f"Not a type: {ty!r}")


def _canonical_mapping(ctx: Context) -> tuple[Context, dict[str, str]]:
    mapping: dict[str, str] = {}
    entries: list[tuple[str, RawType]] = []
    for i, (x, ty) in enumerate(ctx):
        if x in mapping:
            raise DuplicateNameError(f"Variable {x!r} is declared twice")
        renamed = _rename_type(ty, mapping)
        mapping[x] = canonical_name(i)
        entries.append((mapping[x], renamed))
    return Context(tuple(entries)), mapping


def canonicalize(ctx: Context) -> Context:
    """Rename the i-th variable of *ctx* to `v<i>`."""
    return _canonical_mapping(ctx)[0]


def canonicalize_type(ctx: Context, ty: RawType) -> RawType:
    """Rename *ty*, a type over *ctx*, along `canonicalize(ctx)`."""
    return _rename_type(ty, _canonical_mapping(ctx)[1])


def canonicalize_term(ctx: Context, term: RawTerm) -> RawTerm:
    return _rename_term(term, _canonical_mapping(ctx)[1])


def struct_eq(a: RawTerm | RawType, b: RawTerm | RawType) -> bool:
    """Syntactic identity; coherence keys compare by canonical (ctx, ty, kind)."""
    return a == b
