"""Named declarations the checker has accepted.

The environment is persistent: `extend` returns a new environment and leaves
the old one untouched, so a failed declaration never leaks into later ones
and frozen snapshots can be shared between checks.

The one in-place change a snapshot allows is `remember`, which grows the
cache of coherence keys the kernel has re-derived. It never changes which
names resolve or what they resolve to, and a key is only ever added once it
has passed the coherence rules, so concurrent readers see the same answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from catt_checker.graph.pasting import PsContext
from catt_checker.models.errors import DuplicateNameError
from catt_checker.models.syntax import CohKey, CohKind, Context, RawTerm, RawType


@dataclass(frozen=True, slots=True)
class Coherence:
    """`coh name ctx : ty`, checked as an op or a coh."""

    name: str
    ctx: Context            # as written by the user
    ps: PsContext
    ty: RawType
    kind: CohKind
    key: CohKey             # canonical (ctx, ty, kind)


@dataclass(frozen=True, slots=True)
class LetDef:
    """`let name ctx = body`, a macro expanded at elaboration."""

    name: str
    ctx: Context
    body: RawTerm
    ty: RawType
    ps: PsContext | None = None   # set when ctx is a ps-context (implicit arity allowed)


Declaration = Coherence | LetDef


class Environment:
    """Append-only map from names to declarations."""

    __slots__ = ("_decls", "_verified")

    def __init__(self) -> None:
        self._decls: dict[str, Declaration] = {}
        # Keys known to satisfy the coherence rules; stored coherences are
        # always in here, keys re-derived by the kernel are added on success.
        self._verified: set[CohKey] = set()

    @classmethod
    def empty(cls) -> Environment:
        return cls()

    # --- Construction --------------------------------------------------------

    def extend(self, decl: Declaration) -> Environment:
        """New environment with *decl* appended; names are never shadowed."""
        if decl.name in self._decls:
            raise DuplicateNameError(f"{decl.name!r} is already declared")
        env = Environment()
        env._decls = dict(self._decls)
        env._decls[decl.name] = decl
        env._verified = set(self._verified)
        if isinstance(decl, Coherence):
            env._verified.add(decl.key)
        return env

    # --- Queries -------------------------------------------------------------

    def lookup(self, name: str) -> Declaration | None:
        return self._decls.get(name)

    def __contains__(self, name: object) -> bool:
        return name in self._decls

    def __len__(self) -> int:
        return len(self._decls)

    def __iter__(self) -> Iterator[str]:
        return iter(self._decls)

    def declarations(self) -> list[Declaration]:
        return list(self._decls.values())

    def coherences(self) -> list[Coherence]:
        return [d for d in self._decls.values() if isinstance(d, Coherence)]

    # --- Verified keys -------------------------------------------------------

    def is_verified(self, key: CohKey) -> bool:
        return key in self._verified

    def remember(self, key: CohKey) -> None:
        """Record a key the kernel has re-derived; does not add a name.

        This is the only mutation of an existing environment.
        """
        self._verified.add(key)
