"""Render syntax back into .catt surface text.

Hom bases are never printed (the elaborator re-infers them), and coherence
applications show only the arguments at locally maximal positions unless
`explicit=True` is requested.
"""

from __future__ import annotations

from catt_checker.models.syntax import (
    Arr,
    CohApp,
    Context,
    Obj,
    RawTerm,
    RawType,
    Substitution,
    Var,
)


def _term(term: RawTerm, explicit: bool, nested: bool) -> str:
    match term:
        case Var(name):
            return name
        case CohApp(key, sub):
            images = sub.images
            if not explicit and key.explicit:
                images = tuple(images[i] for i in key.explicit)
            text = " ".join([key.name, *(_term(u, explicit, True) for u in images)])
            return f"({text})" if nested else text
    raise TypeError(f"Not a term: {term!r}")


def _type(ty: RawType, explicit: bool) -> str:
    match ty:
        case Obj():
            return "*"
        case Arr(_, src, tgt):
            return f"{_term(src, explicit, False)} -> {_term(tgt, explicit, False)}"
    raise TypeError(f"Not a type: {ty!r}")


def pretty_telescope(ctx: Context, *, explicit: bool = False) -> str:
    return "".join(f"({x} : {_type(ty, explicit)})" for x, ty in ctx)


def pretty(
    value: RawTerm | RawType | Context | Substitution,
    *,
    explicit: bool = False,
) -> str:
    """Surface text for a term, type, context or substitution."""
    match value:
        case Var() | CohApp():
            return _term(value, explicit, False)
        case Obj() | Arr():
            return _type(value, explicit)
        case Context():
            return pretty_telescope(value, explicit=explicit)
        case Substitution():
            inner = ", ".join(f"{x} := {_term(u, explicit, False)}" for x, u in value)
            return f"<{inner}>"
    raise TypeError(f"Cannot pretty-print {value!r}")


def pretty_decl(
    keyword: str,
    name: str,
    ctx: Context,
    rhs: RawTerm | RawType,
    *,
    explicit: bool = False,
) -> str:
    """One declaration line: `coh name tele : ty` or `let name tele = tm`."""
    sep = ":" if keyword == "coh" else "="
    tele = pretty_telescope(ctx, explicit=explicit)
    head = f"{keyword} {name} {tele}" if tele else f"{keyword} {name}"
    return f"{head} {sep} {pretty(rhs, explicit=explicit)}"
