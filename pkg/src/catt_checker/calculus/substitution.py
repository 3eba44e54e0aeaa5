"""Raw substitution calculus.

Free variables, dimension, the action of substitutions on types and terms,
composition and identity. Everything here is syntactic: no judgment is
checked, and the only failure is an unbound variable met while substituting.

  Obj[g]            = Obj
  (Hom A t u)[g]    = Hom A[g] t[g] u[g]
  coh_{G,A}[d][g]   = coh_{G,A}[d o g]
  <> o g            = <>
  <d, x->t> o g     = <d o g, x->t[g]>
"""

from __future__ import annotations

from catt_checker.models.errors import ScopeError
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


# ---------------------------------------------------------------------------
# Free variables
# ---------------------------------------------------------------------------


def free_vars(value: RawTerm | RawType | Context | Substitution) -> set[str]:
    match value:
        case Var(name):
            return {name}
        case CohApp(_, sub):
            return free_vars(sub)
        case Obj():
            return set()
        case Arr(base, src, tgt):
            return free_vars(base) | free_vars(src) | free_vars(tgt)
        case Context():
            return set(value.names)
        case Substitution():
            out: set[str] = set()
            for _, term in value:
                out |= free_vars(term)
            return out
    raise TypeError(f"No free variables for {value!r}")


def var_union(term: RawTerm, ty: RawType) -> set[str]:
    """Var(t:A) = Var(t) u Var(A)."""
    return free_vars(term) | free_vars(ty)


def ordered(names: set[str], ctx: Context) -> tuple[str, ...]:
    """*names* listed in the declaration order of *ctx* (unknown names last)."""
    known = [x for x in ctx.names if x in names]
    return tuple(known) + tuple(sorted(names - set(known)))


# ---------------------------------------------------------------------------
# Dimension
# ---------------------------------------------------------------------------


def dim(ty: RawType) -> int:
    """dim(Obj) = -1, dim(Hom A t u) = dim(A) + 1."""
    n = -1
    while isinstance(ty, Arr):
        n += 1
        ty = ty.base
    return n


def dim_ctx(ctx: Context) -> int:
    """Largest dimension of a variable of *ctx*; -1 for the empty context."""
    return max((dim(ty) + 1 for _, ty in ctx), default=-1)


# ---------------------------------------------------------------------------
# Action, composition, identity
# ---------------------------------------------------------------------------


def apply_term(term: RawTerm, sub: Substitution) -> RawTerm:
    match term:
        case Var(name):
            image = sub.lookup(name)
            if image is None:
                raise ScopeError(f"Variable {name!r} has no image in the substitution")
            return image
        case CohApp(key, inner):
            return CohApp(key, compose(inner, sub))
    raise TypeError(f"Not a term: {term!r}")


def apply_type(ty: RawType, sub: Substitution) -> RawType:
    match ty:
        case Obj():
            return ty
        case Arr(base, src, tgt):
            return Arr(apply_type(base, sub), apply_term(src, sub), apply_term(tgt, sub))
    raise TypeError(f"Not a type: {ty!r}")


def compose(first: Substitution, then: Substitution) -> Substitution:
    """first o then: substitute *then* into every image of *first*."""
    return Substitution(tuple((x, apply_term(t, then)) for x, t in first))


def identity(ctx: Context) -> Substitution:
    return Substitution(tuple((x, Var(x)) for x in ctx.names))
