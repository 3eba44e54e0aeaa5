"""Turn surface terms and types into kernel syntax.

Arrow bases are inferred from the endpoints. A declaration applied to as many
arguments as its context has variables takes them as written; applied to one
argument per locally maximal variable, the rest of the substitution is
recovered by matching each declared type against the inferred type of its
argument. `let` definitions are expanded in place.
"""

from __future__ import annotations

import logging

from catt_checker.calculus.substitution import apply_term
from catt_checker.engine.environment import Coherence, Environment
from catt_checker.engine.kernel import check_sub, infer_term
from catt_checker.models.errors import (
    ArityError,
    DuplicateNameError,
    ScopeError,
    TypeMismatchError,
    judgment,
)
from catt_checker.models.pretty import pretty
from catt_checker.models.surface import App, ArrowS, Name, Star, SurfaceTerm, SurfaceType
from catt_checker.models.syntax import (
    Arr,
    CohApp,
    Context,
    Obj,
    RawTerm,
    RawType,
    Substitution,
    Var,
    canonical_name,
)

logger = logging.getLogger(__name__)


def elaborate_telescope(
    env: Environment, telescope: tuple[tuple[str, SurfaceType], ...]
) -> Context:
    ctx = Context()
    for x, sty in telescope:
        if x in ctx:
            raise DuplicateNameError(f"Variable {x!r} is declared twice")
        with judgment(f"context entry {x}"):
            ctx = ctx.extend(x, elaborate_type(env, ctx, sty))
    return ctx


def elaborate_type(env: Environment, ctx: Context, sty: SurfaceType) -> RawType:
    match sty:
        case Star():
            return Obj()
        case ArrowS(src, tgt, span):
            try:
                s = elaborate_term(env, ctx, src)
                t = elaborate_term(env, ctx, tgt)
                return Arr(infer_arrow_base(env, ctx, s, t), s, t)
            except (ScopeError, TypeMismatchError, ArityError) as exc:
                raise exc.at(span)
    raise TypeError(f"Not a surface type: {sty!r}")


def elaborate_term(env: Environment, ctx: Context, stm: SurfaceTerm) -> RawTerm:
    match stm:
        case Name(x, span):
            if x in ctx:
                return Var(x)
            if x in env:
                raise ArityError(f"{x!r} is used without arguments", span=span)
            raise ScopeError(f"Unknown identifier {x!r}", span=span)
        case App(head, args, span):
            if head in ctx:
                raise ArityError(f"Variable {head!r} cannot be applied", span=span)
            terms = [elaborate_term(env, ctx, a) for a in args]
            try:
                return elaborate_app(env, ctx, head, terms)
            except (ScopeError, TypeMismatchError, ArityError) as exc:
                raise exc.at(span)
    raise TypeError(f"Not a surface term: {stm!r}")


def infer_arrow_base(env: Environment, ctx: Context, src: RawTerm, tgt: RawTerm) -> RawType:
    """The common type of both endpoints of an arrow."""
    a = infer_term(env, ctx, src)
    b = infer_term(env, ctx, tgt)
    if a != b:
        raise TypeMismatchError(
            f"Arrow endpoints disagree: {pretty(src)} : {pretty(a)} "
            f"but {pretty(tgt)} : {pretty(b)}"
        )
    return a


# ---------------------------------------------------------------------------
# Applications
# ---------------------------------------------------------------------------


def elaborate_app(env: Environment, ctx: Context, head: str, args: list[RawTerm]) -> RawTerm:
    decl = env.lookup(head)
    if decl is None:
        raise ScopeError(f"Unknown identifier {head!r}")
    params = decl.ctx
    loc_max = decl.ps.loc_max if decl.ps is not None else None

    if len(args) == len(params):
        sub = Substitution(tuple(zip(params.names, args)))
    elif loc_max is not None and len(args) == len(loc_max):
        sub = _implicit_sub(env, ctx, params, loc_max, args)
        logger.debug("Reconstructed arguments of %s: %s", head, pretty(sub))
    elif loc_max is None:
        raise ArityError(
            f"{head} takes {len(params)} arguments, got {len(args)} "
            "(its context is not a ps-context, so arguments cannot be left implicit)"
        )
    else:
        raise ArityError(
            f"{head} takes {len(params)} arguments or {len(loc_max)} locally "
            f"maximal ones, got {len(args)}"
        )

    with judgment(f"arguments of {head}"):
        check_sub(env, ctx, sub, params)

    if isinstance(decl, Coherence):
        canonical = Substitution(
            tuple((canonical_name(i), t) for i, (_, t) in enumerate(sub))
        )
        return CohApp(decl.key, canonical)
    return apply_term(decl.body, sub)


def _implicit_sub(
    env: Environment,
    ctx: Context,
    params: Context,
    loc_max: tuple[str, ...],
    args: list[RawTerm],
) -> Substitution:
    bindings: dict[str, RawTerm] = {}
    for var, arg in zip(loc_max, args):
        _bind(bindings, var, arg)
        declared = params.lookup(var)
        assert declared is not None
        with judgment(f"argument for {var}"):
            _match_type(bindings, declared, infer_term(env, ctx, arg))

    unbound = [x for x in params.names if x not in bindings]
    if unbound:
        raise ArityError(f"Cannot infer the arguments {', '.join(unbound)}")
    return Substitution(tuple((x, bindings[x]) for x in params.names))


def _bind(bindings: dict[str, RawTerm], var: str, term: RawTerm) -> None:
    known = bindings.get(var)
    if known is None:
        bindings[var] = term
    elif known != term:
        raise TypeMismatchError(
            f"{var!r} would be both {pretty(known)} and {pretty(term)}"
        )


def _match_type(bindings: dict[str, RawTerm], pattern: RawType, actual: RawType) -> None:
    match pattern, actual:
        case Obj(), Obj():
            return
        case Arr(p_base, p_src, p_tgt), Arr(a_base, a_src, a_tgt):
            _match_term(bindings, p_src, a_src)
            _match_term(bindings, p_tgt, a_tgt)
            _match_type(bindings, p_base, a_base)
            return
    raise TypeMismatchError(
        f"Argument has type {pretty(actual)}, which does not fit {pretty(pattern)}"
    )


def _match_term(bindings: dict[str, RawTerm], pattern: RawTerm, actual: RawTerm) -> None:
    if isinstance(pattern, Var):
        _bind(bindings, pattern.name, actual)
    elif pattern != actual:
        raise TypeMismatchError(f"{pretty(actual)} does not fit {pretty(pattern)}")
