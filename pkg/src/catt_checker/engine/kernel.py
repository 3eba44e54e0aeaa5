"""The trusted checker.

Judgments, each raising a CattError on failure:

  check_ctx     Γ ⊢                every entry types in its prefix, names distinct
  check_type    Γ ⊢ A              Hom endpoints infer to the base type
  infer_term    Γ ⊢ t : A          variables and coherence applications
  check_sub     Δ ⊢ γ : Γ          images infer to the substituted declared types
  check_coh_decl                   ps-context plus exactly one of the op/coh
                                   variable conditions

Equality is syntactic identity. A coherence application whose key is not
known to the environment is re-derived from scratch before it is trusted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from catt_checker.calculus.substitution import apply_type, dim, free_vars, ordered, var_union
from catt_checker.engine.environment import Coherence, Environment
from catt_checker.graph.pasting import PsContext, check_ps, src_ctx, tgt_ctx
from catt_checker.models.errors import (
    ArityError,
    CattError,
    DuplicateNameError,
    ScopeError,
    SideConditionError,
    TypeMismatchError,
    judgment,
)
from catt_checker.models.pretty import pretty
from catt_checker.models.syntax import (
    Arr,
    CohApp,
    CohKey,
    CohKind,
    Context,
    Obj,
    RawTerm,
    RawType,
    Substitution,
    Var,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Formation judgments
# ---------------------------------------------------------------------------


def check_ctx(env: Environment, ctx: Context) -> None:
    seen: set[str] = set()
    for i, (x, ty) in enumerate(ctx):
        if x in seen:
            raise DuplicateNameError(f"Variable {x!r} is declared twice")
        with judgment(f"context entry {x}"):
            check_type(env, ctx.prefix(i), ty)
        seen.add(x)


def check_type(env: Environment, ctx: Context, ty: RawType) -> None:
    match ty:
        case Obj():
            return
        case Arr(base, src, tgt):
            check_type(env, ctx, base)
            for side, term in (("source", src), ("target", tgt)):
                with judgment(f"hom {side}"):
                    found = infer_term(env, ctx, term)
                if found != base:
                    raise TypeMismatchError(
                        f"{side} {pretty(term)} has type {pretty(found)}, "
                        f"expected {pretty(base)}"
                    )
            return
    raise TypeError(f"Not a type: {ty!r}")


def infer_term(env: Environment, ctx: Context, term: RawTerm) -> RawType:
    match term:
        case Var(name):
            ty = ctx.lookup(name)
            if ty is None:
                raise ScopeError(f"Variable {name!r} is not in scope")
            return ty
        case CohApp(key, sub):
            verify_key(env, key)
            with judgment(f"arguments of {key.name}"):
                check_sub(env, ctx, sub, key.ctx)
            return apply_type(key.ty, sub)
    raise TypeError(f"Not a term: {term!r}")


def dim_term(env: Environment, ctx: Context, term: RawTerm) -> int:
    """dim(A) + 1 for the inferred type A of *term*."""
    return dim(infer_term(env, ctx, term)) + 1


def check_sub(env: Environment, delta: Context, sub: Substitution, gamma: Context) -> None:
    """Δ ⊢ sub : Γ."""
    if len(sub) != len(gamma):
        raise ArityError(f"Substitution has {len(sub)} entries, expected {len(gamma)}")
    for i, ((x, ty), (y, image)) in enumerate(zip(gamma, sub)):
        if x != y:
            raise ScopeError(f"Substitution entry {i} is for {y!r}, expected {x!r}")
        expected = apply_type(ty, sub.prefix(i))
        with judgment(f"image of {x}"):
            found = infer_term(env, delta, image)
        if found != expected:
            raise TypeMismatchError(
                f"Image of {x!r} is {pretty(image)} of type {pretty(found)}, "
                f"expected {pretty(expected)}"
            )


def verify_key(env: Environment, key: CohKey) -> None:
    """Trust *key* only if the environment knows it or it re-derives."""
    if env.is_verified(key):
        return
    logger.debug("Re-deriving coherence %s", key.name)
    with judgment(f"coherence {key.name}"):
        check_ctx(env, key.ctx)
        kind = check_coh_decl(env, key.ctx, key.ty)
    if kind is not key.kind:
        raise SideConditionError(
            f"Coherence {key.name} is an {kind.value}, not an {key.kind.value}"
        )
    env.remember(key)


# ---------------------------------------------------------------------------
# Coherence rules
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class SideConditions:
    """Verdicts of both variable conditions for one candidate coherence."""

    op_ok: bool
    coh_ok: bool
    # side ("coh source", "op target", ...) -> variables in context order
    missing: dict[str, tuple[str, ...]] = field(default_factory=dict)
    extra: dict[str, tuple[str, ...]] = field(default_factory=dict)


def _usage(
    side: str,
    term: RawTerm,
    base: RawType,
    scope: Context,
    out: SideConditions,
) -> bool:
    used = var_union(term, base)
    wanted = free_vars(scope)
    missing = ordered(wanted - used, scope)
    extra = ordered(used - wanted, scope)
    if missing:
        out.missing[side] = missing
    if extra:
        out.extra[side] = extra
    return not missing and not extra


def _checks_in(env: Environment, ctx: Context, term: RawTerm, ty: RawType) -> bool:
    try:
        check_type(env, ctx, ty)
        return infer_term(env, ctx, term) == ty
    except CattError:
        return False


def check_decl_kind_both(env: Environment, ps: PsContext, ty: Arr) -> SideConditions:
    """Evaluate the coh and op conditions independently.

    coh: source and target each use every variable of the scheme.
    op:  for a scheme of dimension >= 1, the source lives in the source
         boundary and uses all of it, likewise the target.
    """
    out = SideConditions(op_ok=False, coh_ok=False)
    base, t, u = ty.base, ty.src, ty.tgt
    coh_src = _usage("coh source", t, base, ps.ctx, out)
    coh_tgt = _usage("coh target", u, base, ps.ctx, out)
    out.coh_ok = coh_src and coh_tgt

    if ps.dim >= 1:
        source, target = src_ctx(ps), tgt_ctx(ps)
        op_src = _usage("op source", t, base, source, out)
        op_tgt = _usage("op target", u, base, target, out)
        out.op_ok = (
            op_src
            and op_tgt
            and _checks_in(env, source, t, base)
            and _checks_in(env, target, u, base)
        )
    return out


def check_coh_decl(env: Environment, ctx: Context, ty: RawType) -> CohKind:
    """Classify `coh ctx : ty` as an op or a coh, or raise."""
    with judgment("ps-context"):
        ps = check_ps(ctx)
    if not isinstance(ty, Arr):
        raise TypeMismatchError(f"A coherence type must be an arrow, got {pretty(ty)}")
    with judgment("coherence type"):
        check_type(env, ctx, ty)

    verdict = check_decl_kind_both(env, ps, ty)
    if verdict.op_ok and verdict.coh_ok:
        raise RuntimeError("op and coh conditions hold simultaneously")
    if verdict.coh_ok:
        return CohKind.COH
    if verdict.op_ok:
        return CohKind.OP

    parts = [
        f"{side} misses {', '.join(names)}" for side, names in verdict.missing.items()
    ] + [
        f"{side} also uses {', '.join(names)}" for side, names in verdict.extra.items()
    ]
    raise SideConditionError(
        f"{pretty(ty)} is neither a coh nor an op over this context: " + "; ".join(parts),
        missing=verdict.missing,
        extra=verdict.extra,
    )


def make_coherence(env: Environment, name: str, ctx: Context, ty: RawType) -> Coherence:
    """Check a coherence declaration and build its environment entry."""
    check_ctx(env, ctx)
    kind = check_coh_decl(env, ctx, ty)
    ps = check_ps(ctx)
    key = CohKey.of(
        ctx,
        ty,
        kind,
        name=name,
        explicit=tuple(ctx.index(x) for x in ps.loc_max),
    )
    logger.debug("Accepted %s %s", kind.value, name)
    return Coherence(name=name, ctx=ctx, ps=ps, ty=ty, kind=kind, key=key)
