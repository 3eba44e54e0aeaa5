"""Tests for the kernel judgments and the coherence rules."""

import itertools
import logging
import random

import pytest

from catt_checker.calculus.substitution import apply_term, apply_type
from catt_checker.engine.environment import Coherence, Environment
from catt_checker.engine.kernel import (
    check_coh_decl,
    check_ctx,
    check_decl_kind_both,
    check_sub,
    check_type,
    infer_term,
    make_coherence,
)
from catt_checker.graph.pasting import check_ps
from catt_checker.models.errors import (
    ArityError,
    CattError,
    DuplicateNameError,
    PsShapeError,
    ScopeError,
    SideConditionError,
    TypeMismatchError,
)
from catt_checker.models.syntax import (
    Arr,
    CohApp,
    CohKey,
    CohKind,
    Context,
    Obj,
    Substitution,
    Var,
)
from tests.corpus import COHERENCE_NAMES, COMP_CTX, D1, ENDO, VCOMP_CTX, ctx, prelude_env, term
from tests.oracle import coherence_named, random_substitution, term_pool


X = Context.of(("x", Obj()))


def _hom(s, t, base=None):
    return Arr(base or Obj(), Var(s), Var(t))


# ---------------------------------------------------------------------------
# Formation
# ---------------------------------------------------------------------------


def test_check_ctx():
    env = Environment.empty()
    check_ctx(env, Context())
    check_ctx(env, Context.of(("x", Obj()), ("f", _hom("x", "x"))))
    with pytest.raises(DuplicateNameError):
        check_ctx(env, Context.of(("x", Obj()), ("x", Obj())))


def test_check_ctx_reports_ill_typed_entry():
    env = Environment.empty()
    bad = Context.of(("x", Obj()), ("f", _hom("x", "q")))
    with pytest.raises(ScopeError, match="'q'") as exc_info:
        check_ctx(env, bad)
    assert exc_info.value.trace[0] == "context entry f"


def test_check_type():
    env = Environment.empty()
    xy = Context.of(("x", Obj()), ("y", Obj()))
    check_type(env, X, Obj())
    check_type(env, xy, _hom("x", "y"))
    d1 = ctx(D1)
    with pytest.raises(TypeMismatchError, match="target f"):
        check_type(env, d1, Arr(Obj(), Var("x"), Var("f")))


def test_infer_term():
    env = prelude_env()
    assert infer_term(env, X, Var("x")) == Obj()
    ident = coherence_named(env, "id")
    y = Context.of(("y", Obj()))
    assert infer_term(env, y, CohApp(ident.key, Substitution.of(("v0", Var("y"))))) == _hom("y", "y")
    assert infer_term(env, X, term("comp (id x) (id x)", X)) == _hom("x", "x")


def test_infer_term_unbound_variable():
    with pytest.raises(ScopeError):
        infer_term(Environment.empty(), X, Var("y"))


def test_check_sub():
    env = Environment.empty()
    check_sub(env, X, Substitution(), Context())
    source = Context.of(("a", Obj()), ("b", Obj()), ("h", _hom("a", "b")))
    target = ctx(D1)
    check_sub(env, source, Substitution.of(("x", Var("a")), ("y", Var("b")), ("f", Var("h"))), target)
    with pytest.raises(TypeMismatchError, match="'f'"):
        check_sub(
            env, source, Substitution.of(("x", Var("a")), ("y", Var("b")), ("f", Var("a"))), target
        )


def test_check_sub_arity():
    with pytest.raises(ArityError):
        check_sub(Environment.empty(), X, Substitution.of(("x", Var("x"))), ctx(D1))


# ---------------------------------------------------------------------------
# Coherence rules
# ---------------------------------------------------------------------------


def test_identity_is_a_coh():
    assert check_coh_decl(Environment.empty(), X, _hom("x", "x")) is CohKind.COH


def test_composition_is_an_op():
    assert check_coh_decl(Environment.empty(), ctx(COMP_CTX), _hom("x", "z")) is CohKind.OP


def test_vertical_composition_is_an_op():
    vc = ctx(VCOMP_CTX)
    assert check_coh_decl(Environment.empty(), vc, Arr(_hom("x", "y"), Var("f"), Var("h"))) is CohKind.OP


def test_projection_fails_both_conditions():
    with pytest.raises(SideConditionError) as exc_info:
        check_coh_decl(Environment.empty(), ctx(D1), _hom("x", "x"))
    err = exc_info.value
    assert err.code == "E05"
    assert err.missing["coh source"] == ("y", "f")
    assert err.missing["coh target"] == ("y", "f")
    assert err.missing["op target"] == ("y",)
    assert err.extra["op target"] == ("x",)
    assert "y, f" in err.message


def test_coherence_needs_arrow_type():
    with pytest.raises(TypeMismatchError, match="arrow"):
        check_coh_decl(Environment.empty(), X, Obj())


def test_coherence_needs_ps_context():
    with pytest.raises(PsShapeError):
        check_coh_decl(Environment.empty(), ctx(ENDO), _hom("x", "x"))


def test_dimension_zero_schemes_are_never_ops():
    verdict = check_decl_kind_both(Environment.empty(), check_ps(X), _hom("x", "x"))
    assert verdict.coh_ok and not verdict.op_ok


@pytest.mark.parametrize("name", COHERENCE_NAMES)
def test_corpus_conditions_are_mutually_exclusive(name):
    env = prelude_env()
    coh = coherence_named(env, name)
    verdict = check_decl_kind_both(env, coh.ps, coh.ty)
    assert verdict.op_ok != verdict.coh_ok
    assert (CohKind.OP if verdict.op_ok else CohKind.COH) is coh.kind


def test_corpus_kinds():
    env = prelude_env()
    ops = {c.name for c in env.coherences() if c.kind is CohKind.OP}
    assert ops == {"comp", "vcomp", "hcomp", "whiskl", "whiskr"}


def test_make_coherence_records_explicit_positions():
    coh = make_coherence(Environment.empty(), "comp", ctx(COMP_CTX), _hom("x", "z"))
    assert coh.kind is CohKind.OP
    assert coh.key.explicit == (2, 4)
    assert coh.key.ctx.names == ("v0", "v1", "v2", "v3", "v4")


# ---------------------------------------------------------------------------
# Unknown coherence keys
# ---------------------------------------------------------------------------


def test_unknown_key_is_rederived_and_cached(caplog):
    env = Environment.empty()
    d1 = ctx(D1)
    key = CohKey.of(d1, Arr(_hom("x", "y"), Var("f"), Var("f")), CohKind.COH, name="fid")
    app = CohApp(key, Substitution.of(("v0", Var("x")), ("v1", Var("y")), ("v2", Var("f"))))
    assert not env.is_verified(key)
    with caplog.at_level(logging.DEBUG, logger="catt_checker.engine.kernel"):
        assert infer_term(env, d1, app) == Arr(_hom("x", "y"), Var("f"), Var("f"))
    assert any("Re-deriving coherence fid" in r.getMessage() for r in caplog.records)
    assert env.is_verified(key)


def test_rederived_key_only_grows_the_cache():
    env = prelude_env()
    names = list(env)
    d1 = ctx(D1)
    key = CohKey.of(d1, Arr(_hom("x", "y"), Var("f"), Var("f")), CohKind.COH, name="fid")
    app = CohApp(key, Substitution.of(("v0", Var("x")), ("v1", Var("y")), ("v2", Var("f"))))
    infer_term(env, d1, app)
    assert list(env) == names
    assert env.lookup("fid") is None
    extended = env.extend(make_coherence(env, "twin", X, _hom("x", "x")))
    assert extended.is_verified(key)


def test_bogus_key_is_rejected():
    d1 = ctx(D1)
    key = CohKey.of(d1, _hom("x", "x"), CohKind.COH, name="proj")
    app = CohApp(key, Substitution.of(("v0", Var("x")), ("v1", Var("y")), ("v2", Var("f"))))
    with pytest.raises(SideConditionError):
        infer_term(Environment.empty(), d1, app)


def test_key_with_wrong_kind_is_rejected():
    comp = coherence_named(prelude_env(), "comp")
    fake = CohKey(ctx=comp.key.ctx, ty=comp.key.ty, kind=CohKind.COH, name="comp")
    comp_ctx = ctx(COMP_CTX)
    app = CohApp(fake, Substitution(tuple((f"v{i}", Var(x)) for i, x in enumerate(comp_ctx.names))))
    with pytest.raises(SideConditionError, match="is an op"):
        infer_term(Environment.empty(), comp_ctx, app)


# ---------------------------------------------------------------------------
# Structural properties
# ---------------------------------------------------------------------------


def test_inferred_types_are_well_formed():
    env = prelude_env()
    for text in ("(x:*)", D1, COMP_CTX, VCOMP_CTX):
        here = ctx(text)
        for t, ty in term_pool(env, here, 2, per_key=3):
            assert infer_term(env, here, t) == ty
            check_type(env, here, ty)


def test_typing_is_stable_under_substitution():
    env = prelude_env()
    rng = random.Random(3)
    contexts = [ctx(text) for text in ("(x:*)", D1, ENDO, COMP_CTX, VCOMP_CTX)]
    for source in contexts:
        pool = term_pool(env, source, 2, per_key=3)
        for target in contexts:
            sub = random_substitution(env, source, target, rng, pool=pool)
            if sub is None:
                continue
            check_sub(env, source, sub, target)
            for t, ty in term_pool(env, target, 1, per_key=2):
                moved = apply_term(t, sub)
                assert infer_term(env, source, moved) == apply_type(ty, sub)
                check_type(env, source, apply_type(ty, sub))


def test_substitutions_agreeing_on_variables_are_equal():
    env = prelude_env()
    source = ctx(ENDO)
    target = ctx(D1)
    pool = term_pool(env, source, 1)
    subs = [
        random_substitution(env, source, target, random.Random(seed), pool=pool)
        for seed in range(30)
    ]
    agreeing = 0
    for a, b in itertools.combinations(subs, 2):
        check_sub(env, source, a, target)
        same = all(a.lookup(x) == b.lookup(x) for x in target.names)
        assert same == (a == b)
        agreeing += same
    assert agreeing > 0


def test_no_closed_terms():
    env = prelude_env()
    assert term_pool(env, Context(), 2) == []
    ident = coherence_named(env, "id")
    with pytest.raises(ArityError):
        infer_term(env, Context(), CohApp(ident.key, Substitution()))
    searched = 0
    for text in ("(x:*)", D1, ENDO, COMP_CTX, VCOMP_CTX):
        for t, _ in term_pool(env, ctx(text), 2, per_key=3):
            with pytest.raises(CattError):
                infer_term(env, Context(), t)
            searched += 1
    assert searched > 20


def test_environment_is_persistent():
    env = Environment.empty()
    entry = make_coherence(env, "id", X, _hom("x", "x"))
    extended = env.extend(entry)
    assert "id" in extended and "id" not in env
    assert len(env) == 0 and len(extended) == 1
    assert isinstance(extended.lookup("id"), Coherence)
    with pytest.raises(DuplicateNameError):
        extended.extend(entry)
