"""Check declarations in order against a growing environment.

Order matters: a declaration may use every declaration before it, and
several files checked together share one environment in argument order.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from catt_checker.engine.environment import Declaration, Environment, LetDef
from catt_checker.engine.kernel import check_ctx, infer_term, make_coherence
from catt_checker.graph.pasting import check_ps
from catt_checker.models.errors import (
    CattError,
    CattSyntaxError,
    DuplicateNameError,
    PsShapeError,
    judgment,
)
from catt_checker.models.surface import SurfaceDecl
from catt_checker.parser.elaborator import elaborate_telescope, elaborate_term, elaborate_type
from catt_checker.parser.surface_parser import parse

logger = logging.getLogger(__name__)


def process_decl(env: Environment, decl: SurfaceDecl) -> Environment:
    """Check *decl* and return the extended environment.

    Errors are tagged with the declaration's position unless they already
    carry a more precise one.
    """
    try:
        with judgment(f"{decl.kind} {decl.name}"):
            if decl.name in env:
                raise DuplicateNameError(f"{decl.name!r} is already declared")
            ctx = elaborate_telescope(env, decl.telescope)
            check_ctx(env, ctx)
            if decl.kind == "coh":
                ty = elaborate_type(env, ctx, decl.rhs)
                entry: Declaration = make_coherence(env, decl.name, ctx, ty)
            else:
                body = elaborate_term(env, ctx, decl.rhs)
                ty = infer_term(env, ctx, body)
                try:
                    ps = check_ps(ctx)
                except PsShapeError:
                    ps = None
                entry = LetDef(name=decl.name, ctx=ctx, body=body, ty=ty, ps=ps)
                logger.debug("Accepted let %s", decl.name)
    except CattError as exc:
        raise exc.at(decl.span)
    except RecursionError:
        raise CattSyntaxError(
            f"Declaration {decl.name!r} is nested too deeply", span=decl.span
        ) from None
    return env.extend(entry)


@dataclass(slots=True)
class DeclResult:
    """Outcome of one declaration: the stored entry or the error it raised."""

    decl: SurfaceDecl
    entry: Declaration | None = None
    error: CattError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def check_decls(
    env: Environment,
    decls: Iterable[SurfaceDecl],
    *,
    max_errors: int | None = None,
) -> tuple[Environment, list[DeclResult]]:
    """Process *decls* in order; a failed declaration leaves *env* unchanged.

    Stops after `max_errors` failures when given.
    """
    results: list[DeclResult] = []
    failures = 0
    for decl in decls:
        try:
            env = process_decl(env, decl)
        except CattError as exc:
            results.append(DeclResult(decl, error=exc))
            failures += 1
            if max_errors is not None and failures >= max_errors:
                break
            continue
        results.append(DeclResult(decl, entry=env.lookup(decl.name)))
    return env, results


def check_source(text: str, env: Environment | None = None) -> Environment:
    """Parse and check *text*, raising the first error."""
    if env is None:
        env = Environment.empty()
    for decl in parse(text):
        env = process_decl(env, decl)
    return env


def check_files(paths: Iterable[Path], env: Environment | None = None) -> Environment:
    """Check files in order into one shared environment."""
    if env is None:
        env = Environment.empty()
    for path in paths:
        env = check_source(path.read_text(encoding="utf-8"), env)
    return env
