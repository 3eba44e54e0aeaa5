"""Pasting-scheme contexts.

A ps-context is recognised by replaying the four rules of the judgment
Γ ⊢ps x:A, where x is the "dangling" variable:

  pss   (x:*) ⊢ps x:*
  pse   Γ ⊢ps x:A        gives  Γ, y:A, f:x->y ⊢ps f:(x->y)
  psd   Γ ⊢ps f:(x->y)   gives  Γ ⊢ps y:A
  ps    Γ ⊢ps x:*        gives  Γ ⊢ps

A derivation is unique when it exists, so `check_ps` is a single
left-to-right scan with no backtracking: for each (y, f) pair of entries it
applies psd until the dangling type has the dimension of y's type, then
pse.

The telescope after the first entry is a sequence of (y:A, f:x->y) blocks,
and the source/target boundaries are computed directly on those blocks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

from catt_checker.calculus.substitution import dim, dim_ctx
from catt_checker.graph.globset import Cell, GlobSet, triangle_closure
from catt_checker.models.errors import PsShapeError
from catt_checker.models.syntax import Arr, Context, Obj, RawType, Var, ident

logger = logging.getLogger(__name__)

Rule = Literal["pss", "pse", "psd", "ps"]


@dataclass(frozen=True, slots=True)
class PsStep:
    """One rule application; `var` and `ty` are the resulting dangling variable."""

    rule: Rule
    var: str
    ty: RawType


@dataclass(frozen=True, slots=True)
class DimTable:
    """Dimensions of the peaks and of the gluings between consecutive peaks."""

    top: tuple[int, ...]
    glue: tuple[int, ...]

    def __str__(self) -> str:
        top = " ".join(str(n) for n in self.top)
        glue = " ".join(str(n) for n in self.glue)
        return f"top: {top} / glue: {glue}" if glue else f"top: {top} / glue:"


@dataclass(frozen=True, slots=True)
class PsContext:
    ctx: Context
    dim: int
    trace: tuple[PsStep, ...]
    loc_max: tuple[str, ...]
    dim_table: DimTable


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def _psd(step: PsStep) -> PsStep:
    ty = step.ty
    assert isinstance(ty, Arr) and isinstance(ty.tgt, Var)
    return PsStep("psd", ty.tgt.name, ty.base)


def check_ps(ctx: Context) -> PsContext:
    """Derive Γ ⊢ps, or raise PsShapeError at the first entry no rule accepts."""
    entries = ctx.entries
    if not entries:
        raise PsShapeError("The empty context is not a ps-context")
    x, ty = entries[0]
    if ty != Obj():
        raise PsShapeError(f"A ps-context starts with an object, not {x!r}")

    trace: list[PsStep] = [PsStep("pss", x, Obj())]
    seen = {x}
    i = 1
    while i < len(entries):
        y, ty_y = entries[i]
        if i + 1 >= len(entries):
            raise PsShapeError(f"Neither pse nor psd applies at {y!r}: no arrow follows it")
        f, ty_f = entries[i + 1]

        current = trace[-1]
        while dim(current.ty) > dim(ty_y):
            current = _psd(current)
            trace.append(current)
        if dim(current.ty) != dim(ty_y) or current.ty != ty_y:
            raise PsShapeError(
                f"Neither pse nor psd applies at {y!r}: its type does not extend "
                f"the dangling variable {current.var!r}"
            )
        if ty_f != Arr(current.ty, Var(current.var), Var(y)):
            raise PsShapeError(
                f"Neither pse nor psd applies at {f!r}: expected an arrow "
                f"from {current.var!r} to {y!r}"
            )
        for name in (y, f):
            if name in seen:
                raise PsShapeError(f"Variable {name!r} is not fresh")
            seen.add(name)
        trace.append(PsStep("pse", f, ty_f))
        i += 2

    current = trace[-1]
    while isinstance(current.ty, Arr):
        current = _psd(current)
        trace.append(current)
    trace.append(PsStep("ps", current.var, current.ty))

    loc_max, table = _peaks(trace)
    ps = PsContext(
        ctx=ctx,
        dim=dim_ctx(ctx),
        trace=tuple(trace),
        loc_max=loc_max,
        dim_table=table,
    )
    logger.debug("ps-context %s: %s", ctx.names, " ".join(s.rule for s in trace))
    return ps


def _peaks(trace: list[PsStep]) -> tuple[tuple[str, ...], DimTable]:
    loc_max: list[str] = []
    top: list[int] = []
    glue: list[int] = []
    for prev, step in zip(trace, trace[1:]):
        if prev.rule in ("pss", "pse") and step.rule in ("psd", "ps"):
            loc_max.append(prev.var)
            top.append(dim(prev.ty) + 1)
        if prev.rule == "psd" and step.rule == "pse":
            glue.append(dim(prev.ty) + 1)
    return tuple(loc_max), DimTable(tuple(top), tuple(glue))


def locally_max(ps: PsContext) -> list[str]:
    return list(ps.loc_max)


def dim_table(ps: PsContext) -> DimTable:
    return ps.dim_table


# ---------------------------------------------------------------------------
# Boundaries
# ---------------------------------------------------------------------------


def _blocks(ctx: Context) -> list[tuple[tuple[str, RawType], tuple[str, RawType]]]:
    rest = ctx.entries[1:]
    return [(rest[k], rest[k + 1]) for k in range(0, len(rest), 2)]


def _check_index(ps: PsContext, i: int | None) -> int:
    if i is None:
        i = ps.dim - 1
    if i < 0:
        raise ValueError(f"Boundary index must be >= 0, got {i}")
    return i


def src_ctx(ps: PsContext, i: int | None = None) -> Context:
    """The i-source ∂⁻ᵢ; defaults to the boundary of dimension dim - 1."""
    i = _check_index(ps, i)
    out = [ps.ctx.entries[0]]
    for y_entry, f_entry in _blocks(ps.ctx):
        if dim(y_entry[1]) >= i - 1:
            continue
        out.extend((y_entry, f_entry))
    return Context(tuple(out))


def tgt_ctx(ps: PsContext, i: int | None = None) -> Context:
    """The i-target ∂⁺ᵢ; a block sitting exactly on the boundary replaces its source."""
    i = _check_index(ps, i)
    out = [ps.ctx.entries[0]]
    for y_entry, f_entry in _blocks(ps.ctx):
        n = dim(y_entry[1])
        if n >= i:
            continue
        if n == i - 1:
            out.pop()
            out.append(y_entry)
        else:
            out.extend((y_entry, f_entry))
    return Context(tuple(out))


# ---------------------------------------------------------------------------
# Reconstruction from a globular set
# ---------------------------------------------------------------------------


def cell_name(cell: Cell) -> str:
    """The variable naming *cell* in a reconstructed context.

    Cells that are already identifiers keep their name; any other id, such
    as the integers of a hand-built set, becomes `c<id>` (0 -> c0).
    """
    if isinstance(cell, str):
        return ident(cell)
    return ident(f"c{cell}")


def reconstruct_ps(g: GlobSet) -> Context:
    """The unique ps-context whose globular set is `g.relabel(cell_name)`.

    Starts at the ◁-least 0-cell and greedily extends the dangling cell with
    its ◁-least unplaced outgoing cell, moving to the target when there is
    none. Raises PsShapeError when some cell cannot be placed, ValueError
    when two cells would get the same name.
    """
    if not len(g):
        raise PsShapeError("The empty globular set is not a pasting scheme")
    names = {c: cell_name(c) for c in g.order}
    if len(set(names.values())) != len(names):
        raise ValueError(f"Cell names collide: {sorted(names.values())}")
    rel = triangle_closure(g)
    minimal = [
        c for c in g.cells(0)
        if not any(rel.before(d, c) for d in g.order if d != c)
    ]
    if not minimal:
        raise PsShapeError("No ◁-minimal object to start from")

    start = minimal[0]
    types: dict[Cell, RawType] = {start: Obj()}
    entries: list[tuple[str, RawType]] = [(names[start], Obj())]
    dangling = start
    while len(types) < len(g):
        candidates = [c for c in g.order if c not in types and g.src.get(c) == dangling]
        if candidates:
            least = [
                c for c in candidates
                if not any(rel.before(d, c) for d in candidates if d != c)
            ]
            cell = (least or candidates)[0]
            y = g.tgt[cell]
            if y in types:
                raise PsShapeError(f"Cell {cell!r} closes a loop onto {y!r}")
            base = types[dangling]
            types[y] = base
            types[cell] = Arr(base, Var(names[dangling]), Var(names[y]))
            entries.extend(((names[y], base), (names[cell], types[cell])))
            dangling = cell
        elif g.dims[dangling] > 0:
            dangling = g.tgt[dangling]
        else:
            unplaced = [c for c in g.order if c not in types]
            raise PsShapeError(f"Cells {unplaced!r} cannot be placed")

    ctx = Context(tuple(entries))
    check_ps(ctx)
    return ctx
