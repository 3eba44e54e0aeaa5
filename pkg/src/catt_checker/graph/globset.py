"""Finite globular sets and the ◁ order on their cells.

A globular set is a graded family of cells with source and target maps
from (d+1)-cells to d-cells satisfying the globular relations

  s(s(x)) = s(t(x))    t(s(x)) = t(t(x))

The ◁ relation is the transitive closure of s(x) ◁ x ◁ t(x). A finite
globular set is a pasting scheme exactly when ◁ is total and antisymmetric
(is_linear).

Cell ids are context variable names when the set comes from `to_globset`,
small integers when built by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator

from catt_checker.calculus.substitution import dim
from catt_checker.models.errors import PsShapeError
from catt_checker.models.syntax import Arr, Context, Obj, RawType, Var

Cell = Hashable


@dataclass(frozen=True, slots=True)
class GlobSet:
    """Cells with their dimension and boundary maps.

    Equality ignores `order`, which only records insertion order so that
    listings are deterministic.
    """

    dims: dict[Cell, int]
    src: dict[Cell, Cell]             # (d+1)-cell -> d-cell
    tgt: dict[Cell, Cell]
    order: tuple[Cell, ...] = field(default=(), compare=False)

    # --- Construction --------------------------------------------------------

    @classmethod
    def build(
        cls,
        cells: Iterable[tuple[Cell, int, Cell | None, Cell | None]],
    ) -> GlobSet:
        """Build from (cell, dim, src, tgt) rows; 0-cells pass None boundaries.

        Raises ValueError when a boundary is unknown, of the wrong dimension,
        or violates the globular relations.
        """
        dims: dict[Cell, int] = {}
        src: dict[Cell, Cell] = {}
        tgt: dict[Cell, Cell] = {}
        order: list[Cell] = []
        for cell, n, s, t in cells:
            if cell in dims:
                raise ValueError(f"Cell {cell!r} listed twice")
            if n < 0:
                raise ValueError(f"Cell {cell!r} has negative dimension {n}")
            if n == 0:
                if s is not None or t is not None:
                    raise ValueError(f"0-cell {cell!r} cannot have a boundary")
            else:
                for side, b in (("source", s), ("target", t)):
                    if b not in dims:
                        raise ValueError(f"{side} of {cell!r} is not a known cell: {b!r}")
                    if dims[b] != n - 1:
                        raise ValueError(
                            f"{side} of {n}-cell {cell!r} has dimension {dims[b]}"
                        )
                if n >= 2:
                    if src[s] != src[t] or tgt[s] != tgt[t]:
                        raise ValueError(f"Cell {cell!r} breaks the globular relations")
                src[cell] = s
                tgt[cell] = t
            dims[cell] = n
            order.append(cell)
        return cls(dims=dims, src=src, tgt=tgt, order=tuple(order))

    # --- Queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.order)

    def __contains__(self, cell: object) -> bool:
        return cell in self.dims

    @property
    def dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def cells(self, n: int) -> list[Cell]:
        return [c for c in self.order if self.dims[c] == n]

    def restrict(self, keep: Iterable[Cell]) -> GlobSet:
        """Sub-globular set on *keep*; boundaries of kept cells must be kept."""
        wanted = set(keep)
        return GlobSet.build(
            (c, self.dims[c], self.src.get(c), self.tgt.get(c))
            for c in self.order
            if c in wanted
        )

    def relabel(self, name: Callable[[Cell], Cell]) -> GlobSet:
        """The same shape with every cell renamed; *name* must be injective."""
        renamed = {c: name(c) for c in self.order}
        if len(set(renamed.values())) != len(renamed):
            raise ValueError("Relabelling merges distinct cells")
        return GlobSet.build(
            (
                renamed[c],
                self.dims[c],
                renamed.get(self.src.get(c)),
                renamed.get(self.tgt.get(c)),
            )
            for c in self.order
        )


# ---------------------------------------------------------------------------
# Contexts as globular sets
# ---------------------------------------------------------------------------


def _variables_only(ty: RawType) -> bool:
    while isinstance(ty, Arr):
        if not isinstance(ty.src, Var) or not isinstance(ty.tgt, Var):
            return False
        ty = ty.base
    return isinstance(ty, Obj)


def is_globular(ctx: Context) -> bool:
    """True when every type of *ctx* is built from variables only."""
    return all(_variables_only(ty) for _, ty in ctx)


def to_globset(ctx: Context) -> GlobSet:
    """One cell per variable, graded by the dimension of its type plus one."""
    if not is_globular(ctx):
        bad = next(x for x, ty in ctx if not _variables_only(ty))
        raise PsShapeError(f"Context is not globular: type of {bad!r} uses a coherence")
    rows: list[tuple[Cell, int, Cell | None, Cell | None]] = []
    for x, ty in ctx:
        if isinstance(ty, Arr):
            rows.append((x, dim(ty) + 1, ty.src.name, ty.tgt.name))
        else:
            rows.append((x, 0, None, None))
    try:
        return GlobSet.build(rows)
    except ValueError as exc:
        raise PsShapeError(f"Context does not describe a globular set: {exc}") from exc


# ---------------------------------------------------------------------------
# The ◁ relation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Relation:
    """A binary relation on the cells of a globular set.

    Row i is a bitmask: bit j is set when cells[i] ◁ cells[j].
    """

    cells: tuple[Cell, ...]
    index: dict[Cell, int]
    rows: tuple[int, ...]

    def before(self, a: Cell, b: Cell) -> bool:
        """a ◁ b."""
        return bool(self.rows[self.index[a]] >> self.index[b] & 1)

    def pairs(self) -> set[tuple[Cell, Cell]]:
        return {
            (a, b)
            for i, a in enumerate(self.cells)
            for j, b in enumerate(self.cells)
            if self.rows[i] >> j & 1
        }


def triangle_closure(g: GlobSet) -> Relation:
    """Transitive closure of s(x) ◁ x ◁ t(x) (Warshall, rows as bitsets)."""
    cells = tuple(g.order)
    index = {c: i for i, c in enumerate(cells)}
    rows = [0] * len(cells)
    for c, s in g.src.items():
        rows[index[s]] |= 1 << index[c]
    for c, t in g.tgt.items():
        rows[index[c]] |= 1 << index[t]

    for k in range(len(cells)):
        bit = 1 << k
        row_k = rows[k]
        for i in range(len(cells)):
            if rows[i] & bit:
                rows[i] |= row_k
    return Relation(cells=cells, index=index, rows=tuple(rows))


def is_linear(g: GlobSet) -> bool:
    """◁ is total and antisymmetric (and irreflexive); the empty set is not linear."""
    if not g.dims:
        return False
    rel = triangle_closure(g)
    n = len(rel.cells)
    for i in range(n):
        if rel.rows[i] >> i & 1:
            return False
        for j in range(i + 1, n):
            forward = rel.rows[i] >> j & 1
            backward = rel.rows[j] >> i & 1
            if forward == backward:
                return False
    return True


def locally_maximal_cells(g: GlobSet) -> list[Cell]:
    """Cells x of dimension >= 1 with nothing strictly between s(x) and x or x and t(x).

    A globular set made of a single 0-cell has that cell as its only
    locally maximal element.
    """
    if len(g) == 1:
        return list(g.order)
    rel = triangle_closure(g)
    out: list[Cell] = []
    for x in g.order:
        if g.dims[x] == 0:
            continue
        s, t = g.src[x], g.tgt[x]
        between = any(
            (rel.before(s, y) and rel.before(y, x)) or (rel.before(x, y) and rel.before(y, t))
            for y in g.order
            if y not in (s, t, x)
        )
        if not between:
            out.append(x)
    return out
