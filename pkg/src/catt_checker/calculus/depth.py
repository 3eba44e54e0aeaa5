"""Two nesting measures on terms.

`depth` counts syntactic nesting of coherence applications. `coherence_depth`
measures how deep the coherences a term relies on are stacked, looking
through the types of variables as well:

  cd(x)            = cd(A)           for x : A in the context
  cd(Obj)          = 0
  cd(Hom A t u)    = max(cd A, cd t, cd u)
  cd(coh_{G,A}[g]) = max(cd(A) + 1, cd g)
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


def depth(value: RawTerm | Substitution) -> int:
    match value:
        case Var():
            return 0
        case CohApp(_, sub):
            return 1 + depth(sub)
        case Substitution():
            return max((depth(t) for _, t in value), default=0)
    raise TypeError(f"No depth for {value!r}")


def coherence_depth(value: RawTerm | RawType | Substitution, ctx: Context) -> int:
    """cd of *value*, whose variables are typed in *ctx*."""
    match value:
        case Var(name):
            ty = ctx.lookup(name)
            if ty is None:
                raise ScopeError(f"Variable {name!r} is not in scope")
            return coherence_depth(ty, ctx)
        case Obj():
            return 0
        case Arr(base, src, tgt):
            return max(
                coherence_depth(base, ctx),
                coherence_depth(src, ctx),
                coherence_depth(tgt, ctx),
            )
        case CohApp(key, sub):
            return max(coherence_depth(key.ty, key.ctx) + 1, coherence_depth(sub, ctx))
        case Substitution():
            return max((coherence_depth(t, ctx) for _, t in value), default=0)
    raise TypeError(f"No coherence depth for {value!r}")
