"""Disk and sphere contexts, and the types and terms they classify.

  U_0     = *                      D^0    = (d0 : *)
  U_{n+1} = d_{2n} -> d_{2n+1}     S^n    = D^n, d_{2n+1} : U_n
                                   D^{n+1} = S^n, d_{2n+2} : U_{n+1}
  S^-1    = ()

An n-dimensional type over Γ is the same thing as a substitution Γ -> S^{n-1},
and a term of dimension n the same thing as a substitution Γ -> D^n. The
encode/decode pairs below are inverse to each other.
"""

from __future__ import annotations

from functools import cache

from catt_checker.calculus.substitution import apply_type, dim, free_vars
from catt_checker.engine.environment import Environment
from catt_checker.engine.kernel import infer_term
from catt_checker.models.errors import ScopeError, TypeMismatchError
from catt_checker.models.syntax import (
    Arr,
    Context,
    Obj,
    RawTerm,
    RawType,
    Substitution,
    Var,
)


def _d(i: int) -> str:
    return f"d{i}"


@cache
def disk_type(n: int) -> RawType:
    """U_n, the type of the top cell of D^n."""
    if n < 0:
        raise ValueError(f"No disk type of dimension {n}")
    if n == 0:
        return Obj()
    return Arr(disk_type(n - 1), Var(_d(2 * n - 2)), Var(_d(2 * n - 1)))


@cache
def sphere(n: int) -> Context:
    if n < -1:
        raise ValueError(f"No sphere of dimension {n}")
    if n == -1:
        return Context()
    return disk(n).extend(_d(2 * n + 1), disk_type(n))


@cache
def disk(n: int) -> Context:
    if n < 0:
        raise ValueError(f"No disk of dimension {n}")
    return sphere(n - 1).extend(_d(2 * n), disk_type(n))


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


def _check_scope(ctx: Context, value: RawType | Substitution) -> None:
    stray = free_vars(value) - set(ctx.names)
    if stray:
        raise ScopeError(f"Variables {sorted(stray)} are not in the context")


def _encode_type(ty: RawType) -> Substitution:
    match ty:
        case Obj():
            return Substitution()
        case Arr(base, src, tgt):
            k = dim(base) + 1
            return _encode_type(base).extend(_d(2 * k), src).extend(_d(2 * k + 1), tgt)
    raise TypeError(f"Not a type: {ty!r}")


def encode_type(ctx: Context, ty: RawType) -> Substitution:
    """The substitution ctx -> S^{dim ty} classifying *ty*."""
    _check_scope(ctx, ty)
    return _encode_type(ty)


def encode_term(env: Environment, ctx: Context, term: RawTerm) -> Substitution:
    """The substitution ctx -> D^n classifying *term*, n its dimension."""
    ty = infer_term(env, ctx, term)
    n = dim(ty) + 1
    return _encode_type(ty).extend(_d(2 * n), term)


def decode_type(ctx: Context, sub: Substitution) -> RawType:
    """U_{m+1}[sub] for *sub* targeting S^m."""
    size = len(sub)
    m = size // 2 - 1
    if size % 2 or sub.domain != sphere(m).names:
        raise TypeMismatchError(f"Substitution over {sub.domain} does not target a sphere")
    _check_scope(ctx, sub)
    return apply_type(disk_type(m + 1), sub)


def decode_term(ctx: Context, sub: Substitution) -> RawTerm:
    """The image of the top variable of the disk *sub* targets."""
    size = len(sub)
    n = (size - 1) // 2
    if size % 2 == 0 or sub.domain != disk(n).names:
        raise TypeMismatchError(f"Substitution over {sub.domain} does not target a disk")
    _check_scope(ctx, sub)
    return sub.images[-1]
