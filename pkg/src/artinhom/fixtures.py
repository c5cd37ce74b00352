"""Standard coefficient systems used by the tests and the command line."""
from __future__ import annotations

from fractions import Fraction

from .braidrep import BraidedSpace, LeftBraidedSpace, one_dim_space
from .exactfield import QQ, FieldCtx
from .linalg import LinearMap


def hecke_braiding(q=2, ctx: FieldCtx = QQ) -> LinearMap:
    """The standard two-dimensional braiding with eigenvalues q and -1/q.

    e_a (x) e_a -> q e_a (x) e_a; e_a (x) e_b -> e_b (x) e_a for a < b;
    e_a (x) e_b -> e_b (x) e_a + (q - 1/q) e_a (x) e_b for a > b.
    """
    q = ctx.coerce(q)
    idx = lambda a, b: a + 2 * b
    entries = {}
    for a in range(2):
        for b in range(2):
            if a == b:
                entries[(idx(a, a), idx(a, a))] = q
            else:
                entries[(idx(b, a), idx(a, b))] = ctx.one()
                if a > b:
                    entries[(idx(a, b), idx(a, b))] = q - q.inv()
    return LinearMap(4, 4, entries, ctx)


def swap(dim_a: int, dim_b: int, ctx: FieldCtx = QQ) -> LinearMap:
    """The flip A (x) B -> B (x) A."""
    return LinearMap(dim_a * dim_b, dim_a * dim_b,
                     {(b + dim_b * a, a + dim_a * b): ctx.one() for a in range(dim_a) for b in range(dim_b)},
                     ctx)


def squared_space(sigma: LinearMap, dim_v: int) -> LeftBraidedSpace:
    """(V, V, sigma, sigma^2) with separated braiding sigma itself."""
    return LeftBraidedSpace(dim_v, dim_v, sigma, sigma @ sigma, sigma)


def hecke_space(q=2, ctx: FieldCtx = QQ) -> LeftBraidedSpace:
    return squared_space(hecke_braiding(q, ctx), 2)


def diagonal_braiding(qs, ctx: FieldCtx = QQ) -> LinearMap:
    """sigma(e_a (x) e_b) = qs[a][b] e_b (x) e_a."""
    d = len(qs)
    return LinearMap(d * d, d * d,
                     {(b + d * a, a + d * b): ctx.coerce(Fraction(qs[a][b])) for a in range(d) for b in range(d)},
                     ctx)


def trivial_space(ctx: FieldCtx = QQ) -> LeftBraidedSpace:
    return one_dim_space(1, 1, 1, ctx)


def one_dim_braided(q, ctx: FieldCtx = QQ) -> BraidedSpace:
    return BraidedSpace(1, LinearMap.scalar(ctx.coerce(q), ctx))
