"""Schur Q-functions as truncated series: one-row functions, the Pfaffian formula,
single-variable skew functions and the branching recursion."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .algebra import MultiSeries, SeriesContext, SkewMatrix, pfaffian, pow2, series_invert_unit
from .errors import UsageError
from .partitions import StrictPartition, as_strict, interlaced_below, interlaces, sharp_count

_AUX = "_k"


def _vars(ctx: SeriesContext, variables: Sequence[str] | None) -> tuple[str, ...]:
    names = ctx.variables if variables is None else tuple(variables)
    for v in names:
        ctx.index(v)
    return names


@lru_cache(maxsize=256)
def _one_row_table(ctx: SeriesContext, variables: tuple[str, ...], top: int) -> tuple[MultiSeries, ...]:
    # prod (1 + x k) / (1 - x k) expanded in an auxiliary variable k up to k**top
    if _AUX in ctx.variables:
        raise UsageError(f"variable name {_AUX!r} is reserved")
    # every factor pairs one power of x with one power of k, so total degree 2*top is exact
    aux = ctx.extend(_AUX, top, 2 * top)
    gen = MultiSeries.one(aux)
    for name in variables:
        xk = MultiSeries.monomial(aux, {name: 1, _AUX: 1})
        gen = gen * (1 + xk) * series_invert_unit(1 - xk)
    return tuple(gen.coefficient_in(_AUX, m, ctx) for m in range(top + 1))


def q_one_row(m: int, ctx: SeriesContext, variables: Sequence[str] | None = None) -> MultiSeries:
    """The one-row function of degree ``m`` (zero for negative ``m``, one for ``m = 0``)."""
    if m < 0:
        return MultiSeries.zero(ctx)
    return _one_row_table(ctx, _vars(ctx, variables), m)[m]


def _q_rows(top: int, ctx: SeriesContext, variables: tuple[str, ...]) -> tuple[MultiSeries, ...]:
    return _one_row_table(ctx, variables, max(top, 0))


def q_two_row(a: int, b: int, rows: Sequence[MultiSeries], ctx: SeriesContext) -> MultiSeries:
    """Two-row function from one-row functions ``rows[0..a+b]``."""
    out = rows[a] * rows[b]
    for k in range(1, b + 1):
        term = rows[a + k] * rows[b - k]
        out = out + term.scale(2 if k % 2 == 0 else -2)
    return out


def schur_q_pfaffian(mu: StrictPartition | Sequence[int], ctx: SeriesContext, variables: Sequence[str] | None = None) -> MultiSeries:
    """Q_mu as the Pfaffian of two-row functions (a zero part pads odd lengths)."""
    mu = as_strict(mu)
    names = _vars(ctx, variables)
    parts = list(mu.parts)
    if len(parts) % 2:
        parts.append(0)
    if not parts:
        return MultiSeries.one(ctx)
    rows = _q_rows(parts[0] + parts[1], ctx, names)
    entries = {}
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            entries[(i, j)] = q_two_row(parts[i], parts[j], rows, ctx)
    matrix = SkewMatrix.from_upper(len(parts), lambda i, j: entries[(i, j)])
    return pfaffian(matrix, MultiSeries.one(ctx))


def skew_q_one_var(mu: StrictPartition, nu: StrictPartition, var: str, ctx: SeriesContext) -> MultiSeries:
    """Skew function of one variable: ``2**#(mu|nu) * var**(|mu|-|nu|)`` when mu interlaces nu, else 0."""
    mu, nu = as_strict(mu), as_strict(nu)
    if not interlaces(mu, nu):
        return MultiSeries.zero(ctx)
    return MultiSeries.monomial(ctx, {var: mu.weight - nu.weight}, pow2(sharp_count(mu, nu)))


def schur_q_branching(mu: StrictPartition | Sequence[int], ctx: SeriesContext, variables: Sequence[str] | None = None) -> MultiSeries:
    """Q_mu by peeling off the last variable with single-variable skew functions."""
    names = _vars(ctx, variables)
    return _branch(as_strict(mu), ctx, names)


@lru_cache(maxsize=4096)
def _branch(mu: StrictPartition, ctx: SeriesContext, names: tuple[str, ...]) -> MultiSeries:
    n = len(names)
    if len(mu) > n:
        return MultiSeries.zero(ctx)
    if n == 0:
        return MultiSeries.one(ctx) if not mu.parts else MultiSeries.zero(ctx)
    if n == 1:
        return skew_q_one_var(mu, StrictPartition(()), names[0], ctx)
    total = MultiSeries.zero(ctx)
    for nu in interlaced_below(mu):
        if len(nu) > n - 1:
            continue
        head = _branch(nu, ctx, names[:-1])
        if head:
            total = total + head * skew_q_one_var(mu, nu, names[-1], ctx)
    return total


def schur_q(mu: StrictPartition | Sequence[int], ctx: SeriesContext, variables: Sequence[str] | None = None, method: str = "pfaffian") -> MultiSeries:
    if method == "pfaffian":
        return schur_q_pfaffian(mu, ctx, variables)
    if method == "branching":
        return schur_q_branching(mu, ctx, variables)
    raise UsageError(f"unknown method {method!r}")
