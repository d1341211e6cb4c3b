import itertools
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from iboson.algebra import MultiSeries, SeriesContext
from iboson.errors import UsageError
from iboson.partitions import StrictPartition, strict_partitions_in_box
from iboson.schurq import (
    q_one_row,
    schur_q,
    schur_q_branching,
    schur_q_pfaffian,
    skew_q_one_var,
)

X = sympy.symbols("x1 x2 x3")


def ctx_for(n, order):
    return SeriesContext(tuple(f"x{i}" for i in range(1, n + 1)), None, order)


def as_sympy(s: MultiSeries):
    syms = sympy.symbols(s.ctx.variables)
    total = 0
    for e, c in s.items():
        assert c.is_rational()
        term = sympy.Rational(c.a.numerator, c.a.denominator)
        for v, k in zip(syms, e):
            term *= v**k
        total += term
    return sympy.expand(total)


def q_by_symmetrization(mu, n):
    """2^l P_mu from the symmetrization formula over S_n."""
    xs = X[:n]
    l = len(mu)
    if l > n:
        return sympy.Integer(0)
    total = 0
    for w in itertools.permutations(range(n)):
        y = [xs[i] for i in w]
        term = sympy.Integer(1)
        for i in range(l):
            term *= y[i] ** mu[i]
            for j in range(i + 1, n):
                term *= (y[i] + y[j]) / (y[i] - y[j])
        total += term
    return sympy.expand(sympy.cancel(2**l * total / math.factorial(n - l)))


def q_row_by_sympy(m, n):
    k = sympy.Symbol("k")
    gen = sympy.Integer(1)
    for x in X[:n]:
        gen *= (1 + x * k) / (1 - x * k)
    return sympy.expand(sympy.series(gen, k, 0, m + 1).removeO().coeff(k, m))


def test_one_row_examples():
    c1 = ctx_for(1, 4)
    assert q_one_row(0, c1) == MultiSeries.one(c1)
    assert q_one_row(1, c1) == MultiSeries.monomial(c1, {"x1": 1}, 2)
    c2 = ctx_for(2, 4)
    assert str(q_one_row(2, c2)) == "2*x1^2 + 4*x1*x2 + 2*x2^2"
    assert q_one_row(-1, c2) == MultiSeries.zero(c2)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(1, 4)])
def test_one_row_matches_sympy(m, n):
    assert as_sympy(q_one_row(m, ctx_for(n, m))) == q_row_by_sympy(m, n)


def test_pfaffian_examples():
    c1 = ctx_for(1, 3)
    assert schur_q_pfaffian((1,), c1) == q_one_row(1, c1)
    assert schur_q_pfaffian((2, 1), c1) == MultiSeries.zero(c1)
    assert schur_q_pfaffian((), c1) == MultiSeries.one(c1)


def test_two_variable_value():
    c2 = ctx_for(2, 3)
    assert str(schur_q_pfaffian((2, 1), c2)) == "4*x1^2*x2 + 4*x1*x2^2"


def test_skew_one_var():
    ctx = ctx_for(1, 8)
    assert skew_q_one_var(StrictPartition((5, 2, 1)), StrictPartition((4, 1)), "x1", ctx) == MultiSeries.monomial(ctx, {"x1": 3}, 4)
    mu = StrictPartition((3, 1))
    assert skew_q_one_var(mu, mu, "x1", ctx) == MultiSeries.one(ctx)
    assert skew_q_one_var(StrictPartition((1,)), StrictPartition((2,)), "x1", ctx) == MultiSeries.zero(ctx)


def test_branching_examples():
    c2 = ctx_for(2, 4)
    assert str(schur_q_branching((1,), c2)) == "2*x1 + 2*x2"
    c1 = ctx_for(1, 6)
    for m in range(1, 6):
        assert schur_q_branching((m,), c1) == MultiSeries.monomial(c1, {"x1": m}, 2)
    assert schur_q_branching((), c2) == MultiSeries.one(c2)


def test_routes_agree_on_box():
    for n in range(0, 4):
        ctx = ctx_for(max(n, 1), 15)
        names = ctx.variables[:n]
        for mu in strict_partitions_in_box(3, 5):
            assert schur_q_pfaffian(mu, ctx, names) == schur_q_branching(mu, ctx, names), (mu, n)


@pytest.mark.parametrize("mu", [(1,), (2,), (2, 1), (3, 1), (3, 2), (3, 2, 1), (4, 1), (4, 2, 1)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_symmetrization(mu, n):
    ctx = ctx_for(n, sum(mu))
    expected = q_by_symmetrization(mu, n)
    assert as_sympy(schur_q_pfaffian(mu, ctx)) == expected
    assert as_sympy(schur_q_branching(mu, ctx)) == expected


strict_mu = st.sets(st.integers(1, 5), max_size=3).map(lambda s: tuple(sorted(s, reverse=True)))


@settings(max_examples=40, deadline=None)
@given(strict_mu, st.integers(2, 3))
def test_symmetric_homogeneous_integral(mu, n):
    ctx = ctx_for(n, 15)
    q = schur_q_pfaffian(mu, ctx)
    assert q.has_integer_coefficients()
    assert all(sum(e) == sum(mu) for e, _ in q.items())
    swapped = schur_q_pfaffian(mu, ctx, tuple(reversed(ctx.variables)))
    assert swapped == q


def test_method_dispatch():
    ctx = ctx_for(2, 4)
    assert schur_q((2,), ctx, method="branching") == schur_q((2,), ctx)
    with pytest.raises(UsageError):
        schur_q((2,), ctx, method="jacobi")


def test_reserved_variable():
    ctx = SeriesContext(("_k",), None, 3)
    with pytest.raises(UsageError):
        q_one_row(1, ctx)
