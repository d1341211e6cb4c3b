"""Exact arithmetic: the field Q(sqrt 2), truncated multivariate series, Pfaffians.

Coefficients everywhere in the package are :class:`QSqrt2` values ``a + b*sqrt(2)``
with rational ``a`` and ``b``. Series are finite dictionaries from exponent tuples to
coefficients, truncated on every operation by the caps of their :class:`SeriesContext`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, UsageError

Scalar = int | Fraction


def _norm(value: Any) -> Scalar:
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return _norm(Fraction(value.numerator, value.denominator))
    raise UsageError(f"not a rational number: {value!r}")


def _fmt_rational(value: Scalar) -> str:
    return str(value)


class QSqrt2:
    """An element ``a + b*sqrt(2)`` of Q(sqrt 2) with exact rational parts."""

    __slots__ = ("a", "b")

    def __init__(self, a: Any = 0, b: Any = 0) -> None:
        self.a = _norm(a)
        self.b = _norm(b)

    @staticmethod
    def coerce(value: Any) -> QSqrt2:
        if isinstance(value, QSqrt2):
            return value
        if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
            return QSqrt2(value)
        raise UsageError(f"cannot interpret {value!r} as an element of Q(sqrt 2)")

    @classmethod
    def parse(cls, text: str) -> QSqrt2:
        """Parse ``"p/q"``, ``"a+b*sqrt2"`` or ``"sqrt2"``-style strings."""
        s = text.replace(" ", "").replace("√2", "sqrt2").replace("sqrt(2)", "sqrt2")
        if not s:
            raise UsageError("empty number")
        if "sqrt2" not in s:
            return cls(Fraction(s))
        head, _, tail = s.partition("sqrt2")
        if tail:
            raise UsageError(f"cannot parse {text!r}")
        # split the rational part from the sqrt2 coefficient at the last sign
        cut = max(head.rfind("+", 1), head.rfind("-", 1))
        if cut > 0 and not head[cut - 1] in "/*e":
            rational, coeff = head[:cut], head[cut:]
        else:
            rational, coeff = "0", head
        coeff = coeff.rstrip("*")
        if coeff in ("", "+"):
            coeff = "1"
        elif coeff == "-":
            coeff = "-1"
        return cls(Fraction(rational), Fraction(coeff))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"QSqrt2({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if self.b == 0:
            return _fmt_rational(self.a)
        coeff = "" if self.b == 1 else "-" if self.b == -1 else f"{_fmt_rational(self.b)}*"
        root = f"{coeff}sqrt2"
        if self.a == 0:
            return root
        sign = "" if root.startswith("-") else "+"
        return f"{_fmt_rational(self.a)}{sign}{root}"

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.a, -self.b)

    def __pos__(self) -> QSqrt2:
        return self

    def __add__(self, other: Any) -> QSqrt2:
        if isinstance(other, QSqrt2):
            return QSqrt2(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Any) -> QSqrt2:
        if isinstance(other, QSqrt2):
            return QSqrt2(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other: Any) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            return QSqrt2(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other: Any) -> QSqrt2:
        if isinstance(other, QSqrt2):
            if self.b == 0 and other.b == 0:
                return QSqrt2(self.a * other.a)
            return QSqrt2(
                self.a * other.a + 2 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        """Galois conjugate ``a - b*sqrt(2)``."""
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Scalar:
        return _norm(self.a * self.a - 2 * self.b * self.b)

    def inverse(self) -> QSqrt2:
        if self.is_zero():
            raise DomainError("inverse of zero in Q(sqrt 2)")
        n = Fraction(self.norm())
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other: Any) -> QSqrt2:
        return self * QSqrt2.coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> QSqrt2:
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> QSqrt2:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2**0.5


ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))


def qsqrt2_arith(op: str, lhs: Any, rhs: Any = None) -> QSqrt2:
    """Apply ``op`` (one of add, sub, mul, neg, invert, div) to field elements."""
    x = QSqrt2.coerce(lhs)
    if op == "neg":
        return -x
    if op in ("invert", "inv"):
        return x.inverse()
    y = QSqrt2.coerce(rhs)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise UsageError(f"unknown operation {op!r}")


def pow2(k: int) -> QSqrt2:
    """``2**k`` as a field element, valid for negative ``k`` too."""
    return QSqrt2(2**k if k >= 0 else Fraction(1, 2 ** (-k)))


Exponent = tuple[int, ...]


@dataclass(frozen=True)
class SeriesContext:
    """Variable names and truncation caps shared by a family of series.

    Attributes:
        variables: variable names, in the order of exponent tuples.
        caps: maximum exponent per variable, or None for no per-variable cap.
        total: maximum total degree, or None.
    """

    variables: tuple[str, ...]
    caps: tuple[int | None, ...] | None = None
    total: int | None = None

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        if len(set(variables)) != len(variables):
            raise UsageError(f"repeated variable names in {variables}")
        caps = (None,) * len(variables) if self.caps is None else tuple(self.caps)
        if len(caps) != len(variables):
            raise UsageError("one cap per variable is required")
        for c in caps:
            if c is not None and c < 0:
                raise UsageError("caps must be non-negative")
        if self.total is not None and self.total < 0:
            raise UsageError("total-degree cap must be non-negative")
        object.__setattr__(self, "caps", caps)

    @classmethod
    def with_total(cls, variables: Sequence[str], total: int) -> SeriesContext:
        return cls(tuple(variables), None, total)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_bounded(self) -> bool:
        return self.total is not None or all(c is not None for c in self.caps)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def admits(self, exps: Exponent) -> bool:
        if self.total is not None and sum(exps) > self.total:
            return False
        for e, c in zip(exps, self.caps):
            if e < 0 or (c is not None and e > c):
                return False
        return True

    def exponent(self, powers: Mapping[str, int] | Exponent) -> Exponent:
        if isinstance(powers, tuple):
            if len(powers) != self.nvars:
                raise UsageError("exponent tuple has the wrong length")
            return powers
        exps = [0] * self.nvars
        for name, e in powers.items():
            exps[self.index(name)] += e
        return tuple(exps)

    def extend(self, name: str, cap: int | None, total: int | None) -> SeriesContext:
        return SeriesContext(self.variables + (name,), self.caps + (cap,), total)


class MultiSeries:
    """A truncated power series in the variables of a :class:`SeriesContext`.

    Terms outside the caps are dropped on construction, and zero coefficients are pruned,
    so two series over the same context are equal exactly when their term dictionaries are.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SeriesContext, terms: Mapping[Exponent, Any] | None = None) -> None:
        self.ctx = ctx
        clean: dict[Exponent, QSqrt2] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != ctx.nvars:
                    raise UsageError("exponent tuple has the wrong length")
                c = QSqrt2.coerce(c)
                if not c.is_zero() and ctx.admits(exps):
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ctx: SeriesContext, terms: dict[Exponent, QSqrt2]) -> MultiSeries:
        out = cls.__new__(cls)
        out.ctx = ctx
        out.terms = terms
        return out

    @classmethod
    def zero(cls, ctx: SeriesContext) -> MultiSeries:
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: SeriesContext, value: Any = 1) -> MultiSeries:
        return cls(ctx, {(0,) * ctx.nvars: value})

    @classmethod
    def one(cls, ctx: SeriesContext) -> MultiSeries:
        return cls.constant(ctx, 1)

    @classmethod
    def monomial(cls, ctx: SeriesContext, powers: Mapping[str, int] | Exponent, coeff: Any = 1) -> MultiSeries:
        return cls(ctx, {ctx.exponent(powers): coeff})

    @classmethod
    def variable(cls, ctx: SeriesContext, name: str) -> MultiSeries:
        return cls.monomial(ctx, {name: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, powers: Mapping[str, int] | Exponent) -> QSqrt2:
        return self.terms.get(self.ctx.exponent(powers), ZERO)

    def items(self) -> list[tuple[Exponent, QSqrt2]]:
        """Terms sorted by total degree, then exponent tuple in reverse lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def min_degree(self) -> int | None:
        return min((sum(e) for e in self.terms), default=None)

    def _check(self, other: MultiSeries) -> None:
        if other.ctx != self.ctx:
            raise UsageError("series over different contexts cannot be combined")

    def _lift(self, other: Any) -> MultiSeries | None:
        if isinstance(other, MultiSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, QSqrt2)):
            return MultiSeries.constant(self.ctx, other)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiSeries):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self.terms == MultiSeries.constant(self.ctx, other).terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> MultiSeries:
        return MultiSeries._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: Any) -> MultiSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return MultiSeries._raw(self.ctx, out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> MultiSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> MultiSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c: Any) -> MultiSeries:
        c = QSqrt2.coerce(c)
        if c.is_zero():
            return MultiSeries.zero(self.ctx)
        return MultiSeries._raw(self.ctx, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps: Exponent, coeff: Any = 1) -> MultiSeries:
        """Multiply by the monomial ``coeff * x**exps``, truncating."""
        c = QSqrt2.coerce(coeff)
        if c.is_zero():
            return MultiSeries.zero(self.ctx)
        ctx = self.ctx
        out: dict[Exponent, QSqrt2] = {}
        for e, v in self.terms.items():
            n = tuple(a + b for a, b in zip(e, exps))
            if ctx.admits(n):
                out[n] = v * c
        return MultiSeries._raw(ctx, out)

    def __mul__(self, other: Any) -> MultiSeries:
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self.scale(other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiSeries:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return series_invert_unit(self) ** (-k)
        result, base = MultiSeries.one(self.ctx), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> MultiSeries:
        return series_invert_unit(self)

    def coefficient_in(self, name: str, power: int, target: SeriesContext) -> MultiSeries:
        """Coefficient of ``name**power`` as a series over ``target``.

        ``target`` must list the remaining variables (in any order) of this series.
        """
        i = self.ctx.index(name)
        pos = [self.ctx.index(v) for v in target.variables]
        out: dict[Exponent, QSqrt2] = {}
        for e, c in self.terms.items():
            if e[i] != power:
                continue
            rest = [e[j] for j in range(len(e)) if j != i]
            if sum(rest) != sum(e[p] for p in pos):
                raise UsageError("target context omits a variable that occurs in the series")
            out[tuple(e[p] for p in pos)] = c
        return MultiSeries(target, out)

    def restrict(self, target: SeriesContext) -> MultiSeries:
        """Re-express over ``target`` (whose variables must include every variable that occurs)."""
        index = {v: k for k, v in enumerate(target.variables)}
        out: dict[Exponent, QSqrt2] = {}
        for e, c in self.terms.items():
            n = [0] * target.nvars
            for name, p in zip(self.ctx.variables, e):
                if p:
                    if name not in index:
                        raise UsageError(f"variable {name!r} is not in the target context")
                    n[index[name]] = p
            out[tuple(n)] = c
        return MultiSeries(target, out)

    def truncate(self, total: int) -> MultiSeries:
        return MultiSeries._raw(self.ctx, {e: c for e, c in self.terms.items() if sum(e) <= total})

    def map_coefficients(self, fn: Callable[[QSqrt2], Any]) -> MultiSeries:
        return MultiSeries(self.ctx, {e: fn(c) for e, c in self.terms.items()})

    def has_integer_coefficients(self) -> bool:
        return all(c.b == 0 and isinstance(c.a, int) for c in self.terms.values())

    def monomial_text(self, exps: Exponent) -> str:
        parts = []
        for name, p in zip(self.ctx.variables, exps):
            if p == 1:
                parts.append(name)
            elif p:
                parts.append(f"{name}^{p}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.items():
            mono = self.monomial_text(e)
            cs = str(c)
            if c.b != 0:
                cs = f"({cs})"
            if not mono:
                chunks.append(cs)
            elif c == 1:
                chunks.append(mono)
            elif c == -1:
                chunks.append(f"-{mono}")
            else:
                chunks.append(f"{cs}*{mono}")
        text = " + ".join(chunks)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiSeries({self.ctx.variables}, {str(self)!r})"

    def to_json(self) -> list[list[Any]]:
        return [[list(e), str(c)] for e, c in self.items()]


def series_mul(lhs: MultiSeries, rhs: MultiSeries) -> MultiSeries:
    """Truncated product of two series over the same context."""
    lhs._check(rhs)
    ctx = lhs.ctx
    if not lhs.terms or not rhs.terms:
        return MultiSeries.zero(ctx)
    total = ctx.total
    caps = ctx.caps
    capped = any(c is not None for c in caps)
    right = sorted(((sum(e), e, c) for e, c in rhs.terms.items()), key=lambda t: t[0])
    out: dict[Exponent, QSqrt2] = {}
    for e1, c1 in lhs.terms.items():
        d1 = sum(e1)
        for d2, e2, c2 in right:
            if total is not None and d1 + d2 > total:
                break
            e = tuple(a + b for a, b in zip(e1, e2))
            if capped and any(c is not None and x > c for x, c in zip(e, caps)):
                continue
            v = c1 * c2
            s = out.get(e)
            out[e] = v if s is None else s + v
    return MultiSeries._raw(ctx, {e: c for e, c in out.items() if not c.is_zero()})


def series_invert_unit(s: MultiSeries) -> MultiSeries:
    """Inverse of a series with invertible constant term, exact within the caps."""
    ctx = s.ctx
    if not ctx.is_bounded():
        raise UsageError("inversion needs a bounded context")
    zero = (0,) * ctx.nvars
    c0 = s.terms.get(zero, ZERO)
    if c0.is_zero():
        raise DomainError("series has zero constant term and is not a unit")
    inv0 = c0.inverse()
    # s = c0 (1 - t) with t nilpotent in the truncated ring, so s^-1 = inv0 * sum t^k
    t = -(s.scale(inv0) - MultiSeries.one(ctx))
    if not t.terms:
        return MultiSeries.constant(ctx, inv0)
    bound = ctx.total if ctx.total is not None else sum(c for c in ctx.caps if c is not None)
    acc = MultiSeries.one(ctx)
    power = MultiSeries.one(ctx)
    for _ in range(bound):
        power = power * t
        if not power.terms:
            break
        acc = acc + power
    return acc.scale(inv0)


@dataclass(frozen=True)
class SkewMatrix:
    """A square skew-symmetric matrix with entries in any commutative ring."""

    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise UsageError("matrix is not square")
            if row[i] != 0:
                raise UsageError("diagonal of a skew-symmetric matrix must vanish")
            for j in range(i + 1, n):
                if row[j] != -rows[j][i]:
                    raise UsageError(f"entries ({i},{j}) and ({j},{i}) are not opposite")

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def from_upper(cls, n: int, entry: Callable[[int, int], Any]) -> SkewMatrix:
        """Build from a function giving the entries above the diagonal."""
        rows: list[list[Any]] = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = entry(i, j)
                rows[i][j] = v
                rows[j][i] = -v
        diag_zero = None
        for i in range(n):
            for j in range(n):
                if i != j and isinstance(rows[i][j], MultiSeries):
                    diag_zero = MultiSeries.zero(rows[i][j].ctx)
                    break
            if diag_zero is not None:
                break
        if diag_zero is not None:
            for i in range(n):
                rows[i][i] = diag_zero
        return cls(tuple(tuple(r) for r in rows))


def pfaffian(matrix: SkewMatrix, one: Any = 1) -> Any:
    """Pfaffian by expansion along the first row.

    Odd sizes give 0; the empty matrix gives ``one``.
    """
    n = matrix.size
    a = matrix.entries
    if n % 2:
        return one * 0

    @lru_cache(maxsize=None)
    def pf(rest: tuple[int, ...]) -> Any:
        if not rest:
            return one
        i, tail = rest[0], rest[1:]
        total = None
        for k, j in enumerate(tail):
            term = a[i][j] * pf(tail[:k] + tail[k + 1 :])
            if k % 2:
                term = -term
            total = term if total is None else total + term
        return total

    return pf(tuple(range(n)))


def sum_series(ctx: SeriesContext, items: Iterable[MultiSeries]) -> MultiSeries:
    acc: dict[Exponent, QSqrt2] = {}
    for s in items:
        for e, c in s.terms.items():
            v = acc.get(e)
            acc[e] = c if v is None else v + c
    return MultiSeries._raw(ctx, {e: c for e, c in acc.items() if not c.is_zero()})


def first_difference(lhs: MultiSeries, rhs: MultiSeries) -> tuple[Exponent, QSqrt2, QSqrt2] | None:
    """Lexicographically smallest exponent tuple where two series differ."""
    lhs._check(rhs)
    diff = [e for e in set(lhs.terms) | set(rhs.terms) if lhs.terms.get(e, ZERO) != rhs.terms.get(e, ZERO)]
    if not diff:
        return None
    e = min(diff)
    return e, lhs.terms.get(e, ZERO), rhs.terms.get(e, ZERO)


def iter_exponents(ctx: SeriesContext) -> Iterator[Exponent]:
    """All exponent tuples admitted by a bounded context."""
    if not ctx.is_bounded():
        raise UsageError("cannot enumerate an unbounded context")

    def rec(i: int, left: int | None, prefix: tuple[int, ...]) -> Iterator[Exponent]:
        if i == ctx.nvars:
            yield prefix
            return
        cap = ctx.caps[i]
        hi = left if cap is None else cap if left is None else min(cap, left)
        assert hi is not None
        for e in range(hi + 1):
            yield from rec(i + 1, None if left is None else left - e, prefix + (e,))

    yield from rec(0, ctx.total, ())
