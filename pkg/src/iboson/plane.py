"""Plane partitions, their diagonal slices, the path statistic and boxed enumeration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import MultiSeries, SeriesContext, pow2
from .errors import BoundExceeded, DomainError, UsageError
from .partitions import StrictPartition, interlaced_below, strict_partitions_in_box


@dataclass(frozen=True)
class PlanePartition:
    """Rows of positive integers, weakly decreasing along rows and down columns."""

    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        while rows and not rows[-1]:
            rows = rows[:-1]
        for r, row in enumerate(rows):
            if not row:
                raise UsageError("empty row inside a plane partition")
            for c, v in enumerate(row):
                if v <= 0:
                    raise UsageError("entries must be positive")
                if c and row[c - 1] < v:
                    raise UsageError(f"row {r} is not weakly decreasing")
                if r and (c >= len(rows[r - 1]) or rows[r - 1][c] < v):
                    raise UsageError(f"column {c} is not weakly decreasing")
        object.__setattr__(self, "rows", rows)

    @property
    def weight(self) -> int:
        return sum(sum(r) for r in self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def max_entry(self) -> int:
        return self.rows[0][0] if self.rows else 0

    def entry(self, r: int, c: int) -> int:
        """Entry at 1-based position (r, c), zero outside the shape."""
        if 1 <= r <= len(self.rows) and 1 <= c <= len(self.rows[r - 1]):
            return self.rows[r - 1][c - 1]
        return 0

    def fits(self, n: int, l: int, m: int) -> bool:
        return self.num_rows <= n and self.num_cols <= l and self.max_entry <= m

    def to_text(self) -> str:
        """One row per line, entries separated by spaces; the empty partition is the empty string."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> PlanePartition:
        """Parse the line format, a JSON array of rows, or the compact ``"1,1;1"`` form."""
        s = text.strip()
        if s.startswith("["):
            return cls(tuple(tuple(r) for r in json.loads(s)))
        if not s:
            return cls(())
        sep = ";" if ";" in s or ("," in s and "\n" not in s) else "\n"
        rows = [r for r in s.split(sep) if r.strip()]
        try:
            return cls(tuple(tuple(int(v) for v in r.replace(",", " ").split()) for r in rows))
        except ValueError:
            raise UsageError(f"cannot parse plane partition {text!r}") from None

    def compact(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return self.compact()

    def sort_key(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        return (self.weight, self.rows)


@dataclass(frozen=True)
class SlicedPP:
    """Diagonal slices of a plane partition.

    ``center`` is the main diagonal; ``left[k-1]`` is the k-th diagonal below it (running
    down the first column) and ``right[k-1]`` the k-th above it (along the first row).
    Trailing empty slices are dropped.
    """

    left: tuple[tuple[int, ...], ...]
    center: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]

    def slice(self, i: int) -> tuple[int, ...]:
        if i == 0:
            return self.center
        seq = self.right if i > 0 else self.left
        k = abs(i)
        return seq[k - 1] if k <= len(seq) else ()

    def chain_left(self) -> list[tuple[int, ...]]:
        return [self.center, *self.left, ()]

    def chain_right(self) -> list[tuple[int, ...]]:
        return [self.center, *self.right, ()]


def slice_pp(pi: PlanePartition) -> SlicedPP:
    def diag(r0: int, c0: int) -> tuple[int, ...]:
        out = []
        r, c = r0, c0
        while pi.entry(r, c):
            out.append(pi.entry(r, c))
            r, c = r + 1, c + 1
        return tuple(out)

    left = tuple(diag(k + 1, 1) for k in range(1, pi.num_rows))
    right = tuple(diag(1, k + 1) for k in range(1, pi.num_cols))
    return SlicedPP(left, diag(1, 1), right)


def reassemble(sliced: SlicedPP) -> PlanePartition:
    """Inverse of :func:`slice_pp`."""
    cells: dict[tuple[int, int], int] = {}
    for k, part in enumerate(sliced.left, start=1):
        for j, v in enumerate(part):
            cells[(k + 1 + j, 1 + j)] = v
    for j, v in enumerate(sliced.center):
        cells[(1 + j, 1 + j)] = v
    for k, part in enumerate(sliced.right, start=1):
        for j, v in enumerate(part):
            cells[(1 + j, k + 1 + j)] = v
    if not cells:
        return PlanePartition(())
    nrows = max(r for r, _ in cells)
    rows = []
    for r in range(1, nrows + 1):
        row = []
        c = 1
        while (r, c) in cells:
            row.append(cells[(r, c)])
            c += 1
        rows.append(tuple(row))
    return PlanePartition(tuple(rows))


def _is_strict_tuple(p: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(p, p[1:]))


def is_strict(pi: PlanePartition) -> bool:
    """True when every diagonal slice is strictly decreasing."""
    s = slice_pp(pi)
    return all(_is_strict_tuple(p) for p in (*s.left, s.center, *s.right))


class DisjointSet:
    def __init__(self) -> None:
        self.parent: dict[object, object] = {}

    def add(self, x: object) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: object) -> object:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: object, y: object) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


def count_regions(pi: PlanePartition) -> int:
    """Number of edge-connected groups of equal positive entries."""
    ds = DisjointSet()
    for r, row in enumerate(pi.rows):
        for c, v in enumerate(row):
            ds.add((r, c))
            if c and row[c - 1] == v:
                ds.union((r, c - 1), (r, c))
            if r and c < len(pi.rows[r - 1]) and pi.rows[r - 1][c] == v:
                ds.union((r - 1, c), (r, c))
    return ds.count()


def _sharp(a: Sequence[int], b: Sequence[int]) -> int:
    return len(set(a) - set(b))


def path_exponent_formula(pi: PlanePartition) -> int:
    s = slice_pp(pi)
    total = -len(s.center)
    for chain in (s.chain_left(), s.chain_right()):
        for outer, inner in zip(chain, chain[1:]):
            total += _sharp(outer, inner)
    return total


def path_exponent(pi: PlanePartition, method: str = "formula") -> int:
    """Path statistic of a strict plane partition, by the slice formula or by counting equal-value regions."""
    if not is_strict(pi):
        raise DomainError("the path statistic is defined for strict plane partitions")
    if method == "formula":
        return path_exponent_formula(pi)
    if method == "regions":
        return count_regions(pi)
    raise UsageError(f"unknown method {method!r}")


# Enumeration


@lru_cache(maxsize=None)
def _down_chains(top: StrictPartition, steps: int) -> tuple[tuple[StrictPartition, ...], ...]:
    # sequences top > p1 > ... > p_steps with p_steps empty, each interlacing the next
    if steps == 0:
        return ((),) if not top.parts else ()
    if len(top) > steps:
        return ()
    out = []
    for nxt in interlaced_below(top):
        for rest in _down_chains(nxt, steps - 1):
            out.append((nxt,) + rest)
    return tuple(out)


def _chain_slices(chain: tuple[StrictPartition, ...]) -> tuple[tuple[int, ...], ...]:
    parts = [p.parts for p in chain]
    while parts and not parts[-1]:
        parts.pop()
    return tuple(parts)


def enumerate_boxed_strict(n: int, l: int, m: int, limit: int | None = None) -> list[PlanePartition]:
    """Strict plane partitions with at most ``n`` rows, ``l`` columns and entries at most ``m``.

    Ordered by weight, then by rows. ``limit`` bounds the number of results.
    """
    if min(n, l, m) < 0:
        raise UsageError("box dimensions must be non-negative")
    out: list[PlanePartition] = []
    for center in strict_partitions_in_box(min(n, l), m):
        lefts = _down_chains(center, n)
        rights = _down_chains(center, l)
        if limit is not None and len(out) + len(lefts) * len(rights) > limit:
            raise BoundExceeded(f"more than {limit} plane partitions in box [{n},{l},{m}]")
        for lc in lefts:
            for rc in rights:
                sliced = SlicedPP(_chain_slices(lc), center.parts, _chain_slices(rc))
                out.append(reassemble(sliced))
    out.sort(key=PlanePartition.sort_key)
    return out


def plane_partitions_of(weight: int) -> list[PlanePartition]:
    """All plane partitions of the given weight (no strictness condition)."""
    out: list[PlanePartition] = []

    def rec(rows: list[tuple[int, ...]], left: int) -> None:
        if left == 0:
            out.append(PlanePartition(tuple(rows)))
            return
        above = rows[-1] if rows else None
        for row in _rows(left, above):
            rec(rows + [row], left - sum(row))

    rec([], weight)
    out.sort(key=PlanePartition.sort_key)
    return out


def _rows(budget: int, above: tuple[int, ...] | None) -> Iterator[tuple[int, ...]]:
    # weakly decreasing positive rows of total at most budget, dominated entrywise by above
    def rec(prefix: tuple[int, ...], left: int) -> Iterator[tuple[int, ...]]:
        if prefix:
            yield prefix
        c = len(prefix)
        hi = left
        if prefix:
            hi = min(hi, prefix[-1])
        if above is not None:
            if c >= len(above):
                return
            hi = min(hi, above[c])
        for v in range(hi, 0, -1):
            yield from rec(prefix + (v,), left - v)

    yield from rec((), budget)


def b_weight(
    pi: PlanePartition,
    x_vars: Sequence[str],
    z_vars: Sequence[str],
    ctx: SeriesContext,
) -> MultiSeries:
    """Weight ``2**p(pi)`` times the slice-difference monomials in ``x_vars`` and ``z_vars``.

    Slice k below the diagonal feeds ``x_vars[k-1]`` with ``|slice(-k+1)| - |slice(-k)|``;
    slice k above feeds ``z_vars[k-1]`` likewise. The partition must have at most
    ``len(x_vars)`` rows and ``len(z_vars)`` columns.
    """
    if not is_strict(pi):
        raise DomainError("weights are defined for strict plane partitions")
    if pi.num_rows > len(x_vars) or pi.num_cols > len(z_vars):
        raise UsageError("plane partition does not fit the given variables")
    s = slice_pp(pi)
    powers: dict[str, int] = {}
    for k, name in enumerate(x_vars, start=1):
        d = sum(s.slice(-k + 1)) - sum(s.slice(-k))
        if d:
            powers[name] = powers.get(name, 0) + d
    for k, name in enumerate(z_vars, start=1):
        d = sum(s.slice(k - 1)) - sum(s.slice(k))
        if d:
            powers[name] = powers.get(name, 0) + d
    return MultiSeries.monomial(ctx, powers, pow2(path_exponent_formula(pi)))


def slice_weight_monomial(pi: PlanePartition, nleft: int, nright: int) -> tuple[list[int], list[int]]:
    """Exponent lists of the slice-difference monomial, without the power of two."""
    s = slice_pp(pi)
    xs = [sum(s.slice(-k + 1)) - sum(s.slice(-k)) for k in range(1, nleft + 1)]
    zs = [sum(s.slice(k - 1)) - sum(s.slice(k)) for k in range(1, nright + 1)]
    return xs, zs

