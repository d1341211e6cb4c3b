"""Strict partitions, interlacing, and boxed enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import UsageError


@dataclass(frozen=True, order=False)
class StrictPartition:
    """A strictly decreasing tuple of positive integers. The empty tuple is allowed."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        for p in parts:
            if p <= 0:
                raise UsageError(f"parts must be positive, got {parts}")
        for a, b in zip(parts, parts[1:]):
            if a <= b:
                raise UsageError(f"parts must be strictly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> StrictPartition:
        s = text.strip()
        if s in ("", "∅", "()", "empty"):
            return cls(())
        try:
            return cls(tuple(int(t) for t in s.split(",")))
        except ValueError:
            raise UsageError(f"cannot parse partition {text!r}") from None

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def part(self, i: int) -> int:
        """The ``i``-th part counting from 1, or 0 past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"StrictPartition({self.parts})"

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.weight, self.parts)

    def __lt__(self, other: StrictPartition) -> bool:
        return self.sort_key() < other.sort_key()

    def fits(self, max_length: int, max_part: int) -> bool:
        return self.length <= max_length and (not self.parts or self.parts[0] <= max_part)


EMPTY = StrictPartition(())


class TwoPartition(NamedTuple):
    """A pair of strict partitions, one per boson species / fermion flavor."""

    first: StrictPartition
    second: StrictPartition

    @property
    def weight(self) -> int:
        return self.first.weight + self.second.weight

    def __str__(self) -> str:
        return f"{self.first}|{self.second}"

    @classmethod
    def parse(cls, text: str) -> TwoPartition:
        left, sep, right = text.partition("|")
        if not sep:
            raise UsageError(f"expected 'mu1|mu2', got {text!r}")
        return cls(StrictPartition.parse(left), StrictPartition.parse(right))


def as_strict(p: StrictPartition | Iterable[int]) -> StrictPartition:
    return p if isinstance(p, StrictPartition) else StrictPartition(tuple(p))


def interlaces(mu: StrictPartition, nu: StrictPartition) -> bool:
    """True when ``mu`` interlaces ``nu`` from above: mu_i >= nu_i >= mu_{i+1} for all i."""
    n = max(len(mu), len(nu))
    for i in range(1, n + 1):
        if not (mu.part(i) >= nu.part(i) >= mu.part(i + 1)):
            return False
    return True


def sharp_count(mu: StrictPartition, nu: StrictPartition) -> int:
    """Number of parts of ``mu`` that are not parts of ``nu``."""
    return len(set(mu.parts) - set(nu.parts))


def _descending(bounds: list[tuple[int, int]], prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # choose a strictly decreasing positive sequence with entry k in bounds[k]
    k = len(prefix)
    if k == len(bounds):
        yield prefix
        return
    lo, hi = bounds[k]
    if prefix:
        hi = min(hi, prefix[-1] - 1)
    for v in range(hi, lo - 1, -1):
        if v <= 0:
            # a zero entry ends the partition; later entries must be allowed to vanish too
            if all(b[0] <= 0 for b in bounds[k:]):
                yield prefix
            return
        yield from _descending(bounds, prefix + (v,))


@lru_cache(maxsize=None)
def _below(mu: StrictPartition) -> tuple[StrictPartition, ...]:
    bounds = [(mu.part(i + 1), mu.part(i)) for i in range(1, len(mu) + 1)]
    found = {StrictPartition(p) for p in _descending(bounds, ())}
    return tuple(sorted(found, key=StrictPartition.sort_key))


def interlaced_below(mu: StrictPartition) -> tuple[StrictPartition, ...]:
    """All strict ``nu`` with ``mu`` interlacing ``nu``, in weight-then-lexicographic order."""
    return _below(as_strict(mu))


@lru_cache(maxsize=None)
def _above(nu: StrictPartition, max_length: int, max_part: int) -> tuple[StrictPartition, ...]:
    if len(nu) > max_length or (nu.parts and nu.parts[0] > max_part):
        return ()
    top = len(nu) + 1
    bounds = [(nu.part(1), max_part)] + [(nu.part(i), nu.part(i - 1)) for i in range(2, top + 1)]
    bounds = bounds[:max_length]
    found = {StrictPartition(p) for p in _descending(bounds, ())}
    return tuple(sorted((p for p in found if interlaces(p, nu)), key=StrictPartition.sort_key))


def interlacing_extensions(nu: StrictPartition, max_length: int, max_part: int) -> tuple[StrictPartition, ...]:
    """All strict ``mu`` interlacing ``nu`` from above with length and largest part bounded."""
    return _above(as_strict(nu), max_length, max_part)


def interlaced_above_by_weight(nu: StrictPartition, extra: int) -> tuple[StrictPartition, ...]:
    """All strict ``mu`` interlacing ``nu`` from above with ``|mu| - |nu| <= extra``."""
    nu = as_strict(nu)
    candidates = interlacing_extensions(nu, len(nu) + 1, nu.part(1) + extra)
    return tuple(m for m in candidates if m.weight - nu.weight <= extra)


@lru_cache(maxsize=None)
def _box(max_length: int, max_part: int) -> tuple[StrictPartition, ...]:
    out: list[StrictPartition] = []

    def rec(prefix: tuple[int, ...], hi: int) -> None:
        out.append(StrictPartition(prefix))
        if len(prefix) == max_length:
            return
        for v in range(hi, 0, -1):
            rec(prefix + (v,), v - 1)

    rec((), max_part)
    return tuple(sorted(out, key=StrictPartition.sort_key))


def strict_partitions_in_box(max_length: int, max_part: int) -> tuple[StrictPartition, ...]:
    """Strict partitions with at most ``max_length`` parts, each at most ``max_part``.

    Ordered by weight, then lexicographically.
    """
    if max_length < 0 or max_part < 0:
        raise UsageError("box dimensions must be non-negative")
    return _box(max_length, max_part)


def strict_partitions_of(n: int) -> tuple[StrictPartition, ...]:
    """Strict partitions of ``n``."""
    return tuple(p for p in strict_partitions_in_box(n, n) if p.weight == n)


def parse_partition(text: str) -> StrictPartition:
    return StrictPartition.parse(text)
