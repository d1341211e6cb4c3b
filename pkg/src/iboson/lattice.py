"""Two-species occupation-number lattice: mode actions, L-matrix products, the normalized
B and C operators, admissibility, the map to Fock labels and the scalar product.

A configuration of one species on sites ``0..M`` is a tuple ``(n0, n1, ..., nM)`` with
``n0 >= 0`` and ``ni`` in ``{0, 1}`` for ``i >= 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .algebra import (
    INV_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    MultiSeries,
    QSqrt2,
    SeriesContext,
    pow2,
    sum_series,
)
from .errors import UsageError
from .fock import FockLabel, FockVector, fock_inner
from .partitions import StrictPartition, TwoPartition, strict_partitions_in_box
from .plane import b_weight, enumerate_boxed_strict
from .schurq import schur_q

Config = tuple[int, ...]
Key = tuple[Config, Config]

CREATE = "create"
ANNIHILATE = "annihilate"
NUMBER = "number"
KET = "ket"
BRA = "bra"


@dataclass(frozen=True)
class LatticeConfig:
    """Occupations of one species; ``occupations[0]`` is the site-0 count."""

    species: int
    occupations: Config

    def __post_init__(self) -> None:
        if self.species not in (1, 2):
            raise UsageError("species must be 1 or 2")
        occ = tuple(int(n) for n in self.occupations)
        if not occ:
            raise UsageError("a configuration needs at least site 0")
        _check_config(occ)
        object.__setattr__(self, "occupations", occ)

    @property
    def size(self) -> int:
        return len(self.occupations) - 1

    @property
    def particles(self) -> int:
        return sum(self.occupations)

    def to_text(self) -> str:
        return f"{self.species}:{','.join(str(n) for n in self.occupations)}"

    @classmethod
    def parse(cls, text: str) -> LatticeConfig:
        head, sep, tail = text.strip().replace(" ", ":", 1).partition(":")
        if not sep:
            raise UsageError(f"expected 'species:n0,n1,...', got {text!r}")
        try:
            return cls(int(head), tuple(int(t) for t in tail.split(",")))
        except ValueError:
            raise UsageError(f"cannot parse configuration {text!r}") from None


def _check_config(occ: Config) -> None:
    if occ[0] < 0:
        raise UsageError("site-0 occupation must be non-negative")
    for n in occ[1:]:
        if n not in (0, 1):
            raise UsageError("occupations of sites >= 1 must be 0 or 1")


def site_action(op: str, site: int, n: int, side: str) -> tuple[QSqrt2, int] | None:
    """Image of a single-site basis state: ``(factor, new occupation)``, or None if it vanishes."""
    if op == NUMBER:
        return (QSqrt2(n), n) if n else None
    if side == KET:
        if site >= 1:
            if op == ANNIHILATE:
                return (INV_SQRT2, n - 1) if n >= 1 else None
            if op == CREATE:
                # (1 + (-1)^n) / sqrt2
                return (SQRT2, n + 1) if n % 2 == 0 else None
        else:
            if op == ANNIHILATE:
                # (1 + (-1)^n) / sqrt2 times |n - 1>; there is no state below the vacuum
                return (SQRT2, n - 1) if n % 2 == 0 and n >= 1 else None
            if op == CREATE:
                return (INV_SQRT2, n + 1)
    elif side == BRA:
        if site >= 1:
            if op == CREATE:
                return (INV_SQRT2, n - 1) if n >= 1 else None
            if op == ANNIHILATE:
                return (SQRT2, n + 1) if n % 2 == 0 else None
        else:
            if op == ANNIHILATE:
                return (INV_SQRT2, n + 1)
            if op == CREATE:
                # (1 - (-1)^m) / sqrt2 times <m - 1|
                return (SQRT2, n - 1) if n % 2 == 1 else None
    else:
        raise UsageError(f"side must be {KET!r} or {BRA!r}")
    raise UsageError(f"unknown operator {op!r}")


class LatticeVector:
    """Finite combination of two-species basis kets or bras with series coefficients."""

    __slots__ = ("sizes", "ctx", "side", "n0_cap", "terms", "truncated")

    def __init__(
        self,
        sizes: tuple[int, int],
        ctx: SeriesContext,
        terms: Mapping[Key, MultiSeries] | None = None,
        side: str = KET,
        n0_cap: int | None = None,
        truncated: bool = False,
    ) -> None:
        if side not in (KET, BRA):
            raise UsageError(f"side must be {KET!r} or {BRA!r}")
        self.sizes = (int(sizes[0]), int(sizes[1]))
        self.ctx = ctx
        self.side = side
        self.n0_cap = n0_cap
        self.truncated = truncated
        clean: dict[Key, MultiSeries] = {}
        for key, c in (terms or {}).items():
            k1, k2 = key
            if len(k1) != self.sizes[0] + 1 or len(k2) != self.sizes[1] + 1:
                raise UsageError("configuration does not match the lattice sizes")
            _check_config(k1)
            _check_config(k2)
            if not isinstance(c, MultiSeries):
                c = MultiSeries.constant(ctx, c)
            elif c.ctx != ctx:
                raise UsageError("coefficient over a different series context")
            if c:
                clean[(tuple(k1), tuple(k2))] = c
        self.terms = clean

    @classmethod
    def vacuum(cls, sizes: tuple[int, int], ctx: SeriesContext, side: str = KET, n0_cap: int | None = None) -> LatticeVector:
        key = ((0,) * (sizes[0] + 1), (0,) * (sizes[1] + 1))
        return cls(sizes, ctx, {key: MultiSeries.one(ctx)}, side, n0_cap)

    @classmethod
    def basis(cls, key: Key, ctx: SeriesContext, side: str = KET, n0_cap: int | None = None) -> LatticeVector:
        sizes = (len(key[0]) - 1, len(key[1]) - 1)
        return cls(sizes, ctx, {key: MultiSeries.one(ctx)}, side, n0_cap)

    def _same_shape(self, other: LatticeVector) -> None:
        if self.sizes != other.sizes or self.ctx != other.ctx or self.side != other.side:
            raise UsageError("lattice vectors live in different spaces")

    def _with(self, terms: dict[Key, MultiSeries], truncated: bool = False) -> LatticeVector:
        out = LatticeVector.__new__(LatticeVector)
        out.sizes, out.ctx, out.side, out.n0_cap = self.sizes, self.ctx, self.side, self.n0_cap
        out.terms = {k: c for k, c in terms.items() if c}
        out.truncated = self.truncated or truncated
        return out

    def __add__(self, other: LatticeVector) -> LatticeVector:
        self._same_shape(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return self._with(terms, other.truncated)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return self + other.scale(-1)

    def scale(self, c: Any) -> LatticeVector:
        if isinstance(c, MultiSeries):
            return self._with({k: v * c for k, v in self.terms.items()})
        return self._with({k: v.scale(c) for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self.sizes == other.sizes and self.side == other.side and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Key) -> MultiSeries:
        return self.terms.get(key, MultiSeries.zero(self.ctx))

    def items(self) -> list[tuple[Key, MultiSeries]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        left, right = ("|", ">") if self.side == KET else ("<", "|")
        return " + ".join(
            f"({c}){left}{','.join(map(str, k1))};{','.join(map(str, k2))}{right}" for (k1, k2), c in self.items()
        )


def _act_word(
    word: Sequence[tuple[int, int, str]],
    terms: Mapping[Key, Any],
    side: str,
    n0_cap: int | None = None,
) -> tuple[dict[Key, Any], bool]:
    """Apply an operator word; kets take the rightmost letter first, bras the leftmost."""
    order = reversed(word) if side == KET else iter(word)
    cur: dict[Key, Any] = dict(terms)
    dropped = False
    for species, site, op in order:
        nxt: dict[Key, Any] = {}
        j = species - 1
        for key, c in cur.items():
            cfg = key[j]
            if site >= len(cfg):
                raise UsageError(f"site {site} out of range for species {species}")
            hit = site_action(op, site, cfg[site], side)
            if hit is None:
                continue
            factor, n = hit
            if site == 0 and n0_cap is not None and n > n0_cap:
                dropped = True
                continue
            new_cfg = cfg[:site] + (n,) + cfg[site + 1 :]
            new_key = (new_cfg, key[1]) if j == 0 else (key[0], new_cfg)
            v = c * factor
            if new_key in nxt:
                nxt[new_key] = nxt[new_key] + v
            else:
                nxt[new_key] = v
        cur = {k: v for k, v in nxt.items() if not v.is_zero()}
    return cur, dropped


def apply_mode(op: str, site: int, v: LatticeVector, species: int = 1, side: str | None = None) -> LatticeVector:
    """Act with one generator on a vector (from the left on kets, from the right on bras)."""
    if side is not None and side != v.side:
        raise UsageError(f"vector is a {v.side}, not a {side}")
    if species not in (1, 2):
        raise UsageError("species must be 1 or 2")
    if not 0 <= site <= v.sizes[species - 1]:
        raise UsageError(f"site {site} out of range 0..{v.sizes[species - 1]}")
    terms, dropped = _act_word(((species, site, op),), v.terms, v.side, v.n0_cap)
    return v._with(terms, dropped)


def inner_product(bra: LatticeVector, ket: LatticeVector) -> MultiSeries:
    """Pairing of a bra with a ket on the lattice."""
    if bra.side != BRA or ket.side != KET:
        raise UsageError("inner_product takes a bra and a ket")
    if bra.sizes != ket.sizes or bra.ctx != ket.ctx:
        raise UsageError("vectors live in different spaces")
    total = MultiSeries.zero(ket.ctx)
    for key, c in bra.terms.items():
        d = ket.terms.get(key)
        if d is None:
            continue
        w = basis_pairing(key)
        if w:
            total = total + (c * d).scale(w)
    return total


def basis_pairing(key: Key) -> QSqrt2:
    """Pairing of a basis bra with the equal basis ket; site 0 contributes 2**m0 only for m0 in {0, 1}."""
    exp = 0
    for cfg in key:
        if cfg[0] > 1:
            return ZERO
        exp += cfg[0] - sum(cfg[1:])
    return pow2(exp)


def is_admissible(m: Config | LatticeConfig, n: Config | LatticeConfig) -> bool:
    """Tail sums of ``m - n``: the total is 1 and every tail lies in {0, 1}."""
    if isinstance(m, LatticeConfig) and isinstance(n, LatticeConfig) and m.species != n.species:
        return False
    a = m.occupations if isinstance(m, LatticeConfig) else tuple(m)
    b = n.occupations if isinstance(n, LatticeConfig) else tuple(n)
    if len(a) != len(b):
        return False
    tail = 0
    for i in range(len(a) - 1, -1, -1):
        tail += a[i] - b[i]
        if tail not in (0, 1):
            return False
    return tail == 1


def config_partition(cfg: Config) -> StrictPartition:
    """Occupied sites ``>= 1`` as a strict partition; site 0 carries no part."""
    return StrictPartition(tuple(i for i in range(len(cfg) - 1, 0, -1) if cfg[i]))


def map_to_fock(key: Key) -> tuple[TwoPartition, int]:
    """Two-partition of a basis configuration and the power of two normalizing it."""
    first, second = config_partition(key[0]), config_partition(key[1])
    return TwoPartition(first, second), -len(first) - len(second)


def admissible_images(cfg: Config) -> list[tuple[Config, int, int]]:
    """All ``m`` admissible to ``cfg``: ``(m, power of two, spectral exponent)``."""
    top = len(cfg) - 1
    out: list[tuple[Config, int, int]] = []

    def rec(i: int, tail: int, chosen: list[int], twos: int, exp: int) -> None:
        if i == 0:
            d0 = 1 - tail
            m = (cfg[0] + d0, *reversed(chosen))
            out.append((m, twos, exp))
            return
        for mi in (0, 1):
            d = mi - cfg[i]
            t = tail + d
            if t in (0, 1):
                rec(i - 1, t, chosen + [mi], twos + (d == 1), exp + t)

    rec(top, 0, [], 0, 0)
    return sorted(out)


# Symbolic L-matrix products


class Laurent:
    """Laurent polynomial in the half-spectral variable u with field coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Any] | None = None) -> None:
        self.terms = {e: QSqrt2.coerce(c) for e, c in (terms or {}).items() if QSqrt2.coerce(c)}

    @classmethod
    def mono(cls, e: int, c: Any = 1) -> Laurent:
        return cls({e: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Laurent) -> Laurent:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Laurent(out)

    def __mul__(self, other: Any) -> Laurent:
        if isinstance(other, Laurent):
            out: dict[int, QSqrt2] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    out[e] = out[e] + c1 * c2 if e in out else c1 * c2
            return Laurent(out)
        c = QSqrt2.coerce(other)
        return Laurent({e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def invert_variable(self) -> Laurent:
        """Substitute ``u -> 1/u``."""
        return Laurent({-e: c for e, c in self.terms.items()})

    def shift(self, k: int) -> Laurent:
        return Laurent({e + k: c for e, c in self.terms.items()})

    def evaluate(self, u: Any) -> QSqrt2:
        u = QSqrt2.coerce(u)
        total = ZERO
        for e, c in self.terms.items():
            total = total + c * u**e
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Laurent) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]


Word = tuple[tuple[int, int, str], ...]
OperatorPoly = dict[Word, Laurent]


def _op_add(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    out = dict(a)
    for w, c in b.items():
        s = out[w] + c if w in out else c
        if s.is_zero():
            out.pop(w, None)
        else:
            out[w] = s
    return out


def _op_mul(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    out: OperatorPoly = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            c = c1 * c2
            s = out[w] + c if w in out else c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


@dataclass(frozen=True)
class LMatrix:
    """2x2 matrix of operator polynomials: words in the lattice generators with Laurent coefficients."""

    entries: tuple[tuple[Any, Any], tuple[Any, Any]]

    @classmethod
    def site(cls, species: int, i: int) -> LMatrix:
        """The L-matrix of one site: ``diag(1/u, u)`` with ``sqrt2`` times creation/annihilation off the diagonal."""
        return cls(
            (
                ({(): Laurent.mono(-1)}, {((species, i, CREATE),): Laurent.mono(0, SQRT2)}),
                ({((species, i, ANNIHILATE),): Laurent.mono(0, SQRT2)}, {(): Laurent.mono(1)}),
            )
        )

    def __matmul__(self, other: LMatrix) -> LMatrix:
        a, b = self.entries, other.entries
        return LMatrix(
            tuple(  # type: ignore[arg-type]
                tuple(_op_add(_op_mul(a[r][0], b[0][c]), _op_mul(a[r][1], b[1][c])) for c in range(2))
                for r in range(2)
            )
        )

    def entry(self, r: int, c: int) -> OperatorPoly:
        return self.entries[r][c]


@lru_cache(maxsize=None)
def monodromy(species: int, size: int) -> LMatrix:
    """Ordered product of site L-matrices from site ``size`` down to site 0."""
    t = LMatrix.site(species, size)
    for i in range(size - 1, -1, -1):
        t = t @ LMatrix.site(species, i)
    return t


def full_monodromy(sizes: tuple[int, int]) -> LMatrix:
    """Species-2 monodromy times species-1 monodromy."""
    return monodromy(2, sizes[1]) @ monodromy(1, sizes[0])


def _normalized_entry(poly: OperatorPoly, size: int, inverted: bool) -> dict[Word, list[tuple[int, QSqrt2]]]:
    # multiply by u**size (after u -> 1/u for the lower-left entry) and rewrite in x = u**2
    out: dict[Word, list[tuple[int, QSqrt2]]] = {}
    for word, lp in poly.items():
        lp = (lp.invert_variable() if inverted else lp).shift(size)
        terms = []
        for e, c in sorted(lp.terms.items()):
            if e < 0 or e % 2:
                raise ArithmeticError(f"normalized entry has a non-polynomial term u^{e}")
            terms.append((e // 2, c))
        out[word] = terms
    return out


@lru_cache(maxsize=None)
def _b_entry(species: int, size: int) -> dict[Word, list[tuple[int, QSqrt2]]]:
    return _normalized_entry(monodromy(species, size).entry(0, 1), size, False)


@lru_cache(maxsize=None)
def _c_entry(species: int, size: int) -> dict[Word, list[tuple[int, QSqrt2]]]:
    return _normalized_entry(monodromy(species, size).entry(1, 0), size, True)


def _spectral_exponent(ctx: SeriesContext, var: str, k: int) -> tuple[int, ...]:
    e = [0] * ctx.nvars
    e[ctx.index(var)] = k
    return tuple(e)


def _apply_matrix_route(entry: dict[Word, list[tuple[int, QSqrt2]]], var: str, v: LatticeVector) -> LatticeVector:
    ctx = v.ctx
    acc: dict[Key, MultiSeries] = {}
    dropped = False
    for word, poly in entry.items():
        image, d = _act_word(word, v.terms, v.side, v.n0_cap)
        dropped = dropped or d
        for key, c in image.items():
            for k, coeff in poly:
                s = c.shift(_spectral_exponent(ctx, var, k), coeff)
                acc[key] = acc[key] + s if key in acc else s
    return v._with(acc, dropped)


def _apply_combinatorial(species: int, var: str, v: LatticeVector) -> LatticeVector:
    ctx = v.ctx
    j = species - 1
    acc: dict[Key, MultiSeries] = {}
    dropped = False
    for key, c in v.terms.items():
        for m, twos, k in admissible_images(key[j]):
            if v.n0_cap is not None and m[0] > v.n0_cap:
                dropped = True
                continue
            new_key = (m, key[1]) if j == 0 else (key[0], m)
            s = c.shift(_spectral_exponent(ctx, var, k), 2**twos)
            acc[new_key] = acc[new_key] + s if new_key in acc else s
    return v._with(acc, dropped)


def apply_B(species: int, spectral: str, v: LatticeVector, method: str = "combinatorial") -> LatticeVector:
    """Normalized B operator of one species acting on a ket."""
    if v.side != KET:
        raise UsageError("B acts on kets")
    v.ctx.index(spectral)
    if method == "combinatorial":
        return _apply_combinatorial(species, spectral, v)
    if method == "matrix":
        return _apply_matrix_route(_b_entry(species, v.sizes[species - 1]), spectral, v)
    raise UsageError(f"unknown method {method!r}")


def apply_C(species: int, spectral: str, v: LatticeVector, method: str = "combinatorial") -> LatticeVector:
    """Normalized C operator of one species acting on a bra from the right."""
    if v.side != BRA:
        raise UsageError("C acts on bras")
    v.ctx.index(spectral)
    if method == "combinatorial":
        return _apply_combinatorial(species, spectral, v)
    if method == "matrix":
        return _apply_matrix_route(_c_entry(species, v.sizes[species - 1]), spectral, v)
    raise UsageError(f"unknown method {method!r}")


def basis_configs(size: int, n0_max: int) -> Iterator[Config]:
    """All single-species configurations with ``n0 <= n0_max``."""
    for n0 in range(n0_max + 1):
        for mask in range(2**size):
            yield (n0,) + tuple((mask >> (i - 1)) & 1 for i in range(1, size + 1))


# Intertwining relation


def r_matrix(name: str, u: QSqrt2, w: QSqrt2) -> list[list[QSqrt2]]:
    """4x4 intertwiner at ``x = u**2``, ``y = w**2``; ``printed`` is the only one provided."""
    if name != "printed":
        raise UsageError(f"unknown R-matrix {name!r}")
    x, y = u * u, w * w
    s = 2 * u * w
    return [
        [x + y, ZERO, ZERO, ZERO],
        [ZERO, y - x, s, ZERO],
        [ZERO, s, x - y, ZERO],
        [ZERO, ZERO, ZERO, x + y],
    ]


def _evaluate(poly: OperatorPoly, u: QSqrt2) -> dict[Word, QSqrt2]:
    out = {}
    for w, lp in poly.items():
        c = lp.evaluate(u)
        if c:
            out[w] = c
    return out


def _apply_numeric(op: dict[Word, QSqrt2], vec: dict[Key, QSqrt2]) -> dict[Key, QSqrt2]:
    acc: dict[Key, QSqrt2] = {}
    for word, c in op.items():
        image, _ = _act_word(word, vec, KET)
        for k, v in image.items():
            acc[k] = acc[k] + v * c if k in acc else v * c
    return {k: v for k, v in acc.items() if v}


def _vec_add(a: dict[Key, QSqrt2], b: dict[Key, QSqrt2], scale: QSqrt2 = ONE) -> dict[Key, QSqrt2]:
    out = dict(a)
    for k, v in b.items():
        v = v * scale
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v}


@dataclass
class RTTResult:
    passed: bool
    checked: int = 0
    witness: str | None = None
    failures: int = 0
    components: list[str] = field(default_factory=list)


def verify_rtt(
    t: LMatrix,
    keys: Iterable[Key],
    points: Sequence[tuple[Any, Any]],
    r_name: str = "printed",
) -> RTTResult:
    """Check ``R T1(x) T2(y) = T2(y) T1(x) R`` on basis kets at rational points ``(u, w)``.

    ``T1 = T (x) 1`` and ``T2 = 1 (x) T``, so the left side has entries ``T(x)_ac T(y)_bd`` and the
    right side ``T(y)_bd T(x)_ac``. ``x = u**2`` and ``y = w**2``. Every 4x4 component is compared
    on every basis ket.
    """
    keys = list(keys)
    result = RTTResult(True)
    bad_components: set[str] = set()
    for pu, pw in points:
        u, w = QSqrt2.coerce(Fraction(pu)), QSqrt2.coerce(Fraction(pw))
        if u.is_zero() or w.is_zero():
            raise UsageError("test points must be non-zero")
        tx = [[_evaluate(t.entry(a, c), u) for c in range(2)] for a in range(2)]
        ty = [[_evaluate(t.entry(a, c), w) for c in range(2)] for a in range(2)]
        r = r_matrix(r_name, u, w)
        for key in keys:
            vec = {key: ONE}
            # tensor components: (T(x) (x) T(y))[(a,b),(c,d)] = T(x)[a][c] T(y)[b][d]
            cache_l: dict[tuple[int, int], dict[Key, QSqrt2]] = {}
            cache_r: dict[tuple[int, int], dict[Key, QSqrt2]] = {}

            def left(row: int, col: int) -> dict[Key, QSqrt2]:
                if (row, col) not in cache_l:
                    a, b = divmod(row, 2)
                    c, d = divmod(col, 2)
                    cache_l[(row, col)] = _apply_numeric(tx[a][c], _apply_numeric(ty[b][d], vec))
                return cache_l[(row, col)]

            def right(row: int, col: int) -> dict[Key, QSqrt2]:
                if (row, col) not in cache_r:
                    a, b = divmod(row, 2)
                    c, d = divmod(col, 2)
                    cache_r[(row, col)] = _apply_numeric(ty[b][d], _apply_numeric(tx[a][c], vec))
                return cache_r[(row, col)]

            for i in range(4):
                for j in range(4):
                    lhs: dict[Key, QSqrt2] = {}
                    rhs: dict[Key, QSqrt2] = {}
                    for k in range(4):
                        if r[i][k]:
                            lhs = _vec_add(lhs, left(k, j), r[i][k])
                        if r[k][j]:
                            rhs = _vec_add(rhs, right(i, k), r[k][j])
                    result.checked += 1
                    if lhs != rhs:
                        result.passed = False
                        result.failures += 1
                        comp = f"({i // 2 + 1}{i % 2 + 1},{j // 2 + 1}{j % 2 + 1})"
                        bad_components.add(comp)
                        if result.witness is None:
                            result.witness = f"component {comp} at u={pu}, w={pw} on ket {key}"
    result.components = sorted(bad_components)
    return result


def rtt_points(count: int, seed: int) -> list[tuple[Fraction, Fraction]]:
    """Seeded non-zero rational points with numerators and denominators bounded by 7."""
    rng = random.Random(seed)

    def draw() -> Fraction:
        while True:
            num = rng.randint(-7, 7)
            if num:
                return Fraction(num, rng.randint(1, 7))

    return [(draw(), draw()) for _ in range(count)]


def single_site_lmatrix(species: int, site: int, n0_max: int = 4) -> tuple[LMatrix, list[Key]]:
    """A lone L-matrix at ``site`` with the basis kets it acts on."""
    values = range(n0_max + 1) if site == 0 else (0, 1)
    keys: list[Key] = []
    for n in values:
        cfg = tuple(n if k == site else 0 for k in range(site + 1))
        keys.append((cfg, (0,)) if species == 1 else ((0,), cfg))
    return LMatrix.site(species, site), keys


def monodromy_keys(sizes: tuple[int, int], n0_max: int = 3) -> list[Key]:
    return [(a, b) for a in basis_configs(sizes[0], n0_max) for b in basis_configs(sizes[1], n0_max)]


# Scalar product


def scalar_product_context(n1: int, n2: int, total: int) -> tuple[SeriesContext, dict[str, list[str]]]:
    """Series context with variables x, z (species 1) and y, v (species 2)."""
    names = {
        "x": [f"x{i}" for i in range(1, n1 + 1)],
        "z": [f"z{i}" for i in range(1, n1 + 1)],
        "y": [f"y{i}" for i in range(1, n2 + 1)],
        "v": [f"v{i}" for i in range(1, n2 + 1)],
    }
    variables = tuple(names["x"] + names["z"] + names["y"] + names["v"])
    return SeriesContext(variables, None, total), names


def lattice_to_fock(v: LatticeVector) -> FockVector:
    """Push a lattice vector through the normalized map to Fock labels (site 0 is forgotten)."""
    acc: dict[FockLabel, list[MultiSeries]] = {}
    for key, c in v.terms.items():
        pair, exp = map_to_fock(key)
        acc.setdefault(FockLabel(pair.first, pair.second), []).append(c.scale(pow2(exp)))
    return FockVector(v.ctx, {lab: sum_series(v.ctx, cs) for lab, cs in acc.items()}, side=v.side)


def scalar_product(
    sizes: tuple[int, int],
    ctx: SeriesContext,
    names: Mapping[str, Sequence[str]],
    route: str = "lattice",
    method: str = "combinatorial",
    mutate: bool = False,
) -> MultiSeries:
    """Scalar product of a C-built bra with a B-built ket, by one of three routes.

    ``names`` maps ``x, z`` to the species-1 variables and ``y, v`` to the species-2 ones.
    ``mutate`` perturbs one weight and exists only to exercise failure reporting.
    """
    m1, m2 = sizes
    x, z, y, w = (list(names[k]) for k in ("x", "z", "y", "v"))
    if len(x) != len(z) or len(y) != len(w):
        raise UsageError("x and z (and y and v) must have equal length")
    if route == "lattice":
        cap = max(len(x), len(y))
        ket = LatticeVector.vacuum(sizes, ctx, KET, n0_cap=cap)
        for var in w:
            ket = apply_B(2, var, ket, method)
        for var in z:
            ket = apply_B(1, var, ket, method)
        bra = LatticeVector.vacuum(sizes, ctx, BRA, n0_cap=cap)
        for var in y:
            bra = apply_C(2, var, bra, method)
        for var in x:
            bra = apply_C(1, var, bra, method)
        out = fock_inner(lattice_to_fock(bra), lattice_to_fock(ket))
    elif route == "planepartition":
        out = _pp_factor(len(x), m1, x, z, ctx, mutate) * _pp_factor(len(y), m2, y, w, ctx, False)
    elif route == "schurq":
        out = _q_factor(len(x), m1, x, z, ctx) * _q_factor(len(y), m2, y, w, ctx)
    else:
        raise UsageError(f"unknown route {route!r}")
    return out


def _pp_factor(n: int, m: int, left: list[str], right: list[str], ctx: SeriesContext, mutate: bool) -> MultiSeries:
    terms = [b_weight(pi, left, right, ctx) for pi in enumerate_boxed_strict(n, n, m)]
    if mutate:
        for k, t in enumerate(terms):
            if t and sum(next(iter(t.terms))) > 0:
                terms[k] = t.scale(2)
                break
    return sum_series(ctx, terms)


def _q_factor(n: int, m: int, left: list[str], right: list[str], ctx: SeriesContext) -> MultiSeries:
    terms = []
    for mu in strict_partitions_in_box(n, m):
        q1 = schur_q(mu, ctx, left)
        if not q1:
            continue
        terms.append((q1 * schur_q(mu, ctx, right)).scale(pow2(-len(mu))))
    return sum_series(ctx, terms)
