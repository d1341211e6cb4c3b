"""Two-flavor neutral-fermion Fock space: labeled states, the pairing, a Clifford vacuum
expectation oracle, vertex operators and single-mode actions.

A basis ket is ``phi_{a1} ... phi_{ak} [phi_0] bar-phi_{b1} ... [bar-phi_0] |0>`` with strictly
decreasing positive modes; the optional zero modes are the per-flavor pad flags. By default a
label gets a pad exactly when its number of parts is odd, so each flavor has even fermion number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .algebra import MultiSeries, QSqrt2, SeriesContext, pow2, series_invert_unit, sum_series
from .errors import UsageError
from .partitions import (
    StrictPartition,
    TwoPartition,
    interlaced_above_by_weight,
    interlaced_below,
    sharp_count,
    strict_partitions_in_box,
)

KET = "ket"
BRA = "bra"


@dataclass(frozen=True)
class FockLabel:
    """Strict partitions for the two flavors plus zero-mode pad flags."""

    first: StrictPartition
    second: StrictPartition
    pad1: bool | None = None
    pad2: bool | None = None

    def __post_init__(self) -> None:
        for name in ("first", "second"):
            p = getattr(self, name)
            if not isinstance(p, StrictPartition):
                object.__setattr__(self, name, StrictPartition(tuple(p)))
        if self.pad1 is None:
            object.__setattr__(self, "pad1", len(self.first) % 2 == 1)
        if self.pad2 is None:
            object.__setattr__(self, "pad2", len(self.second) % 2 == 1)
        object.__setattr__(self, "pad1", bool(self.pad1))
        object.__setattr__(self, "pad2", bool(self.pad2))

    @classmethod
    def even(cls, first: Iterable[int] | StrictPartition = (), second: Iterable[int] | StrictPartition = ()) -> FockLabel:
        return cls(_sp(first), _sp(second))

    @property
    def pair(self) -> TwoPartition:
        return TwoPartition(self.first, self.second)

    def component(self, flavor: int) -> tuple[StrictPartition, bool]:
        return (self.first, bool(self.pad1)) if flavor == 1 else (self.second, bool(self.pad2))

    def parity(self, flavor: int) -> int:
        part, pad = self.component(flavor)
        return (len(part) + pad) % 2

    def is_even(self) -> bool:
        return self.parity(1) == 0 and self.parity(2) == 0

    @property
    def weight(self) -> int:
        return self.first.weight + self.second.weight

    def replace(self, flavor: int, part: StrictPartition, pad: bool) -> FockLabel:
        if flavor == 1:
            return FockLabel(part, self.second, pad, self.pad2)
        return FockLabel(self.first, part, self.pad1, pad)

    def sort_key(self) -> tuple:
        return (self.weight, self.first.parts, self.second.parts, self.pad1, self.pad2)

    def __str__(self) -> str:
        def side(p: StrictPartition, pad: bool) -> str:
            s = str(p)
            if pad:
                s = f"{s},0" if s else "0"
            return s

        return f"{side(self.first, bool(self.pad1))}|{side(self.second, bool(self.pad2))}"

    @classmethod
    def parse(cls, text: str) -> FockLabel:
        """Parse ``"mu1|mu2"``; a trailing ``0`` part on a side sets that side's pad."""
        left, sep, right = text.partition("|")
        if not sep:
            raise UsageError(f"expected 'mu1|mu2', got {text!r}")

        def side(s: str) -> tuple[StrictPartition, bool]:
            s = s.strip()
            if not s:
                return StrictPartition(()), False
            parts = [int(t) for t in s.split(",")]
            pad = bool(parts) and parts[-1] == 0
            if pad:
                parts = parts[:-1]
            return StrictPartition(tuple(parts)), pad

        (p1, d1), (p2, d2) = side(left), side(right)
        return cls(p1, p2, d1, d2)


def _sp(p: Iterable[int] | StrictPartition) -> StrictPartition:
    return p if isinstance(p, StrictPartition) else StrictPartition(tuple(p))


VACUUM = FockLabel(StrictPartition(()), StrictPartition(()), False, False)


class FockVector:
    """Finite combination of labeled kets or bras with series coefficients."""

    __slots__ = ("ctx", "terms", "side")

    def __init__(self, ctx: SeriesContext, terms: Mapping[FockLabel, Any] | None = None, side: str = KET) -> None:
        if side not in (KET, BRA):
            raise UsageError(f"side must be {KET!r} or {BRA!r}")
        self.ctx = ctx
        self.side = side
        clean: dict[FockLabel, MultiSeries] = {}
        for lab, c in (terms or {}).items():
            if not isinstance(c, MultiSeries):
                c = MultiSeries.constant(ctx, c)
            elif c.ctx != ctx:
                raise UsageError("coefficient over a different series context")
            if c:
                clean[lab] = c
        self.terms = clean

    @classmethod
    def basis(cls, ctx: SeriesContext, label: FockLabel, side: str = KET) -> FockVector:
        return cls(ctx, {label: MultiSeries.one(ctx)}, side)

    @classmethod
    def vacuum(cls, ctx: SeriesContext, side: str = KET) -> FockVector:
        return cls.basis(ctx, VACUUM, side)

    def _new(self, terms: dict[FockLabel, MultiSeries]) -> FockVector:
        out = FockVector.__new__(FockVector)
        out.ctx, out.side = self.ctx, self.side
        out.terms = {k: c for k, c in terms.items() if c}
        return out

    def __add__(self, other: FockVector) -> FockVector:
        if other.ctx != self.ctx or other.side != self.side:
            raise UsageError("Fock vectors live in different spaces")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return self._new(terms)

    def __sub__(self, other: FockVector) -> FockVector:
        return self + other.scale(-1)

    def scale(self, c: Any) -> FockVector:
        if isinstance(c, MultiSeries):
            return self._new({k: v * c for k, v in self.terms.items()})
        return self._new({k: v.scale(c) for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.side == other.side and self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def coefficient(self, label: FockLabel) -> MultiSeries:
        return self.terms.get(label, MultiSeries.zero(self.ctx))

    def items(self) -> list[tuple[FockLabel, MultiSeries]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fmt = "|{}>" if self.side == KET else "<{}|"
        return " + ".join(f"({c})" + fmt.format(lab) for lab, c in self.items())


def _accumulate(acc: dict[FockLabel, list[MultiSeries]], ctx: SeriesContext) -> dict[FockLabel, MultiSeries]:
    return {lab: sum_series(ctx, cs) for lab, cs in acc.items()}


# Clifford oracle

CliffordWord = tuple[tuple[int, int], ...]


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@lru_cache(maxsize=None)
def _vev_one(word: tuple[int, ...]) -> int:
    # vacuum expectation of a single-flavor word
    if not word:
        return 1
    if len(word) % 2:
        return 0
    if word[-1] < 0 or word[0] > 0:
        return 0
    negatives = [k for k, a in enumerate(word) if a < 0]
    if negatives:
        # move the rightmost annihilating mode one step to the right
        k = negatives[-1]
        a, b = word[k], word[k + 1]
        out = -_vev_one(word[:k] + (b, a) + word[k + 2 :])
        if a + b == 0:
            out += 2 * _sign(a) * _vev_one(word[:k] + word[k + 2 :])
        return out
    positives = [k for k, a in enumerate(word) if a > 0]
    if positives:
        # move the leftmost creating mode one step to the left; no contraction with modes >= 0
        k = positives[0]
        return -_vev_one(word[: k - 1] + (word[k], word[k - 1]) + word[k + 1 :])
    # only zero modes remain, and their count is even
    return 1


def vev(word: Sequence[tuple[int, int]]) -> QSqrt2:
    """Vacuum expectation of a word of ``(flavor, mode)`` factors; flavors commute with each other."""
    one = tuple(m for f, m in word if f == 1)
    two = tuple(m for f, m in word if f == 2)
    if any(f not in (1, 2) for f, _ in word):
        raise UsageError("flavor must be 1 or 2")
    return QSqrt2(_vev_one(one) * _vev_one(two))


def ket_word(label: FockLabel) -> CliffordWord:
    word: list[tuple[int, int]] = [(1, m) for m in label.first.parts]
    if label.pad1:
        word.append((1, 0))
    word += [(2, m) for m in label.second.parts]
    if label.pad2:
        word.append((2, 0))
    return tuple(word)


def bra_word(label: FockLabel) -> tuple[int, CliffordWord]:
    """Sign and word of the dual bra: conjugate modes in reverse order, with ``phi*_n = (-1)^n phi_{-n}``."""
    ket = ket_word(label)
    flavor2 = [f for f in ket if f[0] == 2]
    flavor1 = [f for f in ket if f[0] == 1]
    word = [(f, -m) for f, m in reversed(flavor2)] + [(f, -m) for f, m in reversed(flavor1)]
    sign = _sign(sum(m for _, m in ket))
    return sign, tuple(word)


def fock_inner(bra: FockVector, ket: FockVector, method: str = "closedform") -> MultiSeries:
    """Pairing of a bra with a ket."""
    if bra.side != BRA or ket.side != KET:
        raise UsageError("fock_inner takes a bra and a ket")
    if bra.ctx != ket.ctx:
        raise UsageError("vectors over different series contexts")
    ctx = ket.ctx
    terms: list[MultiSeries] = []
    if method == "closedform":
        for lab, c in bra.terms.items():
            d = ket.terms.get(lab)
            if d is not None:
                terms.append((c * d).scale(pow2(len(lab.first) + len(lab.second))))
    elif method == "clifford":
        for lb, c in bra.terms.items():
            sign, bw = bra_word(lb)
            for lk, d in ket.terms.items():
                val = vev(bw + ket_word(lk)) * sign
                if val:
                    terms.append((c * d).scale(val))
    else:
        raise UsageError(f"unknown method {method!r}")
    return sum_series(ctx, terms)


# Single-mode action on labeled kets


def _apply_mode_component(parts: tuple[int, ...], pad: bool, n: int) -> tuple[int, tuple[int, ...], bool] | None:
    """``phi_n`` on ``phi_{a1}...phi_{ak} [phi_0] |0>``: returns (coefficient, parts, pad) or None."""
    if n > 0:
        if n in parts:
            return None
        pos = sum(1 for a in parts if a > n)
        return _sign(pos), tuple(sorted(parts + (n,), reverse=True)), pad
    if n == 0:
        sign = _sign(len(parts))
        return sign, parts, not pad
    k = -n
    if k not in parts:
        return None
    pos = parts.index(k)
    # anticommute past pos factors, then contract with phi_k: {phi_-k, phi_k} = 2(-1)^k
    coeff = _sign(pos) * 2 * _sign(k)
    return coeff, tuple(a for a in parts if a != k), pad


def apply_fermion(flavor: int, mode: int, state: FockVector) -> FockVector:
    """Act with ``phi_mode`` (flavor 1) or ``bar-phi_mode`` (flavor 2) on a ket.

    The two flavors commute, so no sign is picked up passing the other flavor.
    """
    if state.side != KET:
        raise UsageError("mode actions are implemented on kets")
    acc: dict[FockLabel, list[MultiSeries]] = {}
    for lab, c in state.terms.items():
        part, pad = lab.component(flavor)
        hit = _apply_mode_component(part.parts, pad, mode)
        if hit is None:
            continue
        coeff, parts, new_pad = hit
        new = lab.replace(flavor, StrictPartition(parts), new_pad)
        acc.setdefault(new, []).append(c.scale(coeff))
    return FockVector(state.ctx, _accumulate(acc, state.ctx), KET)


# Vertex operators


def _budget(ctx: SeriesContext, var: str | None, coeff: MultiSeries, cap: int | None) -> int:
    if var is None:
        return 0
    limits = []
    if cap is not None:
        limits.append(cap)
    c = ctx.caps[ctx.index(var)]
    if c is not None:
        limits.append(c)
    if ctx.total is not None:
        limits.append(ctx.total - (coeff.min_degree() or 0))
    if not limits:
        raise UsageError(f"an upward expansion in {var!r} needs a cap")
    return max(min(limits), -1)


def _component_moves(
    part: StrictPartition, pad: bool, direction: str, budget: int, normalized: bool
) -> list[tuple[StrictPartition, bool, int, int]]:
    # (new partition, new pad, power of two, degree)
    parity = (len(part) + pad) % 2
    out = []
    if direction == "down":
        candidates = [(nu, part) for nu in interlaced_below(part)]
    else:
        if budget < 0:
            return []
        candidates = [(mu, mu) for mu in interlaced_above_by_weight(part, budget)]
    for new, upper in candidates:
        lower = part if direction == "up" else new
        twos = sharp_count(upper, lower)
        if normalized:
            twos += len(lower) - len(upper)
        deg = upper.weight - lower.weight
        new_pad = (parity - len(new)) % 2 == 1
        out.append((new, new_pad, twos, deg))
    return out


def _gamma(state: FockVector, z: str | None, v: str | None, direction: str, normalized: bool, cap: int | None) -> FockVector:
    ctx = state.ctx
    iz = ctx.index(z) if z is not None else None
    iv = ctx.index(v) if v is not None else None
    acc: dict[FockLabel, list[MultiSeries]] = {}
    for lab, c in state.terms.items():
        b1 = _budget(ctx, z, c, cap) if direction == "up" else 0
        b2 = _budget(ctx, v, c, cap) if direction == "up" else 0
        moves1 = _component_moves(lab.first, bool(lab.pad1), direction, b1, normalized) if z is not None else [(lab.first, bool(lab.pad1), 0, 0)]
        moves2 = _component_moves(lab.second, bool(lab.pad2), direction, b2, normalized) if v is not None else [(lab.second, bool(lab.pad2), 0, 0)]
        for p1, d1, t1, e1 in moves1:
            for p2, d2, t2, e2 in moves2:
                if cap is not None and direction == "up" and e1 + e2 > cap:
                    continue
                exps = [0] * ctx.nvars
                if iz is not None:
                    exps[iz] += e1
                if iv is not None:
                    exps[iv] += e2
                term = c.shift(tuple(exps), pow2(t1 + t2))
                if term:
                    acc.setdefault(FockLabel(p1, p2, d1, d2), []).append(term)
    return FockVector(ctx, _accumulate(acc, ctx), state.side)


def gamma_plus(state: FockVector, z: str | None, v: str | None, cap: int | None = None) -> FockVector:
    """Positive vertex operator: lowers kets (finite sum), raises bras (truncated at ``cap``)."""
    if state.side == KET:
        return _gamma(state, z, v, "down", False, None)
    return _gamma(state, z, v, "up", True, cap)


def gamma_minus(state: FockVector, z: str | None, v: str | None, cap: int | None = None) -> FockVector:
    """Negative vertex operator: raises kets (truncated at ``cap``), lowers bras (finite sum)."""
    if state.side == KET:
        return _gamma(state, z, v, "up", True, cap)
    return _gamma(state, z, v, "down", False, None)


def labels_up_to(weight: int, both_parities: bool = False) -> list[FockLabel]:
    """Labels of total weight at most ``weight``, even sector first."""
    parts = strict_partitions_in_box(weight, weight)
    out = []
    for p1 in parts:
        for p2 in parts:
            if p1.weight + p2.weight > weight:
                continue
            out.append(FockLabel(p1, p2))
            if both_parities:
                for d1 in (False, True):
                    for d2 in (False, True):
                        lab = FockLabel(p1, p2, d1, d2)
                        if not lab.is_even():
                            out.append(lab)
    return sorted(out, key=FockLabel.sort_key)


@dataclass
class CheckOutcome:
    passed: bool
    checked: int
    witness: str | None = None


def _first_mismatch(lhs: FockVector, rhs: FockVector) -> str | None:
    labels = sorted(set(lhs.terms) | set(rhs.terms), key=FockLabel.sort_key)
    for lab in labels:
        a, b = lhs.coefficient(lab), rhs.coefficient(lab)
        if a != b:
            return f"label {lab}: {a} != {b}"
    return None


def shift_operator_rhs(flavor: int, i: int, state: FockVector, var: str, order: int) -> FockVector:
    """``(phi_i + 2 sum_{n=1}^{order} var^n phi_{i-n})`` applied to ``state``."""
    ctx = state.ctx
    out = apply_fermion(flavor, i, state)
    idx = ctx.index(var)
    for n in range(1, order + 1):
        exps = [0] * ctx.nvars
        exps[idx] = n
        moved = apply_fermion(flavor, i - n, state)
        out = out + FockVector(ctx, {k: c.shift(tuple(exps), 2) for k, c in moved.terms.items()}, KET)
    return out


def check_mode_shift(i: int, flavor: int, order: int, states: Sequence[FockLabel] | None = None) -> CheckOutcome:
    """Compare ``Gamma_+ phi_i`` with ``(phi_i + 2 sum z^n phi_{i-n}) Gamma_+`` on test kets."""
    if i < 0:
        raise UsageError("mode index must be non-negative")
    ctx = SeriesContext(("z", "v"), None, order)
    var = "z" if flavor == 1 else "v"
    if states is None:
        states = default_mode_states(order)
    checked = 0
    for lab in states:
        s = FockVector.basis(ctx, lab)
        lhs = gamma_plus(apply_fermion(flavor, i, s), "z", "v")
        rhs = shift_operator_rhs(flavor, i, gamma_plus(s, "z", "v"), var, order)
        checked += 1
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return CheckOutcome(False, checked, f"mode {i}, flavor {flavor}, state {lab}: {bad}")
    return CheckOutcome(True, checked)


def default_mode_states(weight: int) -> list[FockLabel]:
    """Vacuum, single-mode kets of each flavor, and every label of weight at most four in both parities."""
    out = {VACUUM}
    empty = StrictPartition(())
    for j in range(weight + 1):
        one = StrictPartition((j,)) if j else empty
        out.add(FockLabel(one, empty, j == 0, False))
        out.add(FockLabel(empty, one, False, j == 0))
    out.update(labels_up_to(min(weight, 4), both_parities=True))
    return sorted(out, key=FockLabel.sort_key)


def commutation_factor(ctx: SeriesContext, x: str, y: str, z: str, v: str) -> MultiSeries:
    """``(1 + xz)(1 - xz)^-1 (1 + yv)(1 - yv)^-1`` as a truncated series."""
    xz = MultiSeries.monomial(ctx, {x: 1, z: 1})
    yv = MultiSeries.monomial(ctx, {y: 1, v: 1})
    return (1 + xz) * series_invert_unit(1 - xz) * (1 + yv) * series_invert_unit(1 - yv)


def check_gamma_commutation(order: int, states: Sequence[FockLabel]) -> CheckOutcome:
    """Compare ``Gamma_+(z,v) Gamma_-(x,y)`` with the scalar factor times ``Gamma_-(x,y) Gamma_+(z,v)``."""
    ctx = SeriesContext(("x", "y", "z", "v"), (order,) * 4, order)
    factor = commutation_factor(ctx, "x", "y", "z", "v")
    checked = 0
    for lab in states:
        s = FockVector.basis(ctx, lab)
        lhs = gamma_plus(gamma_minus(s, "x", "y"), "z", "v")
        rhs = gamma_minus(gamma_plus(s, "z", "v"), "x", "y").scale(factor)
        checked += 1
        bad = _first_mismatch(lhs, rhs)
        if bad:
            return CheckOutcome(False, checked, f"state {lab}: {bad}")
    return CheckOutcome(True, checked)


def iter_pairs(labels: Sequence[FockLabel]) -> Iterator[tuple[FockLabel, FockLabel]]:
    for a in labels:
        for b in labels:
            yield a, b
