"""Named, parameterized identity checks with machine-readable verdicts, and the
generating-function series they compare against."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .algebra import MultiSeries, SeriesContext, first_difference, pow2, series_invert_unit, sum_series
from .errors import BoundExceeded, UsageError
from .fock import (
    FockLabel,
    FockVector,
    check_gamma_commutation,
    check_mode_shift,
    fock_inner,
    gamma_minus,
    gamma_plus,
    labels_up_to,
)
from .lattice import (
    BRA,
    KET,
    LatticeVector,
    apply_B,
    apply_C,
    basis_configs,
    config_partition,
    is_admissible,
    lattice_to_fock,
    map_to_fock,
    monodromy,
    monodromy_keys,
    rtt_points,
    scalar_product,
    scalar_product_context,
    single_site_lmatrix,
    verify_rtt,
)
from .partitions import StrictPartition, interlaces, strict_partitions_in_box
from .plane import (
    PlanePartition,
    enumerate_boxed_strict,
    is_strict,
    path_exponent,
    plane_partitions_of,
    slice_pp,
    slice_weight_monomial,
)
from .schurq import q_one_row, schur_q_branching, schur_q_pfaffian

SCHEMA = "iboson-verify/1"
DEFAULT_SEED = 20240611

FIGURE_MATRIX = ((5, 4, 3, 2, 1), (4, 2, 2, 1), (3, 1, 1), (1,))


@dataclass(frozen=True)
class CheckSpec:
    name: str
    params: Mapping[str, Any] = field(default_factory=dict)
    tolerance: str = "exact"


@dataclass
class Verdict:
    name: str
    params: dict[str, Any]
    passed: bool
    lhs_digest: str
    rhs_digest: str
    witness: str | None
    millis: int

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "params": self.params,
            "pass": self.passed,
            "lhs": self.lhs_digest,
            "rhs": self.rhs_digest,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        out["millis"] = self.millis
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Verdict:
        return cls(
            data["name"],
            dict(data["params"]),
            bool(data["pass"]),
            data["lhs"],
            data["rhs"],
            data.get("witness"),
            int(data["millis"]),
        )


class Comparison:
    """Collects left/right renderings and the first mismatch of a check."""

    def __init__(self) -> None:
        self.lhs: list[str] = []
        self.rhs: list[str] = []
        self.witness: str | None = None

    def series(self, tag: str, lhs: MultiSeries, rhs: MultiSeries) -> bool:
        self.lhs.append(f"{tag}:{lhs}")
        self.rhs.append(f"{tag}:{rhs}")
        diff = first_difference(lhs, rhs)
        if diff is None:
            return True
        if self.witness is None:
            e, a, b = diff
            mono = lhs.monomial_text(e) or "1"
            self.witness = f"{tag}: coefficient of {mono} is {a} vs {b}"
        return False

    def value(self, tag: str, lhs: Any, rhs: Any) -> bool:
        self.lhs.append(f"{tag}:{lhs}")
        self.rhs.append(f"{tag}:{rhs}")
        if lhs == rhs:
            return True
        if self.witness is None:
            self.witness = f"{tag}: {lhs} vs {rhs}"
        return False

    def fail(self, message: str) -> None:
        self.lhs.append(message)
        self.rhs.append("")
        if self.witness is None:
            self.witness = message

    @staticmethod
    def digest(parts: Sequence[str]) -> str:
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Limits:
    """Safety bounds applied before running a check."""

    max_volume: int = 128
    max_order: int = 16
    max_lattice: int = 12


# Series


def _power_product(ctx: SeriesContext, var: str, order: int, signed: bool) -> MultiSeries:
    out = MultiSeries.one(ctx)
    for n in range(1, order + 1):
        t = MultiSeries.monomial(ctx, {var: n})
        factor = series_invert_unit(1 - t)
        if signed:
            factor = (1 + t) * factor
        for _ in range(n):
            out = out * factor
    return out


def buc_macmahon_series(order: int) -> MultiSeries:
    """Product of two MacMahon functions in ``p`` and ``q`` up to total degree ``order``."""
    if order < 0:
        raise UsageError("order must be non-negative")
    ctx = SeriesContext(("p", "q"), None, order)
    return _power_product(ctx, "p", order, False) * _power_product(ctx, "q", order, False)


def strict_buc_series(order: int) -> MultiSeries:
    """Product of ``((1 + t^n)/(1 - t^n))^n`` over ``t = p, q`` up to total degree ``order``."""
    if order < 0:
        raise UsageError("order must be non-negative")
    ctx = SeriesContext(("p", "q"), None, order)
    return _power_product(ctx, "p", order, True) * _power_product(ctx, "q", order, True)


def _pair_sum(ctx: SeriesContext, weights: Mapping[int, Any], order: int) -> MultiSeries:
    terms = {}
    for a, ca in weights.items():
        for b, cb in weights.items():
            if a + b <= order:
                terms[(a, b)] = ca * cb
    return MultiSeries(ctx, terms)


def plane_partition_pairs_series(order: int) -> MultiSeries:
    """Pairs of plane partitions counted by weight, by direct enumeration."""
    ctx = SeriesContext(("p", "q"), None, order)
    terms: dict[tuple[int, int], int] = {}
    by_weight = {w: plane_partitions_of(w) for w in range(order + 1)}
    for a in range(order + 1):
        for b in range(order + 1 - a):
            terms[(a, b)] = sum(1 for _ in by_weight[a]) * sum(1 for _ in by_weight[b])
    return MultiSeries(ctx, terms)


def strict_weighted_counts(order: int, method: str = "regions") -> dict[int, int]:
    """Sum of ``2**p`` over strict plane partitions of each weight up to ``order``."""
    out = {}
    for w in range(order + 1):
        out[w] = sum(2 ** path_exponent(pi, method) for pi in plane_partitions_of(w) if is_strict(pi))
    return out


def specialized_weight_counts(order: int) -> dict[int, int]:
    """Same sums, but with the weight read off the slice-difference monomial under ``x_i = z_i = t^(i - 1/2)``."""
    out: dict[int, int] = {w: 0 for w in range(order + 1)}
    for w in range(order + 1):
        for pi in plane_partitions_of(w):
            if not is_strict(pi):
                continue
            xs, zs = slice_weight_monomial(pi, pi.num_rows, pi.num_cols)
            doubled = sum((2 * i - 1) * e for i, e in enumerate(xs, start=1))
            doubled += sum((2 * i - 1) * e for i, e in enumerate(zs, start=1))
            if doubled % 2 == 0 and doubled // 2 <= order:
                out[doubled // 2] += 2 ** path_exponent(pi, "formula")
    return out


def cauchy_product(ctx: SeriesContext, left: Sequence[str], right: Sequence[str]) -> MultiSeries:
    """``prod_{a, b} (1 + a b) / (1 - a b)`` over ``a`` in ``left`` and ``b`` in ``right``."""
    out = MultiSeries.one(ctx)
    for a in left:
        for b in right:
            t = MultiSeries.monomial(ctx, {a: 1, b: 1})
            out = out * (1 + t) * series_invert_unit(1 - t)
    return out


# Checks


def _ints(params: Mapping[str, Any], key: str, n: int) -> list[int]:
    v = params[key]
    if isinstance(v, str):
        v = [int(t) for t in v.split(",")]
    v = [int(t) for t in v]
    if len(v) != n or any(t < 0 for t in v):
        raise UsageError(f"{key} needs {n} non-negative integers")
    return v


def check_figure(params: Mapping[str, Any], cmp: Comparison) -> None:
    pi = PlanePartition(FIGURE_MATRIX)
    s = slice_pp(pi)
    cmp.value("center", s.center, (5, 2, 1))
    cmp.value("weight", pi.weight, 30)
    cmp.value("formula", path_exponent(pi, "formula"), 11)
    cmp.value("regions", path_exponent(pi, "regions"), 11)


def check_path_exponent_box(params: Mapping[str, Any], cmp: Comparison) -> None:
    n, l, m = _ints(params, "box", 3)
    boxed = enumerate_boxed_strict(n, l, m)
    for pi in boxed:
        if not cmp.value(f"pi={pi.compact()}", path_exponent(pi, "formula"), path_exponent(pi, "regions")):
            return
    cmp.value("count", len(boxed), len(boxed))


def check_schurq(params: Mapping[str, Any], cmp: Comparison) -> None:
    length, largest = _ints(params, "box", 2)
    nvars = int(params.get("vars", 3))
    names = tuple(f"x{i}" for i in range(1, nvars + 1))
    order = int(params.get("order", length * largest))
    ctx = SeriesContext(names, None, order)
    for n in range(nvars + 1):
        sub = names[:n]
        for mu in strict_partitions_in_box(length, largest):
            cmp.series(f"Q[{mu}]({n})", schur_q_pfaffian(mu, ctx, sub), schur_q_branching(mu, ctx, sub))
    cmp.series("Q[1]=q1", schur_q_pfaffian((1,), ctx), q_one_row(1, ctx))
    if nvars:
        cmp.series("Q[2,1](x1)", schur_q_pfaffian((2, 1), ctx, names[:1]), MultiSeries.zero(ctx))


def _sp_routes(sizes: tuple[int, int], dims: tuple[int, int], order: int, mutate: bool, cmp: Comparison) -> None:
    ctx, names = scalar_product_context(dims[0], dims[1], order)
    tag = f"N={dims[0]},{dims[1]} M={sizes[0]},{sizes[1]}"
    lattice = scalar_product(sizes, ctx, names, "lattice")
    pp = scalar_product(sizes, ctx, names, "planepartition", mutate=mutate)
    sq = scalar_product(sizes, ctx, names, "schurq")
    cmp.series(f"{tag} lattice/planepartition", lattice, pp)
    cmp.series(f"{tag} lattice/schurq", lattice, sq)


def check_scalar_product(params: Mapping[str, Any], cmp: Comparison) -> None:
    order = int(params.get("order", 8))
    mutate = bool(params.get("mutate", False))
    if "dims" in params:
        n1, n2, m1, m2 = _ints(params, "dims", 4)
        _sp_routes((m1, m2), (n1, n2), order, mutate, cmp)
        return
    max_n, max_m = _ints(params, "sweep", 2) if "sweep" in params else (2, 3)
    for n1 in range(max_n + 1):
        for n2 in range(max_n + 1):
            for m1 in range(max_m + 1):
                for m2 in range(max_m + 1):
                    _sp_routes((m1, m2), (n1, n2), order, mutate, cmp)


def _rtt_case(tag: str, res: Any, cmp: Comparison) -> None:
    detail = "ok" if res.passed else f"{res.failures} failing, components {' '.join(res.components)}"
    cmp.value(tag, detail, "ok")
    if not res.passed and cmp.witness and cmp.witness.startswith(tag + ":"):
        cmp.witness = f"{tag}: {res.witness}"


def check_rtt(params: Mapping[str, Any], cmp: Comparison) -> None:
    seed = int(params.get("seed", DEFAULT_SEED))
    count = int(params.get("points", 20))
    max_m = int(params.get("max_size", 3))
    r_name = str(params.get("r_matrix", "printed"))
    min_n0 = int(params.get("min_n0", 0))
    pts = rtt_points(count, seed)
    for species in (1, 2):
        for site in range(3):
            t, keys = single_site_lmatrix(species, site)
            keys = [k for k in keys if k[species - 1][0] >= min_n0]
            _rtt_case(f"L species {species} site {site}", verify_rtt(t, keys, pts, r_name), cmp)
        for m in range(max_m + 1):
            cfgs = [c for c in basis_configs(m, 3) if c[0] >= min_n0]
            keys = [(c, (0,)) for c in cfgs] if species == 1 else [((0,), c) for c in cfgs]
            _rtt_case(f"T species {species} size {m}", verify_rtt(monodromy(species, m), keys, pts, r_name), cmp)


def check_bc_commute(params: Mapping[str, Any], cmp: Comparison) -> None:
    max_m = int(params.get("max_size", 4))
    ctx = SeriesContext(("x", "y"), None, None)
    for method in ("combinatorial", "matrix"):
        for m in range(max_m + 1):
            for species in (1, 2):
                for cfg in basis_configs(m, 2):
                    key = (cfg, (0,)) if species == 1 else ((0,), cfg)
                    sizes = (len(key[0]) - 1, len(key[1]) - 1)
                    ket = LatticeVector(sizes, ctx, {key: 1}, KET)
                    xy = apply_B(species, "x", apply_B(species, "y", ket, method), method)
                    yx = apply_B(species, "y", apply_B(species, "x", ket, method), method)
                    if xy != yx:
                        cmp.fail(f"[B,B] != 0 ({method}) on {key}")
                        return
                    bra = LatticeVector(sizes, ctx, {key: 1}, BRA)
                    xy = apply_C(species, "x", apply_C(species, "y", bra, method), method)
                    yx = apply_C(species, "y", apply_C(species, "x", bra, method), method)
                    if xy != yx:
                        cmp.fail(f"[C,C] != 0 ({method}) on {key}")
                        return
    # the two constructions of B and C coincide
    for m in range(max_m + 1):
        for cfg in basis_configs(m, 2):
            ket = LatticeVector((m, 0), ctx, {(cfg, (0,)): 1}, KET)
            bra = LatticeVector((m, 0), ctx, {(cfg, (0,)): 1}, BRA)
            if apply_B(1, "x", ket) != apply_B(1, "x", ket, "matrix"):
                cmp.fail(f"B routes differ on {cfg}")
                return
            if apply_C(1, "x", bra) != apply_C(1, "x", bra, "matrix"):
                cmp.fail(f"C routes differ on {cfg}")
                return
    cmp.value("commute", True, True)


def check_admissible_interlacing(params: Mapping[str, Any], cmp: Comparison) -> None:
    max_m = int(params.get("max_size", 4))
    for m in range(max_m + 1):
        for n in basis_configs(m, 1):
            for mm in basis_configs(m, 2):
                if is_admissible(mm, n) and not interlaces(config_partition(mm), config_partition(n)):
                    cmp.fail(f"{mm} admissible to {n} without interlacing")
                    return
    cmp.value("interlacing", True, True)


def check_fock_pairing(params: Mapping[str, Any], cmp: Comparison) -> None:
    weight = int(params.get("weight", 4))
    ctx = SeriesContext(("t",), None, 0)
    labels = labels_up_to(weight, both_parities=True)
    for a in labels:
        bra = FockVector.basis(ctx, a, BRA)
        for b in labels:
            ket = FockVector.basis(ctx, b)
            cmp.series(f"<{a}|{b}>", fock_inner(bra, ket), fock_inner(bra, ket, "clifford"))


def check_gamma(params: Mapping[str, Any], cmp: Comparison) -> None:
    order = int(params.get("order", 6))
    weight = int(params.get("weight", order))
    res = check_gamma_commutation(order, labels_up_to(weight))
    cmp.value(f"{res.checked} states", res.passed, True)
    if res.witness:
        cmp.witness = res.witness


def check_mode_shifts(params: Mapping[str, Any], cmp: Comparison) -> None:
    max_i = int(params.get("max_mode", 4))
    order = int(params.get("order", 6))
    for flavor in (1, 2):
        for i in range(max_i + 1):
            res = check_mode_shift(i, flavor, order)
            cmp.value(f"mode {i} flavor {flavor}", res.passed, True)
            if res.witness and cmp.witness and "state" not in cmp.witness:
                cmp.witness += f" ({res.witness})"


def _filtered(state: FockVector, size: int) -> FockVector:
    keep = {
        lab: c
        for lab, c in state.terms.items()
        if lab.first.part(1) <= size and lab.second.part(1) <= size
    }
    return FockVector(state.ctx, keep, state.side)


def lattice_vs_gamma_compare(size: int, order: int, max_weight: int, cmp: Comparison) -> None:
    ctx = SeriesContext(("z", "v"), None, order)
    parts = [p for p in strict_partitions_in_box(size, size) if p.weight <= max_weight]
    for p1 in parts:
        for p2 in parts:
            cfg1 = (0,) + tuple(1 if i in p1.parts else 0 for i in range(1, size + 1))
            cfg2 = (0,) + tuple(1 if i in p2.parts else 0 for i in range(1, size + 1))
            key = (cfg1, cfg2)
            norm = pow2(-len(p1) - len(p2))
            label = FockLabel(p1, p2)
            ket = LatticeVector((size, size), ctx, {key: 1}, KET)
            lhs = lattice_to_fock(apply_B(1, "z", apply_B(2, "v", ket)))
            rhs = _filtered(gamma_minus(FockVector.basis(ctx, label), "z", "v"), size).scale(norm)
            _compare_states(f"ket {label}", lhs, rhs, cmp)
            bra = LatticeVector((size, size), ctx, {key: 1}, BRA)
            lhs = lattice_to_fock(apply_C(1, "z", apply_C(2, "v", bra)))
            rhs = _filtered(gamma_plus(FockVector.basis(ctx, label, BRA), "z", "v"), size).scale(norm)
            _compare_states(f"bra {label}", lhs, rhs, cmp)


def _compare_states(tag: str, lhs: FockVector, rhs: FockVector, cmp: Comparison) -> None:
    labels = sorted(set(lhs.terms) | set(rhs.terms), key=FockLabel.sort_key)
    for lab in labels:
        if not cmp.series(f"{tag} -> {lab}", lhs.coefficient(lab), rhs.coefficient(lab)):
            return


def check_lattice_vs_gamma(params: Mapping[str, Any], cmp: Comparison) -> None:
    size = int(params.get("size", 8))
    order = int(params.get("order", 8))
    lattice_vs_gamma_compare(size, order, int(params.get("max_weight", 3)), cmp)


def check_infinite_lattice(params: Mapping[str, Any], cmp: Comparison) -> None:
    n1, n2 = _ints(params, "n", 2) if "n" in params else (1, 1)
    order = int(params.get("order", 6))
    size = int(params.get("size", order))
    ctx, names = scalar_product_context(n1, n2, order)
    lattice = scalar_product((size, size), ctx, names, "lattice")
    product = cauchy_product(ctx, names["x"], names["z"]) * cauchy_product(ctx, names["y"], names["v"])
    cmp.series(f"M={size} vs product", lattice, product)
    for d in range(int(params.get("stabilize", 0)) + 1):
        c2, nm = scalar_product_context(n1, n2, d)
        a = scalar_product((d, d), c2, nm, "lattice")
        b = scalar_product((d + 1, d + 1), c2, nm, "lattice")
        cmp.series(f"stabilization D={d}", a, b)
    lattice_vs_gamma_compare(size, order, int(params.get("max_weight", 2)), cmp)


def check_strict_buc(params: Mapping[str, Any], cmp: Comparison) -> None:
    order = int(params.get("order", 8))
    ctx = SeriesContext(("p", "q"), None, order)
    product = strict_buc_series(order)
    counts = strict_weighted_counts(order)
    if params.get("mutate"):
        counts = dict(counts)
        counts[min(2, order)] += 1
    cmp.series("product/enumeration", product, _pair_sum(ctx, counts, order))
    cmp.series("product/specialized", product, _pair_sum(ctx, specialized_weight_counts(order), order))


def check_buc_macmahon(params: Mapping[str, Any], cmp: Comparison) -> None:
    order = int(params.get("order", 8))
    cmp.series("product/enumeration", buc_macmahon_series(order), plane_partition_pairs_series(order))


CheckFn = Callable[[Mapping[str, Any], Comparison], None]

REGISTRY: dict[str, tuple[CheckFn, dict[str, Any]]] = {
    "figure-example": (check_figure, {}),
    "lemma-2-3": (check_path_exponent_box, {"box": [3, 3, 4]}),
    "schurq": (check_schurq, {"box": [3, 5], "vars": 3}),
    "scalar-product": (check_scalar_product, {"order": 8}),
    "rtt": (check_rtt, {"points": 20, "max_size": 3, "r_matrix": "printed"}),
    "bc-commute": (check_bc_commute, {"max_size": 4}),
    "admissible-interlacing": (check_admissible_interlacing, {"max_size": 4}),
    "fock-pairing": (check_fock_pairing, {"weight": 4}),
    "gamma-commutation": (check_gamma, {"order": 6}),
    "mode-shift": (check_mode_shifts, {"max_mode": 4, "order": 6}),
    "lattice-vs-gamma": (check_lattice_vs_gamma, {"size": 8, "order": 8}),
    "infinite-lattice": (check_infinite_lattice, {"n": [1, 1], "size": 10, "order": 10, "stabilize": 8}),
    "strict-buc": (check_strict_buc, {"order": 8}),
    "buc-macmahon": (check_buc_macmahon, {"order": 8}),
}


def check_names() -> list[str]:
    return list(REGISTRY)


def _validate(spec: CheckSpec, limits: Limits) -> dict[str, Any]:
    if spec.name not in REGISTRY:
        raise UsageError(f"unknown check {spec.name!r}; known: {', '.join(REGISTRY)}")
    _, defaults = REGISTRY[spec.name]
    params = dict(defaults)
    params.update(spec.params)
    if "box" in params:
        dims = [int(t) for t in (params["box"].split(",") if isinstance(params["box"], str) else params["box"])]
        volume = 1
        for d in dims:
            volume *= max(d, 1)
        if volume > limits.max_volume:
            raise BoundExceeded(f"box volume {volume} exceeds the bound {limits.max_volume}")
        params["box"] = dims
    for key in ("dims", "n", "sweep"):
        if key in params and isinstance(params[key], str):
            params[key] = [int(t) for t in params[key].split(",")]
    if int(params.get("order", 0)) > limits.max_order:
        raise BoundExceeded(f"order {params['order']} exceeds the bound {limits.max_order}")
    sizes = list(params.get("dims", [])[2:]) + [params.get("size", 0), params.get("max_size", 0)]
    if max(int(s) for s in sizes) > limits.max_lattice:
        raise BoundExceeded(f"lattice size exceeds the bound {limits.max_lattice}")
    return params


def run_check(spec: CheckSpec, limits: Limits | None = None) -> Verdict:
    params = _validate(spec, limits or Limits())
    fn, _ = REGISTRY[spec.name]
    cmp = Comparison()
    start = time.perf_counter()
    fn(params, cmp)
    millis = int((time.perf_counter() - start) * 1000)
    return Verdict(
        spec.name,
        params,
        cmp.witness is None,
        Comparison.digest(cmp.lhs),
        Comparison.digest(cmp.rhs),
        cmp.witness,
        millis,
    )


def default_suite(order: int = 6, seed: int = DEFAULT_SEED) -> list[CheckSpec]:
    """Every registered identity at sizes that finish in a few minutes."""
    return [
        CheckSpec("figure-example"),
        CheckSpec("lemma-2-3", {"box": [3, 3, 4]}),
        CheckSpec("schurq", {"box": [3, 5], "vars": 3}),
        CheckSpec("scalar-product", {"order": order, "sweep": [2, 3]}),
        CheckSpec("rtt", {"seed": seed, "points": 20, "max_size": 3, "r_matrix": "printed"}),
        CheckSpec("bc-commute", {"max_size": 4}),
        CheckSpec("admissible-interlacing", {"max_size": 4}),
        CheckSpec("fock-pairing", {"weight": 4}),
        CheckSpec("gamma-commutation", {"order": order}),
        CheckSpec("mode-shift", {"max_mode": 4, "order": order}),
        CheckSpec("lattice-vs-gamma", {"size": 8, "order": order}),
        CheckSpec("infinite-lattice", {"n": [1, 1], "size": order + 2, "order": order, "stabilize": order}),
        CheckSpec("strict-buc", {"order": order}),
        CheckSpec("buc-macmahon", {"order": order}),
    ]


def run_suite(specs: Iterable[CheckSpec], threads: int = 1, limits: Limits | None = None) -> list[Verdict]:
    """Run checks, possibly in parallel; verdicts come back in input order."""
    specs = list(specs)
    for s in specs:
        _validate(s, limits or Limits())
    if threads <= 1 or len(specs) <= 1:
        return [run_check(s, limits) for s in specs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: run_check(s, limits), specs))


def report(verdicts: Sequence[Verdict], seed: int) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "seed": seed,
        "pass": all(v.passed for v in verdicts),
        "results": [v.to_json() for v in verdicts],
    }


def report_json(verdicts: Sequence[Verdict], seed: int) -> str:
    return json.dumps(report(verdicts, seed), indent=2, sort_keys=False, ensure_ascii=False)


def strip_times(report_text: str) -> str:
    """Report text with wall-clock fields removed, for reproducibility comparisons."""
    data = json.loads(report_text)
    for r in data.get("results", []):
        r.pop("millis", None)
    return json.dumps(data, indent=2, ensure_ascii=False)
