"""Acceptance criteria, one test each.

Every test prints a single ``PASS criterion k: ...`` or ``FAIL criterion k: ...``
line (visible even without ``-s``) and then asserts the same outcome.
"""

import json
import time

import pytest

from iboson.cli import main
from iboson.harness import CheckSpec, run_check, strict_buc_series, strip_times
from iboson.plane import PlanePartition, path_exponent, slice_pp

FIGURE = [[5, 4, 3, 2, 1], [4, 2, 2, 1], [3, 1, 1], [1]]


@pytest.fixture
def outcome(capsys):
    """Call with (k, summary, passed, seconds, limit) to print the verdict line and assert."""

    def emit(k, summary, passed, seconds=None, limit=None):
        within = limit is None or seconds < limit
        ok = passed and within
        timing = "" if seconds is None else f" [{seconds:.1f} s" + ("" if limit is None else f", limit {limit} s") + "]"
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {summary}{timing}")
        assert passed, summary
        assert within, f"took {seconds:.1f} s, limit {limit} s"

    return emit


def timed_checks(*specs):
    start = time.perf_counter()
    verdicts = [run_check(s) for s in specs]
    elapsed = time.perf_counter() - start
    failing = [f"{v.name}: {v.witness}" for v in verdicts if not v.passed]
    return not failing, "; ".join(failing), elapsed


def test_criterion_01_figure(outcome):
    start = time.perf_counter()
    pi = PlanePartition(FIGURE)
    got = (slice_pp(pi).center, pi.weight, path_exponent(pi, "formula"), path_exponent(pi, "regions"))
    ok, why, _ = timed_checks(CheckSpec("figure-example"))
    elapsed = time.perf_counter() - start
    passed = ok and got == ((5, 2, 1), 30, 11, 11)
    outcome(1, f"center, weight, p by formula and regions = {got}", passed, elapsed, 1)


def test_criterion_02_path_exponent_box(outcome):
    ok, why, t = timed_checks(CheckSpec("lemma-2-3", {"box": [3, 3, 4]}))
    outcome(2, "formula = regions on every strict plane partition in the 3x3x4 box" + (f" ({why})" if why else ""), ok, t, 30)


def test_criterion_03_schur_q_routes(outcome):
    ok, why, t = timed_checks(CheckSpec("schurq", {"box": [3, 5], "vars": 3}))
    outcome(3, "Pfaffian = branching for mu in [3,5], n <= 3; Q(1) = q1; Q(2,1)(x) = 0" + (f" ({why})" if why else ""), ok, t, 30)


def test_criterion_04_scalar_product_routes(outcome):
    ok, why, t = timed_checks(CheckSpec("scalar-product", {"sweep": [2, 3], "order": 8}))
    outcome(4, "lattice = plane-partition = Schur Q sums for N <= 2, M <= 3 at degree 8" + (f" ({why})" if why else ""), ok, t, 120)


def test_criterion_05_rtt_and_commuting_families(outcome):
    ok, why, t = timed_checks(
        CheckSpec("rtt", {"points": 20, "max_size": 3, "r_matrix": "printed"}),
        CheckSpec("bc-commute", {"max_size": 4}),
    )
    outcome(5, "RTT at 20 points for L and T with M <= 3; [B,B] = [C,C] = 0 for M <= 4" + (f" ({why})" if why else ""), ok, t, 60)


def test_criterion_06_fock_pairing(outcome):
    ok, why, t = timed_checks(CheckSpec("fock-pairing", {"weight": 4}))
    outcome(6, "closed-form pairing = vev rewriting for all labels of weight <= 4" + (f" ({why})" if why else ""), ok, t)


def test_criterion_07_vertex_operators(outcome):
    ok, why, t = timed_checks(
        CheckSpec("gamma-commutation", {"order": 6}),
        CheckSpec("mode-shift", {"max_mode": 4, "order": 6}),
        CheckSpec("lattice-vs-gamma", {"size": 8, "order": 8}),
    )
    outcome(7, "Gamma commutation at weight 6, mode shifts i <= 4, lattice vs Gamma- at M = 8" + (f" ({why})" if why else ""), ok, t, 120)


def test_criterion_08_product_formulas(outcome):
    start = time.perf_counter()
    s = strict_buc_series(4)
    head = [int(s.coefficient({"q": k}).a) for k in range(5)]
    ok, why, _ = timed_checks(CheckSpec("strict-buc", {"order": 8}), CheckSpec("buc-macmahon", {"order": 8}))
    elapsed = time.perf_counter() - start
    passed = ok and head == [1, 2, 6, 16, 38]
    outcome(8, f"strict series starts {head}; product = enumeration to weight 8; MacMahon pair product" + (f" ({why})" if why else ""), passed, elapsed, 60)


def test_criterion_09_infinite_lattice(outcome):
    ok, why, t = timed_checks(CheckSpec("infinite-lattice", {"n": [1, 1], "size": 10, "order": 10, "stabilize": 8}))
    outcome(9, "M = 10 matches the Cauchy product to degree 10; M = D vs D+1 agree for D <= 8" + (f" ({why})" if why else ""), ok, t)


def test_criterion_10_determinism(outcome, capsys):
    reports = []
    for threads in ("1", "8"):
        main(["verify", "all", "--json", "--threads", threads])
        reports.append(capsys.readouterr().out)
    same = strip_times(reports[0]) == strip_times(reports[1])
    count = len(json.loads(reports[0])["results"])
    outcome(10, f"verify all with 1 and 8 threads gives identical reports over {count} checks", same)
