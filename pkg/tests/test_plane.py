import itertools
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iboson.algebra import MultiSeries, QSqrt2, SeriesContext
from iboson.errors import BoundExceeded, DomainError, UsageError
from iboson.partitions import interlaces
from iboson.plane import (
    PlanePartition,
    b_weight,
    count_regions,
    enumerate_boxed_strict,
    is_strict,
    path_exponent,
    plane_partitions_of,
    reassemble,
    slice_pp,
    slice_weight_monomial,
)

FIGURE = PlanePartition(((5, 4, 3, 2, 1), (4, 2, 2, 1), (3, 1, 1), (1,)))


def brute_box(n, l, m):
    """Every weakly decreasing 0..m matrix of shape n x l, kept when strict."""
    out = set()
    for flat in itertools.product(range(m + 1), repeat=n * l):
        grid = [flat[r * l:(r + 1) * l] for r in range(n)]
        ok = all(
            (c + 1 >= l or grid[r][c] >= grid[r][c + 1]) and (r + 1 >= n or grid[r][c] >= grid[r + 1][c])
            for r in range(n) for c in range(l)
        )
        if not ok:
            continue
        rows = tuple(tuple(v for v in row if v) for row in grid)
        pi = PlanePartition(tuple(r for r in rows if r))
        if is_strict(pi):
            out.add(pi)
    return out


def regions_by_bfs(pi):
    seen = set()
    cells = [(r, c) for r, row in enumerate(pi.rows) for c in range(len(row))]
    count = 0
    for start in cells:
        if start in seen:
            continue
        count += 1
        queue = deque([start])
        seen.add(start)
        while queue:
            r, c = queue.popleft()
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = (r + dr, c + dc)
                if nb not in seen and pi.entry(nb[0] + 1, nb[1] + 1) == pi.entry(r + 1, c + 1) and nb[0] >= 0 and nb[1] >= 0:
                    seen.add(nb)
                    queue.append(nb)
    return count


def test_validation():
    with pytest.raises(UsageError):
        PlanePartition(((1, 2),))
    with pytest.raises(UsageError):
        PlanePartition(((1,), (2,)))
    with pytest.raises(UsageError):
        PlanePartition(((1, 0),))


def test_figure_slices():
    s = slice_pp(FIGURE)
    assert s.center == (5, 2, 1)
    assert s.right == ((4, 2), (3, 1), (2,), (1,))
    assert s.left == ((4, 1), (3,), (1,))
    assert FIGURE.weight == 30


def test_single_cell_slices():
    s = slice_pp(PlanePartition(((1,),)))
    assert s.center == (1,) and s.left == () and s.right == ()


def test_slice_chain_interlaces():
    from iboson.partitions import StrictPartition

    s = slice_pp(FIGURE)
    chain = [s.slice(i) for i in range(-len(s.left) - 1, len(s.right) + 2)]
    assert chain[0] == chain[-1] == ()
    center = chain.index(s.center)
    for k in range(center, len(chain) - 1):
        assert interlaces(StrictPartition(chain[k]), StrictPartition(chain[k + 1]))
    for k in range(center, 0, -1):
        assert interlaces(StrictPartition(chain[k]), StrictPartition(chain[k - 1]))


@pytest.mark.parametrize("rows,expected", [
    (FIGURE.rows, True),
    (((1, 1), (1, 1)), False),
    (((1,),), True),
    ((), True),
])
def test_is_strict(rows, expected):
    assert is_strict(PlanePartition(rows)) is expected


def test_figure_path_exponent():
    assert path_exponent(FIGURE, "regions") == 11
    assert path_exponent(FIGURE, "formula") == 11
    assert count_regions(FIGURE) == regions_by_bfs(FIGURE)


def test_small_path_exponents():
    one = PlanePartition(((1,),))
    assert path_exponent(one, "formula") == path_exponent(one, "regions") == 1
    assert path_exponent(PlanePartition(()), "formula") == 0
    assert path_exponent(PlanePartition(()), "regions") == 0


def test_path_exponent_needs_strict():
    with pytest.raises(DomainError):
        path_exponent(PlanePartition(((1, 1), (1, 1))))


def test_unknown_method():
    with pytest.raises(UsageError):
        path_exponent(FIGURE, "paths")


@pytest.mark.parametrize("box,count", [((1, 1, 1), 2), ((1, 1, 5), 6), ((2, 2, 1), 5), ((0, 0, 0), 1)])
def test_boxed_counts(box, count):
    assert len(enumerate_boxed_strict(*box)) == count


def test_boxed_two_by_two_ones():
    got = {pi.rows for pi in enumerate_boxed_strict(2, 2, 1)}
    assert got == {(), ((1,),), ((1, 1),), ((1,), (1,)), ((1, 1), (1,))}


@pytest.mark.parametrize("box", [(1, 2, 3), (2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (3, 3, 1), (1, 4, 2)])
def test_boxed_matches_brute_force(box):
    got = enumerate_boxed_strict(*box)
    assert len(got) == len(set(got))
    assert set(got) == brute_box(*box)


def test_boxed_order_and_limit():
    got = enumerate_boxed_strict(3, 3, 4)
    assert got == sorted(got, key=PlanePartition.sort_key)
    with pytest.raises(BoundExceeded):
        enumerate_boxed_strict(3, 3, 4, limit=10)


def test_lemma_box_exhaustive():
    for pi in enumerate_boxed_strict(3, 3, 4):
        assert path_exponent(pi, "formula") == path_exponent(pi, "regions") == count_regions(pi) == regions_by_bfs(pi)


def test_reassemble_roundtrip():
    for pi in enumerate_boxed_strict(3, 3, 3):
        assert reassemble(slice_pp(pi)) == pi
    assert reassemble(slice_pp(FIGURE)) == FIGURE


def test_plane_partitions_of_counts():
    # MacMahon numbers
    assert [len(plane_partitions_of(n)) for n in range(8)] == [1, 1, 3, 6, 13, 24, 48, 86]


def test_text_forms():
    assert FIGURE.compact() == "5,4,3,2,1;4,2,2,1;3,1,1;1"
    for text in (FIGURE.compact(), FIGURE.to_text(), str(FIGURE.to_json())):
        assert PlanePartition.from_text(text) == FIGURE
    assert PlanePartition.from_text("") == PlanePartition(())


def test_b_weight_empty_and_cell():
    ctx = SeriesContext(("x1", "z1"), None, None)
    assert b_weight(PlanePartition(()), ["x1"], ["z1"], ctx) == MultiSeries.one(ctx)
    assert b_weight(PlanePartition(((1,),)), ["x1"], ["z1"], ctx) == MultiSeries.monomial(ctx, {"x1": 1, "z1": 1}, 2)


def test_b_weight_figure_bookkeeping():
    xs = [f"x{i}" for i in range(1, 5)]
    zs = [f"z{i}" for i in range(1, 6)]
    ctx = SeriesContext(tuple(xs + zs), None, None)
    w = b_weight(FIGURE, xs, zs, ctx)
    (exps, coeff), = w.items()
    assert coeff == QSqrt2(2**11)
    ex, ez = exps[:4], exps[4:]
    # each side telescopes to the center weight
    assert sum(ex) == sum(ez) == 8
    # under x_i = z_i = t^(i - 1/2) the doubled degree is twice the weight
    doubled = sum((2 * i - 1) * e for i, e in enumerate(ex, 1)) + sum((2 * i - 1) * e for i, e in enumerate(ez, 1))
    assert doubled == 2 * FIGURE.weight
    assert (list(ex), list(ez)) == slice_weight_monomial(FIGURE, 4, 5)


def test_b_weight_errors():
    ctx = SeriesContext(("x1", "z1"), None, None)
    with pytest.raises(DomainError):
        b_weight(PlanePartition(((1, 1), (1, 1))), ["x1"], ["z1"], ctx)
    with pytest.raises(UsageError):
        b_weight(PlanePartition(((1,), (1,))), ["x1"], ["z1"], ctx)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 9).flatmap(lambda w: st.sampled_from(plane_partitions_of(w))))
def test_strict_pp_properties(pi):
    if not is_strict(pi):
        return
    assert path_exponent(pi, "formula") == path_exponent(pi, "regions") == regions_by_bfs(pi)
    assert reassemble(slice_pp(pi)) == pi
    xs, zs = slice_weight_monomial(pi, pi.num_rows, pi.num_cols)
    doubled = sum((2 * i - 1) * e for i, e in enumerate(xs, 1)) + sum((2 * i - 1) * e for i, e in enumerate(zs, 1))
    assert doubled == 2 * pi.weight
