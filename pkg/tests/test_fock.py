import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iboson.algebra import MultiSeries, QSqrt2, SeriesContext
from iboson.errors import UsageError
from iboson.fock import (
    BRA,
    KET,
    VACUUM,
    FockLabel,
    FockVector,
    apply_fermion,
    bra_word,
    check_gamma_commutation,
    check_mode_shift,
    fock_inner,
    gamma_minus,
    gamma_plus,
    ket_word,
    labels_up_to,
    vev,
)
from iboson.partitions import StrictPartition

ZV = SeriesContext(("z", "v"), None, 6)
CONST = SeriesContext(("t",), None, 0)


def lab(text):
    return FockLabel.parse(text)


def ket(text, ctx=ZV):
    return FockVector.basis(ctx, lab(text))


def bra(text, ctx=ZV):
    return FockVector.basis(ctx, lab(text), BRA)


def mono(powers, c=1, ctx=ZV):
    return MultiSeries.monomial(ctx, powers, c)


# labels


def test_label_default_pads():
    assert str(FockLabel.even((1,), ())) == "1,0|"
    assert str(FockLabel.even((2, 1), (3,))) == "2,1|3,0"
    assert FockLabel.even((2, 1), (3,)).is_even()


def test_label_parse_roundtrip():
    for l in labels_up_to(4, both_parities=True):
        assert FockLabel.parse(str(l)) == l


def test_label_parity():
    odd = FockLabel(StrictPartition((1,)), StrictPartition(()), False, False)
    assert odd.parity(1) == 1 and not odd.is_even()


# vacuum expectations


def test_vev_examples():
    assert vev(()) == QSqrt2(1)
    # phi*_1 phi_1 = (-1) phi_-1 phi_1
    assert vev(((1, -1), (1, 1))) == QSqrt2(-2)
    sign, word = bra_word(FockLabel(StrictPartition((1,)), StrictPartition(()), False, False))
    assert sign * vev(word + ((1, 1),)) == QSqrt2(2)


def test_vev_two_flavors():
    label = FockLabel(StrictPartition((1,)), StrictPartition((2,)), False, False)
    sign, word = bra_word(label)
    assert sign * vev(word + ket_word(label)) == QSqrt2(4)


def test_vev_odd_and_annihilating():
    assert vev(((1, 0),)) == QSqrt2(0)
    assert vev(((1, 1), (1, -1))) == QSqrt2(0)
    assert vev(((1, 0), (1, 0))) == QSqrt2(1)


# pairing


def test_pairing_examples():
    assert fock_inner(bra("|"), ket("|")) == MultiSeries.one(ZV)
    assert fock_inner(bra("1,0|"), ket("1,0|")) == MultiSeries.constant(ZV, 2)
    assert fock_inner(bra("1,0|"), ket("2,0|")).is_zero()


def test_pairing_oracle_exhaustive():
    labels = labels_up_to(4, both_parities=True)
    assert len(labels) == 84
    for a in labels:
        for b in labels:
            lhs = fock_inner(bra(str(a), CONST), ket(str(b), CONST))
            rhs = fock_inner(bra(str(a), CONST), ket(str(b), CONST), "clifford")
            assert lhs == rhs, (a, b)


def test_pairing_sides():
    with pytest.raises(UsageError):
        fock_inner(ket("|"), ket("|"))


# single modes


labels4 = st.sampled_from(labels_up_to(4, both_parities=True))
modes = st.integers(-4, 4)


@settings(max_examples=150, deadline=None)
@given(labels4, modes, modes, st.sampled_from([1, 2]))
def test_anticommutator(label, m, n, flavor):
    s = FockVector.basis(CONST, label)
    lhs = apply_fermion(flavor, m, apply_fermion(flavor, n, s)) + apply_fermion(flavor, n, apply_fermion(flavor, m, s))
    expected = 2 * (-1) ** (m % 2) if m + n == 0 else 0
    assert lhs == s.scale(expected)


@settings(max_examples=80, deadline=None)
@given(labels4, modes, modes)
def test_flavors_commute(label, m, n):
    s = FockVector.basis(CONST, label)
    assert apply_fermion(1, m, apply_fermion(2, n, s)) == apply_fermion(2, n, apply_fermion(1, m, s))


@settings(max_examples=80, deadline=None)
@given(labels4, labels4, st.integers(1, 4), st.sampled_from([1, 2]))
def test_modes_are_adjoint_under_pairing(a, b, n, flavor):
    # <a| phi_n |b> against the Clifford oracle
    sign, bw = bra_word(a)
    expected = vev(bw + ((flavor, n),) + ket_word(b)) * sign
    got = fock_inner(FockVector.basis(CONST, a, BRA), apply_fermion(flavor, n, FockVector.basis(CONST, b)))
    assert got == MultiSeries.constant(CONST, expected)


# vertex operators


def test_gamma_plus_examples():
    assert gamma_plus(ket("|"), "z", "v") == ket("|")
    assert gamma_plus(ket("1,0|"), "z", "v") == ket("1,0|") + ket("|").scale(mono({"z": 1}, 2))
    out = gamma_plus(ket("2,0|1,0"), "z", "v")
    assert len(out.terms) == 6
    assert out.coefficient(lab("|")) == mono({"z": 2, "v": 1}, 4)


def test_gamma_minus_examples():
    ctx = SeriesContext(("z", "v"), None, 1)
    got = gamma_minus(ket("|", ctx), "z", "v")
    expected = ket("|", ctx) + ket("1,0|", ctx).scale(mono({"z": 1}, ctx=ctx)) + ket("|1,0", ctx).scale(mono({"v": 1}, ctx=ctx))
    assert got == expected
    assert gamma_minus(bra("1,0|"), "z", "v") == bra("1,0|") + bra("|").scale(mono({"z": 1}, 2))
    assert fock_inner(bra("1,0|"), gamma_minus(ket("|"), "z", "v")) == mono({"z": 1}, 2)


def test_vacuum_stability():
    assert gamma_plus(ket("|"), "z", "v") == ket("|")
    assert gamma_minus(bra("|"), "z", "v") == bra("|")


def test_gamma_minus_respects_cap():
    out = gamma_minus(ket("|"), "z", "v", cap=2)
    assert all(l.weight <= 2 for l in out.terms)


def test_gamma_minus_needs_a_cap():
    ctx = SeriesContext(("z", "v"), None, None)
    with pytest.raises(UsageError):
        gamma_minus(ket("|", ctx), "z", "v")


@pytest.mark.parametrize("a", labels_up_to(3, both_parities=True))
def test_bra_and_ket_actions_are_dual(a):
    # <a| (G |b>) = (<a| G) |b> for both vertex operators
    ctx = SeriesContext(("z", "v"), None, 5)
    for b in labels_up_to(3, both_parities=True):
        ka, kb = FockVector.basis(ctx, b), FockVector.basis(ctx, a, BRA)
        assert fock_inner(kb, gamma_plus(ka, "z", "v")) == fock_inner(gamma_plus(kb, "z", "v"), ka)
        assert fock_inner(kb, gamma_minus(ka, "z", "v")) == fock_inner(gamma_minus(kb, "z", "v"), ka)


@pytest.mark.parametrize("i", range(5))
@pytest.mark.parametrize("flavor", [1, 2])
def test_prop_mode_shift(i, flavor):
    res = check_mode_shift(i, flavor, 6)
    assert res.passed, res.witness
    assert res.checked > 50


def test_gamma_commutation_small():
    assert check_gamma_commutation(4, [VACUUM]).passed
    assert check_gamma_commutation(3, [FockLabel.even((1,), ())]).passed


def test_gamma_commutation_detects_a_wrong_factor():
    from iboson import fock

    original = fock.commutation_factor
    fock.commutation_factor = lambda ctx, x, y, z, v: original(ctx, x, y, z, v).scale(1) + MultiSeries.monomial(ctx, {x: 1, z: 1})
    try:
        res = check_gamma_commutation(3, [VACUUM])
    finally:
        fock.commutation_factor = original
    assert not res.passed and "state" in res.witness


def test_mode_action_on_bras_rejected():
    with pytest.raises(UsageError):
        apply_fermion(1, 1, bra("|"))
