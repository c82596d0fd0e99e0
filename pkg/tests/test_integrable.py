import pytest
from hypothesis import given, strategies as st

from artifact.integrable import (
    TauSeries,
    bilinear_residue_check,
    hirota,
    hirota_kp_check,
    tau_from_partition,
    to_powersums,
    to_times,
    toda_tau,
)
from artifact.ring import Coef, PSeries
from artifact.shifted import ParamEnv

monos = st.lists(st.lists(st.integers(1, 3), max_size=3), max_size=4)


def _series(ms, cs, fam="p", D=6):
    return PSeries(D, {tuple((fam, k) for k in m): Coef(c) for m, c in zip(ms, cs)})


@given(monos, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_time_conversion_round_trip(ms, cs):
    f = _series(ms, cs)
    assert to_powersums(to_times(f)) == f


def test_time_conversion_scales():
    f = PSeries(4, {(("p", 2),): Coef(1)})
    assert to_times(f) == PSeries(4, {(("t", 2),): Coef(2)})


@given(monos, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_odd_hirota_operators_kill_f_dot_f(ms, cs):
    f = _series(ms, cs, "t", 8)
    assert hirota(f, f, {1: 1}).is_zero()
    assert hirota(f, f, {3: 1}).is_zero()
    assert hirota(f, f, {1: 2, 2: 1}).is_zero()


def test_hirota_is_antisymmetric_in_odd_order():
    f = _series([[1], [1, 2]], [1, 3], "t", 6)
    g = _series([[2], [1, 1]], [2, -1], "t", 6)
    assert hirota(f, g, {1: 1}) == -hirota(g, f, {1: 1})
    assert hirota(f, g, {1: 2}) == hirota(g, f, {1: 2})


def test_hirota_rejects_small_truncation():
    f = PSeries.const(2)
    with pytest.raises(ValueError):
        hirota(f, f, {1: 4})


def test_kp_holds_for_small_shapes():
    env = ParamEnv.symbolic(-1, 2)
    for lam in [(), (1,), (2,), (1, 1), (2, 1)]:
        rep = hirota_kp_check(tau_from_partition(env, lam, 6))
        assert rep.ok, rep.residual[:2]
        assert rep.max_degree == 2


def test_kp_negative_controls():
    # tau = t1^2 + 3 t2 is not a KP solution
    bad = PSeries(6, {(("t", 1), ("t", 1)): Coef(1), (("t", 2),): Coef(3)})
    assert not hirota_kp_check(TauSeries(bad)).ok
    # a genuine solution read in the wrong variables fails too
    env = ParamEnv.symbolic(-1, 2)
    s = tau_from_partition(env, (2,), 6).series
    wrong = TauSeries(PSeries(6, {tuple(("t", k) for _, k in m): c for m, c in to_powersums(s).terms.items()}))
    assert not hirota_kp_check(wrong).ok


def test_kp_needs_enough_truncation():
    env = ParamEnv.zero()
    with pytest.raises(ValueError):
        hirota_kp_check(tau_from_partition(env, (1,), 3))


def test_bilinear_residue_small():
    env = ParamEnv.symbolic(-1, 1)
    rep = bilinear_residue_check(env, (1,), 2)
    assert rep.ok
    assert rep.to_dict()["claim"]


def test_toda_product_vanishes_off_charge():
    env = ParamEnv.symbolic(-1, 1)
    plus, minus, prod = toda_tau(env, (1,), (1,), 0, 1, 3)
    assert prod.is_zero()
    plus, minus, prod = toda_tau(env, (1,), (), 0, 0, 3)
    assert prod == plus.series
