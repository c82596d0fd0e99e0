import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.currents import PowersumSpec
from artifact.fock import conjugate, partitions_upto
from artifact.ring import Coef, PSeries
from artifact.schur import (
    dfs,
    dfs_dual,
    ek_shifted,
    giambelli,
    hk_shifted,
    jacobi_trudi,
    mn_expand,
    omega_apply,
    series_from_json,
    series_to_json,
)
from artifact.shifted import ParamEnv


@pytest.fixture(scope="module")
def env():
    return ParamEnv.symbolic(-3, 4)


def P(mono, D=4):
    return PSeries(D, {tuple(("p", k) for k in mono): Coef(1)})


def test_classical_values():
    env = ParamEnv.zero()
    spec = PowersumSpec.series(3)
    s2 = dfs(env, (2,), (), spec).value
    want = PSeries(3, {(("p", 1), ("p", 1)): Coef(Fraction(1, 2)), (("p", 2),): Coef(Fraction(1, 2))})
    assert s2 == want
    s11 = dfs(env, (1, 1), (), spec).value
    want = PSeries(3, {(("p", 1), ("p", 1)): Coef(Fraction(1, 2)), (("p", 2),): Coef(Fraction(-1, 2))})
    assert s11 == want


def test_empty_and_noncontained(env):
    spec = PowersumSpec.series(3)
    assert dfs(env, (), (), spec).value == PSeries.const(3)
    assert dfs(env, (1,), (2,), spec).value.is_zero()


def test_routes_agree_small(env):
    spec = PowersumSpec.series(4)
    for lam in partitions_upto(4):
        a = dfs(env, lam, (), spec)
        assert a == jacobi_trudi(env, lam, (), spec)
        assert a == jacobi_trudi(env, lam, (), spec, dual=True)
        assert a == giambelli(env, lam, spec)


def test_skew_routes_agree(env):
    spec = PowersumSpec.series(3)
    for lam, mu in [((3, 1), (1,)), ((2, 2), (1,)), ((3, 2, 1), (2, 1))]:
        assert dfs(env, lam, mu, spec) == jacobi_trudi(env, lam, mu, spec)


def test_specialized_matches_series(env):
    x, y = env.symbol("x"), env.symbol("y")
    env0 = env.with_beta_zero()
    exact = dfs(env0, (2, 1), (), PowersumSpec.specialized([(x, y)])).value
    series = dfs(env0, (2, 1), (), PowersumSpec.series(3)).value
    vals = {("p", k): x ** k - (-y) ** k for k in range(1, 4)}
    assert series.specialize(vals) == exact


def test_jacobi_trudi_rejects_small_n(env):
    with pytest.raises(ValueError):
        jacobi_trudi(env, (2, 2, 1), (), PowersumSpec.series(3), n=2)


def test_h_and_e(env):
    spec = PowersumSpec.series(3)
    assert hk_shifted(env, 0, 0, spec) == PSeries.const(3)
    assert hk_shifted(env, -1, 0, spec).is_zero()
    assert ek_shifted(env, 2, 0, spec) == dfs(env, (1, 1), (), spec).value


def test_pk_expansion_at_beta_zero():
    env = ParamEnv.symbolic(-3, 3, beta=False)
    got = dict(mn_expand(env, 2, (), "multiply"))
    assert got == {(1,): env.alpha(0) + env.alpha(1), (1, 1): Coef(-1), (2,): Coef(1)}


monos = st.lists(st.lists(st.integers(1, 3), max_size=3), max_size=4)


@given(monos, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_omega_is_an_involution(ms, cs):
    f = PSeries(6, {tuple(("p", k) for k in m): Coef(c) for m, c in zip(ms, cs)})
    assert omega_apply(omega_apply(f)) == f


def test_omega_classical_transposes():
    env = ParamEnv.zero()
    spec = PowersumSpec.series(4)
    for lam in partitions_upto(4):
        assert omega_apply(dfs(env, lam, (), spec).value) == dfs(env, conjugate(lam), (), spec).value


def test_dual_at_zero_parameters_is_classical():
    env = ParamEnv.zero()
    spec = PowersumSpec.series(3)
    assert dfs_dual(env, (2, 1), (), spec) == dfs(env, (2, 1), (), spec)


def test_json_round_trip(env):
    s = dfs(env, (2, 1), (1,), PowersumSpec.series(3)).value
    doc = series_to_json(s)
    text = json.dumps(doc, sort_keys=True)
    back = series_from_json(json.loads(text))
    assert back == s
    assert json.dumps(series_to_json(back), sort_keys=True) == text


def test_json_rejects_bad_document():
    with pytest.raises(ValueError):
        series_from_json({"terms": []})
