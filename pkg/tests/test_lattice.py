import pytest

from artifact.fock import partitions_in_box, subpartitions
from artifact.lattice import (
    format_state,
    one_var_dfs,
    ribbon_decompose,
    rpp_sum,
    rtm_coeff,
    rtm_factors,
    rtm_multi,
    skew_pieri_sides,
    wick_det,
)
from artifact.ring import Coef
from artifact.shifted import ParamEnv


@pytest.fixture(scope="module")
def env():
    return ParamEnv.symbolic(-3, 6)


def test_one_row_example(env):
    x, y = env.symbol("x"), env.symbol("y")
    a, b = env.alpha, env.beta
    want = ((1 - a(5) * b(5)) / (1 - b(5) * x) * (x - a(4)) / (1 - b(4) * x) * (x - a(3)) / (1 - b(3) * x)
            * (x + y) / (1 - b(2) * x) * (1 - b(0) * x) / (1 + b(0) * y))
    assert rtm_coeff(env, (2,), (5,), 0, x, y) == want
    assert len(rtm_factors(env, (2,), (5,), 0, x, y)) == 5


def test_non_interlacing_vanishes(env):
    x, y = env.symbol("x"), env.symbol("y")
    # (3,3) / (1) is not a horizontal strip
    assert rtm_coeff(env, (1,), (3, 3), 0, x, y).is_zero()
    assert rtm_factors(env, (1,), (3, 3), 0, x, y) in (None, [])
    assert format_state(env, (1,), (3, 3), 0, x, y) == []


def test_state_listing(env):
    x, y = env.symbol("x"), env.symbol("y")
    rows = format_state(env, (2,), (5,), 0, x, y)
    prod = Coef(1)
    for r in rows:
        prod = prod * Coef(r["weight"])
    assert prod == rtm_coeff(env, (2,), (5,), 0, x, y)


def test_scan_equals_wick_both_models():
    env = ParamEnv.symbolic(-3, 4)
    x, y = env.symbol("x"), env.symbol("y")
    for lam in partitions_in_box(2, 2):
        for mu in subpartitions(lam):
            assert rtm_coeff(env, mu, lam, 0, x, y, 1) == wick_det(env, mu, lam, 0, x, y, 1)
            assert rtm_coeff(env, lam, mu, 1, x, y, -1) == wick_det(env, lam, mu, 1, x, y, -1)


def test_ribbons():
    d = ribbon_decompose((3, 2), (1,))
    assert sum(len(r.cells) for r in d.ribbons) == 4


def test_ribbon_formula_equals_scan():
    env = ParamEnv.symbolic(-3, 4)
    x, y = env.symbol("x"), env.symbol("y")
    for lam in partitions_in_box(2, 3):
        for mu in subpartitions(lam):
            assert one_var_dfs(env, lam, mu, x, y) == rtm_coeff(env, mu, lam, 0, x, y, 1)


def test_rpp_two_rows():
    env = ParamEnv.symbolic(-2, 3, extra=("x1", "y1", "x2", "y2"))
    pairs = [(env.symbol("x1"), env.symbol("y1")), (env.symbol("x2"), env.symbol("y2"))]
    for lam in [(1,), (2, 1), (2, 2)]:
        assert rpp_sum(env, lam, (), pairs) == rtm_multi(env, (), lam, 0, pairs, 1)
    assert rpp_sum(env, (1,), (1,), []) == Coef(1)


def test_pieri_cut_enlargement_changes_nothing():
    env = ParamEnv.symbolic(0, 1)
    x, y = env.symbol("x"), env.symbol("y")
    for kind in ("h", "e"):
        base = skew_pieri_sides(env, 1, (1,), (), kind, x, y, 2)
        wide = skew_pieri_sides(env, 1, (1,), (), kind, x, y, 2, extra=2)
        assert base[0] == base[1]
        assert wide[1] == base[1]
