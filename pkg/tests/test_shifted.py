import json

import pytest

from artifact.ring import Coef
from artifact.shifted import ParamEnv, bar_power, contour_integral, delta_m, semi_power


@pytest.fixture(scope="module")
def env():
    return ParamEnv.symbolic(-3, 4)


def test_views(env):
    s = env.shift(2)
    assert s.alpha(0) == env.alpha(2)
    r = env.iota()
    assert r.alpha(0) == env.alpha(1) and r.beta(-2) == env.beta(3)
    assert env.iota().iota().alpha(3) == env.alpha(3)
    assert env.swap().alpha(1) == env.beta(1)
    assert env.negate().beta(1) == -env.beta(1)
    assert env.shift(1).window == (-4, 3)


def test_outside_window_is_zero(env):
    assert env.alpha(10).is_zero() and env.beta(-10).is_zero()


def test_config_round_trip():
    doc = {"alpha": {"-1": "1/2", "2": "t"}, "beta": {"0": "3"}}
    env = ParamEnv.from_config(doc)
    assert env.window == (-1, 2)
    assert env.alpha(-1) == Coef(1) / 2
    again = ParamEnv.from_config(json.loads(json.dumps(env.to_config())))
    assert again.key() == env.key()


def test_bad_config():
    with pytest.raises(ValueError):
        ParamEnv.from_config({"gamma": {}})
    with pytest.raises(ValueError):
        ParamEnv.from_config({"alpha": {"x": "1"}})


def test_powers(env):
    z = env.symbol("z")
    assert semi_power(env.alpha, 2, z, 0) == (1 - z * env.alpha(1)) * (1 - z * env.alpha(2))
    assert bar_power(env.beta, 1, z, -1) == z - env.beta(0)
    assert semi_power(env.alpha, -1, z, 0) * semi_power(env.alpha, 1, z, -1) == Coef(1)


def test_contour_integral_ignores_non_poles(env):
    z = env.symbol("z")
    f = 1 / (z * (z - env.beta(1)))
    total = contour_integral(f, [Coef(0), env.beta(1), env.beta(2)], "z")
    assert total == Coef(0)


def test_delta_m(env):
    b = env.beta
    assert delta_m(env, 2, 0) == Coef(0)
    assert delta_m(env, 2, 2) == b(1) ** 2 + b(2) ** 2
    assert delta_m(env, 1, -2) == -(b(-1) + b(0))
    # additivity of the sum under shifting the cut
    assert delta_m(env, 3, 2) - delta_m(env, 3, -1) == b(0) ** 3 + b(1) ** 3 + b(2) ** 3
